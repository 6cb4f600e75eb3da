""" Temporal correlation function of the total polarization """
import warnings

from collections import namedtuple

import numpy as np

from scipy.integrate import trapezoid

from sqadyn.exceptions import ConvergenceWarning, ValidationError
from sqadyn.response.susceptibility import MERGE_TOL, MIN_WEIGHT, populations

__all__ = ["TimeDomainCheck", "SumRule", "correlation_time",
           "time_domain_check", "sum_rule_check"]

TimeDomainCheck = namedtuple("TimeDomainCheck", ["residual", "numeric", "expected", "short"])

SumRule = namedtuple("SumRule", ["lhs", "rhs", "residual"])

CHUNK = 4096

def correlation_time(spectrum, M, temperature=0.0, times=(0.0,), reference_level=0):
    """ C(t) = sum_{m,n} p_n e^{-i(E_m - E_n)t} |M_mn|^2

        Args:
            spectrum: (Spectrum)
            M: (Operator)
            temperature: (float, default=0.0)
                At zero temperature only `reference_level` is populated.
            times: (sequence of float)
            reference_level: (int, default=0)

        Returns:
            C: (numpy.ndarray of complex)
    """
    times = np.asarray(times, dtype=float)
    if not np.all(np.isfinite(times)):
        raise ValidationError("times must be finite")
    p = populations(spectrum, temperature, reference_level)
    E = spectrum.eigenvalues
    W = np.abs(spectrum.matrix_elements(M))**2

    C = np.zeros(times.shape, dtype=complex)
    flat = times.ravel()
    out = C.ravel()
    for n in np.flatnonzero(p > 0.0):
        w = p[n]*W[:, n]
        gaps = E - E[n]
        for start in range(0, len(flat), CHUNK):
            t = flat[start:start+CHUNK]
            out[start:start+CHUNK] += np.exp(-1j*np.outer(t, gaps)) @ w
    return out.reshape(times.shape)

def _signed_frequencies(spectrum, M, temperature, reference_level):
    p = populations(spectrum, temperature, reference_level)
    E = spectrum.eigenvalues
    W = np.abs(spectrum.matrix_elements(M))**2*p[np.newaxis, :]
    m, n = np.nonzero(W > MIN_WEIGHT)
    return E[m] - E[n]

def time_domain_check(spectrum, M, line, t0, temperature=0.0,
                      reference_level=0, points_per_period=32):
    """ Cross-check of a reported line against the literal finite-time average

            (1/t0) integral_0^t0 dt e^{i omega t} Im C(t)

        evaluated with the trapezoidal rule at omega = line.frequency. For
        C(t) = sum w e^{-i omega t} the average tends to -(i/2) w at a line and
        to 0 elsewhere, with O(1/t0) corrections.

        Args:
            line: (SpectralLine)
                Frequency to probe and the weight expected there; a weight of
                0 checks an off-resonance or forbidden frequency.
            t0: (float)
                Averaging window; flagged as short below 10 periods of the
                closest other frequency in C(t).
            points_per_period: (int, default=32)
                Samples per period of the fastest oscillation in the integrand.

        Returns:
            TimeDomainCheck(residual, numeric, expected, short)
    """
    if not t0 > 0.0:
        raise ValidationError("averaging window must be positive")
    omega = float(line.frequency)
    present = _signed_frequencies(spectrum, M, temperature, reference_level)

    # Im C(t) carries e^{-i f t} and e^{+i f t} for every signed frequency f
    detunings = np.abs(np.concatenate([omega - present, omega + present]))
    detunings = detunings[detunings > MERGE_TOL]
    short = bool(len(detunings)) and t0 < 10.0*2*np.pi/detunings.min()

    fastest = np.abs(omega) + (np.abs(present).max() if len(present) else 0.0)
    samples = max(int(np.ceil(t0*fastest/(2*np.pi)*points_per_period)) + 1, 1001)
    t = np.linspace(0.0, t0, samples)
    integrand = np.exp(1j*omega*t)*correlation_time(spectrum, M, temperature, t,
                                                    reference_level).imag
    numeric = complex(trapezoid(integrand, t)/t0)
    expected = -0.5j*line.weight
    if short:
        warnings.warn(f"averaging window {t0:g} is shorter than 10 periods of the "
                      f"closest detuning {detunings.min():g}", ConvergenceWarning)
    return TimeDomainCheck(float(abs(numeric - expected)), numeric, expected, short)

def sum_rule_check(spectrum, M, reference_level=0):
    """ Completeness check sum_m |M_m,ref|^2 = <Psi_ref| M^2 |Psi_ref>.

        The right-hand side is evaluated directly in the computational basis.

        Returns:
            SumRule(lhs, rhs, residual)
    """
    if not 0 <= reference_level < len(spectrum):
        raise IndexError(f"reference level {reference_level} outside 0..{len(spectrum)-1}")
    v = spectrum.eigenvectors[:, reference_level]
    lhs = float(np.sum(np.abs(spectrum.eigenvectors.conj().T @ (M.matrix @ v))**2))
    Mv = M.matrix @ v
    rhs = float(np.real(np.vdot(Mv, Mv)))
    return SumRule(lhs, rhs, abs(lhs - rhs))
