""" Collective AC Stark effect of a cavity-coupled qubit array.

    For each coupling gamma the dominant resonance of the non-equilibrium
    susceptibility C_n(omega) is extracted for every photon number n, and the
    shifts omega_d(n) - omega_d(0) are reported. Two ways of following the
    resonance across n are offered:

        'matched'   the final state of the n = 0 dominant transition, |X>, is
                    carried to n photons as (a^dag)^n |X> and the transition
                    to the eigenstate of maximal overlap with it is reported,
                    provided it has positive frequency and conserves the
                    photon number. Otherwise the strongest line is kept.
        'dominant'  the strongest positive-frequency line of each C_n.
"""
import logging

from dataclasses import dataclass, field

import numpy as np

from sqadyn.exceptions import ConfigurationError, ValidationError
from sqadyn.models.hamiltonians import assemble, resolve
from sqadyn.response.susceptibility import (MERGE_TOL, OVERLAP_THRESHOLD, Resonance,
                                            SpectralLine, dominant_resonance,
                                            susceptibility_nonequilibrium)
from sqadyn.solvers.eigensolve import diagonalize, max_overlap_state
from sqadyn.space.operators import (StateVector, boson_ladder, number_operator,
                                    total_polarization)

__all__ = ["StarkTrack", "FOLLOW_MODES", "photon_number", "check_fock_values",
           "stark_point", "stark_track", "perturbative_stark_estimate"]

log = logging.getLogger(__name__)

FOLLOW_MODES = ('matched', 'dominant')

# largest change of <a^dag a> accepted along a matched transition
PHOTON_CONSERVATION_TOL = 0.5

@dataclass(frozen=True, eq=False)
class StarkTrack:
    """ Dominant resonances of one coupling value.

        Args:
            gamma: (float)
            per_fock: (dict)
                Photon number n to Resonance(frequency, amplitude, line).
            shifts: (dict)
                n to omega_d(n) - omega_d(0).
            overlaps: (dict)
                n to the squared overlap of the identified initial eigenstate.
            photon_numbers: (dict)
                n to (<a^dag a> initial, <a^dag a> final) of the reported line.
            follow: (str)
            warnings: (tuple of str)
    """
    gamma: float
    per_fock: dict
    shifts: dict
    overlaps: dict = field(default_factory=dict)
    photon_numbers: dict = field(default_factory=dict)
    follow: str = 'matched'
    warnings: tuple = ()

    def __post_init__(self):
        keys = sorted(self.per_fock)
        if keys != list(range(len(keys))):
            raise ValidationError(f"Fock values {keys} are not contiguous from 0")

    @property
    def fock_values(self):
        return sorted(self.per_fock)

    def frequency(self, n):
        return self.per_fock[n].frequency

    def amplitude(self, n):
        return self.per_fock[n].amplitude

    def to_rows(self):
        return [{"gamma": self.gamma, "n": n,
                 "frequency": self.per_fock[n].frequency,
                 "amplitude": self.per_fock[n].amplitude,
                 "shift": self.shifts[n],
                 "overlap": self.overlaps.get(n),
                 "photons_initial": self.photon_numbers.get(n, (None, None))[0],
                 "photons_final": self.photon_numbers.get(n, (None, None))[1]}
                for n in self.fock_values]

    def to_serializable(self):
        return {"type": "StarkTrack",
                "gamma": self.gamma,
                "follow": self.follow,
                "per_fock": {str(n): {"frequency": r.frequency,
                                      "amplitude": r.amplitude,
                                      "from_level": r.line.from_level,
                                      "to_level": r.line.to_level}
                             for n, r in self.per_fock.items()},
                "shifts": {str(n): s for n, s in self.shifts.items()},
                "overlaps": {str(n): o for n, o in self.overlaps.items()},
                "photon_numbers": {str(n): list(p) for n, p in self.photon_numbers.items()},
                "warnings": list(self.warnings)}

    @classmethod
    def from_serializable(cls, obj):
        per_fock = {}
        for n, r in obj["per_fock"].items():
            line = SpectralLine(r["frequency"], r["amplitude"], r["from_level"], r["to_level"])
            per_fock[int(n)] = Resonance(line.frequency, line.weight, line)
        return cls(gamma=obj["gamma"],
                   per_fock=per_fock,
                   shifts={int(n): s for n, s in obj["shifts"].items()},
                   overlaps={int(n): o for n, o in obj.get("overlaps", {}).items()},
                   photon_numbers={int(n): tuple(p) for n, p in obj.get("photon_numbers", {}).items()},
                   follow=obj.get("follow", 'matched'),
                   warnings=tuple(obj.get("warnings", ())))

def photon_number(spectrum, level):
    """ <Psi_level| a^dag a |Psi_level> """
    n = number_operator(spectrum.space)
    return float(np.real(n.expectation(spectrum.vector(level))))

def check_fock_values(fock_values, photon_dim):
    """ Fock values must run contiguously from 0 and stay below the top
        retained state, whose ladder action is truncated.
    """
    values = sorted(int(n) for n in fock_values)
    if values != list(range(len(values))) or not values:
        raise ConfigurationError(f"{values} are not contiguous from 0", "sweep.fock_values")
    if values[-1] >= photon_dim - 1:
        raise ConfigurationError(f"n={values[-1]} needs photon_dim > {values[-1] + 1}, "
                                 f"got {photon_dim}", "sweep.fock_values")
    return values

def _matched_line(spectrum, M, anchor, initial, n):
    """ Transition from `initial` to the eigenstate closest to (a^dag)^n |anchor> """
    space = spectrum.space
    adag = boson_ladder(space, 'create').matrix
    target = spectrum.eigenvectors[:, anchor]
    for _ in range(n):
        target = adag @ target
    norm = np.linalg.norm(target)
    if norm < 1e-12:
        return None
    final = max_overlap_state(spectrum, StateVector(space, target/norm)).index
    E = spectrum.eigenvalues
    element = spectrum.eigenvectors[:, final].conj() @ M.matrix @ spectrum.eigenvectors[:, initial]
    frequency = float(E[final] - E[initial])
    weight = float(abs(element)**2)
    return Resonance(frequency, weight, SpectralLine(frequency, weight, initial, final))

def stark_point(spec, fock_values=(0, 1, 2), follow='matched',
                threshold=OVERLAP_THRESHOLD, spectrum=None):
    """ StarkTrack of a single cavity-coupled model.

        Args:
            spec: (ModelSpec)
                Cavity-coupled model.
            fock_values: (iterable of int, default=(0,1,2))
            follow: {'matched','dominant'}, default='matched'
            threshold: (float, default=0.25)
                Overlap quality gate of the reference-state identification.
            spectrum: (Spectrum, default=None)
                Precomputed spectrum of `spec`.
    """
    if spec.kind != 'cavity':
        raise ConfigurationError("Stark tracking needs a cavity-coupled model",
                                 "model.interaction.kind")
    if follow not in FOLLOW_MODES:
        raise ConfigurationError(f"follow not in {FOLLOW_MODES}", "sweep.follow")
    values = check_fock_values(fock_values, spec.photon_dim)
    spec = resolve(spec)
    if spectrum is None:
        spectrum = diagonalize(assemble(spec).hamiltonian)
    M = total_polarization(spectrum.space)

    per_fock, overlaps, photons, notes = {}, {}, {}, []
    anchor = None
    for n in values:
        sus = susceptibility_nonequilibrium(spectrum, M, n, spec.qubits, threshold)
        notes.extend(sus.warnings)
        resonance = dominant_resonance(sus)
        if n == 0:
            anchor = resonance.line.to_level
        elif follow == 'matched':
            matched = _matched_line(spectrum, M, anchor, sus.reference_level, n)
            if matched is None:
                notes.append(f"Fock state {n}: no {n}-photon image of the "
                             f"n=0 final state, raw dominant line kept")
            elif matched.frequency <= MERGE_TOL:
                notes.append(f"Fock state {n}: matched line at omega={matched.frequency:.6g} "
                             f"is not a positive frequency, raw dominant line kept")
            else:
                change = abs(photon_number(spectrum, matched.line.to_level)
                             - photon_number(spectrum, matched.line.from_level))
                if change < PHOTON_CONSERVATION_TOL:
                    resonance = matched
                else:
                    notes.append(f"Fock state {n}: matched line changes <a^dag a> "
                                 f"by {change:.3g}, raw dominant line kept")
        per_fock[n] = resonance
        overlaps[n] = sus.overlap
        photons[n] = (photon_number(spectrum, resonance.line.from_level),
                      photon_number(spectrum, resonance.line.to_level))

    base = per_fock[0].frequency
    shifts = {n: (0.0 if n == 0 else per_fock[n].frequency - base) for n in values}
    log.debug("gamma=%g: omega_d(0)=%.6f, shifts %s", spec.coupling, base, shifts)
    return StarkTrack(spec.coupling, per_fock, shifts, overlaps, photons,
                      follow, tuple(notes))

def stark_track(spec, gammas, fock_values=(0, 1, 2), follow='matched',
                threshold=OVERLAP_THRESHOLD):
    """ StarkTrack for every coupling value.

        Args:
            spec: (ModelSpec)
                Cavity-coupled model; its own gamma is replaced by each value.
            gammas: (sequence of float)

        Returns:
            tracks: (list of StarkTrack)
                In the order of `gammas`.
    """
    return [stark_point(spec.with_coupling(gamma), fock_values, follow, threshold)
            for gamma in gammas]

def perturbative_stark_estimate(omega_d0, A_d, gamma, n, probe_omega):
    """ omega_d0 + gamma^2 (n + 1/2) A_d / (omega_d0 - probe_omega)

        The denominator frequency is an explicit input, e.g. the cavity
        frequency omega0.
    """
    detuning = omega_d0 - probe_omega
    if abs(detuning) < 1e-9:
        raise ValidationError(f"probe frequency {probe_omega} is on resonance "
                              f"with omega_d0={omega_d0}")
    return omega_d0 + gamma**2*(n + 0.5)*A_d/detuning
