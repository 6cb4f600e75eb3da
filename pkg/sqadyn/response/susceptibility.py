""" Dynamic susceptibility of the total polarization in spectral-line form.

    For a discrete spectrum the long-time average defining C(omega) is a sum of
    spikes. Each spike is reported as a line (frequency, weight) with

        frequency = E_m - E_n,    weight = p_n |<Psi_m| M |Psi_n>|^2

    where p_n is the population of the initial level (1 for the reference
    level at zero temperature, Boltzmann weights otherwise).
"""
import warnings

from collections import namedtuple
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from sqadyn.exceptions import (BroadeningWarning, OverlapWarning,
                               ValidationError)
from sqadyn.solvers.eigensolve import max_overlap_state
from sqadyn.space.operators import product_state

__all__ = ["SpectralLine", "Susceptibility", "Resonance", "MERGE_TOL",
           "MIN_WEIGHT", "OVERLAP_THRESHOLD", "populations", "merge_lines",
           "susceptibility_lines", "single_qubit_ground",
           "reference_state", "susceptibility_nonequilibrium",
           "dominant_resonance", "resonance_contrast", "lorentzian",
           "broaden", "photon_mixture", "poisson_distribution",
           "thermal_distribution"]

MERGE_TOL = 1e-9
MIN_WEIGHT = 1e-14
OVERLAP_THRESHOLD = 0.25

Resonance = namedtuple("Resonance", ["frequency", "amplitude", "line"])

@dataclass(frozen=True)
class SpectralLine:
    frequency: float
    weight: float
    from_level: int
    to_level: int

    def to_serializable(self):
        return [self.frequency, self.weight, self.from_level, self.to_level]

@dataclass(frozen=True, eq=False)
class Susceptibility:
    """ Lines sorted by frequency, with optional Lorentzian curve.

        Args:
            lines: (tuple of SpectralLine)
            reference_level: (int or None)
                Initial level at zero temperature; None for thermal states
                and photon mixtures.
            diagonal_weight: (float)
                Weight of the omega = 0 (m = n) term, excluded from `lines`.
            transition_weight: (float)
                Total weight of all m != n transitions, including mirror and
                zero-frequency lines not listed in `lines`.
            sum_rule: (float)
                <M^2> in the initial state(s); equals diagonal_weight +
                transition_weight.
            overlap: (float or None)
                Squared overlap of a maximal-overlap reference identification.
            broadening: (float or None)
                Lorentzian half-width of `curve`.
            curve: (tuple(grid, values) or None)
            scale: (float)
                Factor applied to every weight, e.g. by transmission_suppression.
            label: (str)
            warnings: (tuple of str)
    """
    lines: tuple
    reference_level: int = 0
    diagonal_weight: float = 0.0
    transition_weight: float = 0.0
    sum_rule: float = 0.0
    overlap: float = None
    broadening: float = None
    curve: tuple = None
    scale: float = 1.0
    label: str = 'C'
    warnings: tuple = field(default=())

    def __post_init__(self):
        lines = tuple(sorted(self.lines, key=lambda l: (l.frequency, l.to_level)))
        object.__setattr__(self, 'lines', lines)

    def __len__(self):
        return len(self.lines)

    @property
    def frequencies(self):
        return np.array([l.frequency for l in self.lines], dtype=float)

    @property
    def weights(self):
        return np.array([l.weight for l in self.lines], dtype=float)

    @property
    def total_weight(self):
        return float(self.weights.sum())

    def positive(self):
        lines = tuple(l for l in self.lines if l.frequency > MERGE_TOL)
        return replace(self, lines=lines)

    def to_frame(self):
        return pd.DataFrame({"frequency": self.frequencies,
                             "weight": self.weights,
                             "from_level": [l.from_level for l in self.lines],
                             "to_level": [l.to_level for l in self.lines]})

    def curve_frame(self):
        if self.curve is None:
            return None
        grid, values = self.curve
        return pd.DataFrame({"frequency": grid, "value": values})

    def to_serializable(self):
        doc = {"type": "Susceptibility",
               "label": self.label,
               "lines": [l.to_serializable() for l in self.lines],
               "reference_level": self.reference_level,
               "diagonal_weight": self.diagonal_weight,
               "transition_weight": self.transition_weight,
               "sum_rule": self.sum_rule,
               "overlap": self.overlap,
               "broadening": self.broadening,
               "scale": self.scale,
               "warnings": list(self.warnings)}
        if self.curve is not None:
            doc["curve"] = [list(map(float, self.curve[0])),
                            list(map(float, self.curve[1]))]
        return doc

    @classmethod
    def from_serializable(cls, obj):
        curve = obj.get("curve")
        if curve is not None:
            curve = (np.asarray(curve[0]), np.asarray(curve[1]))
        return cls(lines=tuple(SpectralLine(float(f), float(w), int(a), int(b))
                               for f, w, a, b in obj["lines"]),
                   reference_level=obj.get("reference_level"),
                   diagonal_weight=obj.get("diagonal_weight", 0.0),
                   transition_weight=obj.get("transition_weight", 0.0),
                   sum_rule=obj.get("sum_rule", 0.0),
                   overlap=obj.get("overlap"),
                   broadening=obj.get("broadening"),
                   curve=curve,
                   scale=obj.get("scale", 1.0),
                   label=obj.get("label", 'C'),
                   warnings=tuple(obj.get("warnings", ())))

""" ############################# Equilibrium ############################ """

def populations(spectrum, temperature=0.0, reference_level=0):
    """ Initial-level populations: the reference level at T = 0, Boltzmann
        weights (k_B = 1) otherwise.
    """
    E = spectrum.eigenvalues
    if not 0 <= reference_level < len(E):
        raise IndexError(f"reference level {reference_level} outside 0..{len(E)-1}")
    p = np.zeros(len(E))
    if temperature == 0.0:
        p[reference_level] = 1.0
    elif temperature > 0.0:
        boltzmann = np.exp(-(E - E[0])/temperature)
        p = boltzmann/boltzmann.sum()
    else:
        raise ValidationError("temperature must be non-negative")
    return p

def merge_lines(lines, tol=MERGE_TOL):
    """ Merge lines closer than `tol` in frequency; weights are summed and
        the merged line keeps the frequency and levels of its heaviest member.
    """
    merged = []
    cluster = []
    for line in sorted(lines, key=lambda l: l.frequency):
        if cluster and line.frequency - cluster[-1].frequency >= tol:
            merged.append(_merge_cluster(cluster))
            cluster = []
        cluster.append(line)
    if cluster:
        merged.append(_merge_cluster(cluster))
    return tuple(merged)

def _merge_cluster(cluster):
    if len(cluster) == 1:
        return cluster[0]
    heaviest = max(cluster, key=lambda l: l.weight)
    weight = float(sum(l.weight for l in cluster))
    return replace(heaviest, weight=weight)

def susceptibility_lines(spectrum, M, reference_level=0, temperature=0.0,
                         mirror=False, min_weight=MIN_WEIGHT):
    """ Spectral lines of the polarization autocorrelation.

        Args:
            spectrum: (Spectrum)
            M: (Operator)
                Usually the total polarization.
            reference_level: (int, default=0)
                Initial level at zero temperature.
            temperature: (float, default=0.0)
            mirror: (bool, default=False)
                Also report zero- and negative-frequency lines.
            min_weight: (float, default=1e-14)
                Lines at or below this weight are numerical zeros and dropped.
    """
    p = populations(spectrum, temperature, reference_level)
    E = spectrum.eigenvalues
    elements = spectrum.matrix_elements(M)
    W = np.abs(elements)**2*p[np.newaxis, :]

    lines = []
    for n in np.flatnonzero(p > 0.0):
        for m in np.flatnonzero(W[:, n] > min_weight):
            if m == n:
                continue
            frequency = float(E[m] - E[n])
            if not mirror and frequency <= MERGE_TOL:
                continue
            lines.append(SpectralLine(frequency, float(W[m, n]), int(n), int(m)))

    diagonal = float(np.sum(np.diagonal(W)))
    sum_rule = float(np.real(np.sum(p*np.diagonal(elements @ elements))))
    transition = float(W.sum() - diagonal)
    return Susceptibility(merge_lines(lines),
                          reference_level=reference_level if temperature == 0.0 else None,
                          diagonal_weight=diagonal,
                          transition_weight=transition,
                          sum_rule=sum_rule)

""" ########################### Non-equilibrium ########################## """

def single_qubit_ground(delta, epsilon):
    """ Lower eigenstate of Delta/2 sigma^x + epsilon/2 sigma^z, with its first
        non-zero amplitude made real and positive. For epsilon = 0 and
        Delta > 0 this is (|0> - |1>)/sqrt(2).
    """
    h = 0.5*np.array([[epsilon, delta], [delta, -epsilon]], dtype=float)
    _, vectors = np.linalg.eigh(h)
    psi = vectors[:, 0].astype(complex)
    pivot = psi[np.flatnonzero(np.abs(psi) > 1e-12)[0]]
    return psi*(abs(pivot)/pivot)

def reference_state(space, qubits, fock):
    """ |down down ... down> (x) |fock>, with |down> each qubit's own ground state """
    if not space.has_photons:
        raise ValidationError("the reference state needs a cavity mode")
    per_qubit = [single_qubit_ground(d, e) for d, e in zip(qubits.delta, qubits.epsilon)]
    return product_state(space, per_qubit, fock)

def susceptibility_nonequilibrium(spectrum, M, fock, qubits,
                                  threshold=OVERLAP_THRESHOLD, mirror=False):
    """ C_n(omega) from the eigenstate maximally overlapped with the bare
        state |down ... down> (x) |n>.

        Args:
            spectrum: (Spectrum)
                Spectrum of a cavity-coupled Hamiltonian.
            M: (Operator)
            fock: (int)
                Photon number n, below the number of retained Fock states.
            qubits: (QubitParams)
                Parameters defining each qubit's |down> state.
            threshold: (float, default=0.25)
                Squared overlaps below this are flagged as unreliable.

        Returns:
            Susceptibility with `reference_level` set to the identified
            eigenstate and `overlap` to its squared overlap.
    """
    space = spectrum.space
    if not 0 <= fock < space.photon_dim:
        raise IndexError(f"Fock state {fock} outside 0..{space.photon_dim-1}")
    match = max_overlap_state(spectrum, reference_state(space, qubits, fock))
    sus = susceptibility_lines(spectrum, M, match.index, 0.0, mirror)
    notes = ()
    if match.overlap < threshold:
        message = (f"Fock state {fock}: best eigenstate overlap "
                   f"{match.overlap:.3f} is below {threshold}")
        warnings.warn(message, OverlapWarning)
        notes = (message,)
    return replace(sus, overlap=match.overlap, label=f"C_{fock}", warnings=notes)

""" ############################# Resonances ############################# """

def dominant_resonance(sus):
    """ Positive-frequency line of maximal weight; ties within 1e-12 go to the
        lower frequency.

        Returns:
            Resonance(frequency, amplitude, line)
    """
    lines = sus.positive().lines
    if not lines:
        raise ValidationError("no positive-frequency lines")
    best = max(l.weight for l in lines)
    line = next(l for l in lines if l.weight >= best - 1e-12)
    return Resonance(line.frequency, line.weight, line)

def resonance_contrast(sus):
    """ A_d over the second-largest positive-frequency weight """
    weights = np.sort(sus.positive().weights)[::-1]
    if len(weights) == 0:
        raise ValidationError("no positive-frequency lines")
    if len(weights) == 1 or weights[1] == 0.0:
        return float('inf')
    return float(weights[0]/weights[1])

""" ############################# Broadening ############################# """

def lorentzian(x, x0, eta, weight):
    """ Area-normalized Lorentzian of half-width eta, scaled by weight """
    return weight*(eta/np.pi)/((x - x0)**2 + eta**2)

def broaden(sus, eta, grid):
    """ Sample sum_lines w (eta/pi) / ((omega - omega_line)^2 + eta^2) on a grid """
    if not eta > 0.0:
        raise ValidationError("broadening half-width must be positive")
    grid = np.asarray(grid, dtype=float)
    values = np.zeros_like(grid)
    for line in sus.lines:
        values += lorentzian(grid, line.frequency, eta, line.weight)

    notes = list(sus.warnings)
    if len(sus):
        low, high = sus.frequencies.min() - 5*eta, sus.frequencies.max() + 5*eta
        if grid.min() > low or grid.max() < high:
            message = (f"grid [{grid.min():g}, {grid.max():g}] does not cover "
                       f"all lines +- 5 eta = [{low:g}, {high:g}]")
            warnings.warn(message, BroadeningWarning)
            notes.append(message)
    return replace(sus, broadening=float(eta), curve=(grid, values),
                   warnings=tuple(notes))

""" ########################### Photon mixtures ########################## """

def photon_mixture(susceptibilities, probabilities):
    """ C_ph(omega) = sum_n P(n) C_n(omega).

        Args:
            susceptibilities: (dict)
                Fock number n to Susceptibility.
            probabilities: (dict)
                Fock number n to P(n), non-negative and summing to 1.
    """
    total = sum(probabilities.values())
    if any(P < 0.0 for P in probabilities.values()):
        raise ValidationError("probabilities must be non-negative")
    if abs(total - 1.0) > 1e-12:
        raise ValidationError(f"probabilities sum to {total!r}, not 1")
    missing = [n for n, P in probabilities.items() if P > 0.0 and n not in susceptibilities]
    if missing:
        raise ValidationError(f"no susceptibility for Fock states {missing}")

    lines = []
    fields = dict(diagonal_weight=0.0, transition_weight=0.0, sum_rule=0.0)
    notes = []
    for n, P in sorted(probabilities.items()):
        if P == 0.0:
            continue
        sus = susceptibilities[n]
        lines.extend(replace(l, weight=P*l.weight) for l in sus.lines)
        for name in fields:
            fields[name] += P*getattr(sus, name)
        notes.extend(sus.warnings)
    return Susceptibility(merge_lines(lines), reference_level=None,
                          label='C_ph', warnings=tuple(notes), **fields)

def _truncate(weights, fock_values):
    weights = np.asarray(weights, dtype=float)
    return {int(n): float(w) for n, w in zip(fock_values, weights/weights.sum())}

def poisson_distribution(mean, fock_values):
    """ Coherent-state photon statistics restricted to `fock_values` and
        renormalized.
    """
    from scipy.stats import poisson
    fock_values = list(fock_values)
    return _truncate(poisson.pmf(fock_values, mean), fock_values)

def thermal_distribution(mean, fock_values):
    """ Bose-Einstein photon statistics of mean occupation `mean`, restricted
        to `fock_values` and renormalized.
    """
    fock_values = list(fock_values)
    if mean == 0.0:
        return _truncate([1.0 if n == 0 else 0.0 for n in fock_values], fock_values)
    ratio = mean/(1.0 + mean)
    return _truncate([ratio**n for n in fock_values], fock_values)
