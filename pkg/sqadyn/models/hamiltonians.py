""" Hamiltonians of disordered interacting qubit arrays.

    H_SQA = H_qb + H_int, with

        H_qb      = sum_i [Delta_i/2 sigma^x_i + epsilon_i/2 sigma^z_i]
        Ising     = g sum_<i,j> sigma^z_i sigma^z_j          (nearest neighbours)
        Exchange  = g sum_{i != j} [sigma^x_i sigma^x_j + sigma^y_i sigma^y_j]
        Cavity    = omega0 a^dag a + gamma sum_i sigma^z_i (a^dag + a)

    The exchange sum runs over ORDERED pairs: every unordered pair enters
    twice. Reading the sum over unordered pairs instead halves g.

    All energies are in units of the mean qubit frequency (hbar = 1).
"""
import logging
import warnings

from collections import namedtuple
from dataclasses import dataclass, replace

import numpy as np

from sqadyn.exceptions import ConfigurationError, ConventionWarning, RegimeWarning
from sqadyn.models import topologies
from sqadyn.space.operators import (HilbertSpace, Operator, boson_ladder,
                                    number_operator, pauli_site,
                                    total_polarization)
from sqadyn.utilities.decorators import coupling_graph, hermitian
from sqadyn.utilities.stats import spread

__all__ = ["QubitParams", "ShortRangeIsing", "GlobalExchange", "CavityCoupled",
           "ModelSpec", "FrequencyStats", "Model", "interaction_from_serializable",
           "qubit_frequencies", "build_qubit_term", "build_ising",
           "build_exchange", "build_cavity", "resolve", "assemble"]

log = logging.getLogger(__name__)

FrequencyStats = namedtuple("FrequencyStats", ["frequencies", "mean", "sigma"])

Model = namedtuple("Model", ["space", "hamiltonian"])

""" ############################# Parameters ############################# """

@dataclass(frozen=True)
class QubitParams:
    """ Individual qubit gaps Delta_i and biases epsilon_i.

        The derived frequencies omega_i = sqrt(Delta_i^2 + epsilon_i^2) must be
        strictly positive.
    """
    delta: tuple
    epsilon: tuple

    def __post_init__(self):
        delta = tuple(float(d) for d in np.ravel(self.delta))
        epsilon = tuple(float(e) for e in np.ravel(self.epsilon))
        if not delta:
            raise ConfigurationError("at least one qubit is required", "qubits.delta")
        if len(delta) != len(epsilon):
            raise ConfigurationError(f"length {len(epsilon)} does not match "
                                     f"{len(delta)} gaps", "qubits.epsilon")
        if not all(np.isfinite(delta + epsilon)):
            raise ConfigurationError("parameters must be finite", "qubits")
        object.__setattr__(self, 'delta', delta)
        object.__setattr__(self, 'epsilon', epsilon)
        if np.any(self.frequencies <= 0.0):
            raise ConfigurationError("qubit frequencies must be positive", "qubits")

    @property
    def n_qubits(self):
        return len(self.delta)

    @property
    def frequencies(self):
        return np.hypot(self.delta, self.epsilon)

    @classmethod
    def uniform(cls, n_qubits, delta=1.0, epsilon=0.0):
        return cls((delta,)*n_qubits, (epsilon,)*n_qubits)

    @classmethod
    def from_frequencies(cls, frequencies, target='delta', bias_delta=None, signs=None):
        """ Qubit parameters realizing the given frequencies.

            Args:
                frequencies: (sequence of float)
                target: {'delta','epsilon'}
                    'delta' puts the frequencies into the gaps with zero bias.
                    'epsilon' uses a uniform gap and carries the disorder in
                    the biases, epsilon_i = s_i sqrt(omega_i^2 - Delta^2).
                bias_delta: (float, default=None)
                    Uniform gap for target 'epsilon'; the smallest frequency
                    when omitted. Must not exceed any frequency.
                signs: (sequence of +-1, default=None)
                    Signs s_i of the biases, all positive when omitted.
        """
        omega = np.asarray(frequencies, dtype=float)
        if target == 'delta':
            return cls(tuple(omega), (0.0,)*len(omega))
        if target != 'epsilon':
            raise ConfigurationError("target not in {'delta','epsilon'}", "disorder.target")

        gap = float(omega.min()) if bias_delta is None else float(bias_delta)
        if gap <= 0.0 or gap > omega.min()*(1.0 + 1e-12):
            raise ConfigurationError(f"uniform gap {gap} must lie in "
                                     f"(0, {omega.min()}]", "disorder.bias_delta")
        signs = np.ones(len(omega)) if signs is None else np.asarray(signs, dtype=float)
        epsilon = signs*np.sqrt(np.clip(omega**2 - gap**2, 0.0, None))
        return cls((gap,)*len(omega), tuple(epsilon))

    def to_serializable(self):
        return {"type": "QubitParams",
                "delta": list(self.delta),
                "epsilon": list(self.epsilon)}

    @classmethod
    def from_serializable(cls, obj):
        return cls(tuple(obj["delta"]), tuple(obj["epsilon"]))

""" ############################ Interactions ############################ """

@dataclass(frozen=True)
class ShortRangeIsing:
    """ g sum_i sigma^z_i sigma^z_(i+1) along a linear array. Open ends by
        default; `periodic` closes the array into a ring.
    """
    g: float
    periodic: bool = False
    kind = 'ising'

    @property
    def strength(self):
        return self.g

    def with_strength(self, value):
        return replace(self, g=float(value))

    def to_serializable(self):
        return {"kind": self.kind, "g": self.g, "periodic": self.periodic}

@dataclass(frozen=True)
class GlobalExchange:
    g: float
    kind = 'exchange'

    @property
    def strength(self):
        return self.g

    def with_strength(self, value):
        return replace(self, g=float(value))

    def to_serializable(self):
        return {"kind": self.kind, "g": self.g}

@dataclass(frozen=True)
class CavityCoupled:
    """ Single resonator mode of frequency omega0 truncated to `photon_dim`
        Fock states, coupled to every qubit with strength gamma.
    """
    gamma: float
    omega0: float = 1.3
    photon_dim: int = 4
    kind = 'cavity'

    def __post_init__(self):
        if int(self.photon_dim) != self.photon_dim or self.photon_dim < 2:
            raise ConfigurationError("a cavity needs at least 2 Fock states",
                                     "model.interaction.photon_dim")
        if not self.omega0 > 0.0:
            raise ConfigurationError("resonator frequency must be positive",
                                     "model.interaction.omega0")

    @property
    def strength(self):
        return self.gamma

    def with_strength(self, value):
        return replace(self, gamma=float(value))

    def with_photon_dim(self, photon_dim):
        return replace(self, photon_dim=int(photon_dim))

    def to_serializable(self):
        return {"kind": self.kind, "gamma": self.gamma, "omega0": self.omega0,
                "photon_dim": self.photon_dim}

INTERACTIONS = {'ising': ShortRangeIsing,
                'exchange': GlobalExchange,
                'cavity': CavityCoupled}

def interaction_from_serializable(obj):
    """ Interaction from its serialized form; None or kind 'none' for a
        non-interacting array.
    """
    if obj is None or obj.get("kind", "none") == "none":
        return None
    kind = obj["kind"]
    if kind not in INTERACTIONS:
        raise ConfigurationError(f"unknown interaction kind '{kind}'",
                                 "model.interaction.kind")
    fields = {k: v for k, v in obj.items() if k != "kind"}
    try:
        return INTERACTIONS[kind](**fields)
    except TypeError as error:
        raise ConfigurationError(str(error), "model.interaction")

""" ############################### Models ############################### """

@dataclass(frozen=True)
class ModelSpec:
    """ Complete physical parameter set of one array.

        Args:
            qubits: (QubitParams)
            interaction: (ShortRangeIsing, GlobalExchange, CavityCoupled or None)
            temperature: (float, default=0.0)
                k_B T in units of the mean frequency; 0 is the ground-state limit.
            override_convention: (bool, default=False)
                Keep the qubit parameters as given instead of applying the
                zero-bias (Ising) or uniform-gap (exchange) conventions.
    """
    qubits: QubitParams
    interaction: object = None
    temperature: float = 0.0
    override_convention: bool = False

    def __post_init__(self):
        if self.interaction is not None and not isinstance(self.interaction, tuple(INTERACTIONS.values())):
            raise ConfigurationError("unsupported interaction type", "model.interaction")
        if not self.temperature >= 0.0:
            raise ConfigurationError("temperature must be non-negative", "model.temperature")

    @property
    def n_qubits(self):
        return self.qubits.n_qubits

    @property
    def kind(self):
        return 'none' if self.interaction is None else self.interaction.kind

    @property
    def coupling(self):
        return 0.0 if self.interaction is None else self.interaction.strength

    @property
    def photon_dim(self):
        return self.interaction.photon_dim if self.kind == 'cavity' else 0

    def space(self):
        return HilbertSpace(self.n_qubits, self.photon_dim)

    def with_coupling(self, value):
        if self.interaction is None:
            raise ConfigurationError("a non-interacting model has no coupling",
                                     "model.interaction")
        return replace(self, interaction=self.interaction.with_strength(value))

    def regime_issues(self):
        """ Advisory messages for parameters outside |coupling| < mean frequency """
        mean = qubit_frequencies(self).mean
        if self.interaction is not None and abs(self.coupling) >= mean:
            name = 'gamma' if self.kind == 'cavity' else 'g'
            return [f"|{name}| = {abs(self.coupling):g} is not below the mean "
                    f"qubit frequency {mean:g}"]
        return []

    def to_serializable(self):
        return {"type": "ModelSpec",
                "qubits": self.qubits.to_serializable(),
                "interaction": None if self.interaction is None else self.interaction.to_serializable(),
                "temperature": self.temperature,
                "override_convention": self.override_convention}

    @classmethod
    def from_serializable(cls, obj):
        qubits = obj["qubits"]
        if not isinstance(qubits, QubitParams):
            qubits = QubitParams.from_serializable(qubits)
        return cls(qubits,
                   interaction_from_serializable(obj.get("interaction")),
                   float(obj.get("temperature", 0.0)),
                   bool(obj.get("override_convention", False)))

def qubit_frequencies(spec):
    """ omega_i, their mean, and the relative population spread sigma.

        Arg:
            spec: (ModelSpec or QubitParams)
    """
    params = spec.qubits if isinstance(spec, ModelSpec) else spec
    omega = params.frequencies
    stats = spread(omega)
    return FrequencyStats(omega, stats.mean, stats.relative)

""" ############################### Terms ################################ """

def _check_qubits(params, space):
    if params.n_qubits != space.n_qubits:
        raise ConfigurationError(f"{params.n_qubits} qubit parameters for a "
                                 f"{space.n_qubits}-qubit space", "qubits")

@hermitian()
def build_qubit_term(spec, space):
    """ sum_i [Delta_i/2 sigma^x_i + epsilon_i/2 sigma^z_i] """
    params = spec.qubits if isinstance(spec, ModelSpec) else spec
    _check_qubits(params, space)
    H = np.zeros((space.total_dim,)*2, dtype=complex)
    for i, (delta, epsilon) in enumerate(zip(params.delta, params.epsilon)):
        if delta:
            H += 0.5*delta*pauli_site(space, 'x', i).matrix
        if epsilon:
            H += 0.5*epsilon*pauli_site(space, 'z', i).matrix
    return Operator(space, H)

@hermitian()
@coupling_graph(2)
def build_ising(g, space, graph=None, periodic=False):
    """ g sum over bonds of sigma^z_i sigma^z_j.

        Args:
            g: (float)
            space: (HilbertSpace)
            graph: (networkx.Graph or list of edges, default=None)
                Bonds; the open chain (or the ring if `periodic`) when omitted.
            periodic: (bool, default=False)
    """
    N = space.n_qubits
    if N < 2:
        raise ConfigurationError("the Ising term needs at least 2 qubits", "model.n_qubits")
    G = topologies.ising_graph(N, periodic) if graph is None else topologies.check_sites(graph, N)
    Z = [pauli_site(space, 'z', i).matrix.diagonal() for i in range(N)]
    diag = np.zeros(space.total_dim, dtype=complex)
    for i, j in G.edges:
        diag += Z[i]*Z[j]
    return Operator(space, np.diag(g*diag))

@hermitian()
@coupling_graph(2)
def build_exchange(g, space, graph=None):
    """ g sum over ordered pairs i != j of [sigma^x_i sigma^x_j + sigma^y_i sigma^y_j].

        Each edge of the coupling graph (all-to-all when omitted) contributes
        both orderings, i.e. twice.
    """
    N = space.n_qubits
    if N < 2:
        raise ConfigurationError("the exchange term needs at least 2 qubits", "model.n_qubits")
    G = topologies.complete_graph(N) if graph is None else topologies.check_sites(graph, N)
    X = [pauli_site(space, 'x', i).matrix for i in range(N)]
    Y = [pauli_site(space, 'y', i).matrix for i in range(N)]
    H = np.zeros((space.total_dim,)*2, dtype=complex)
    for i, j in G.edges:
        H += 2.0*(X[i] @ X[j] + Y[i] @ Y[j])
    return Operator(space, g*H)

@hermitian()
def build_cavity(spec, space):
    """ H_qb + omega0 a^dag a + gamma sum_i sigma^z_i (a^dag + a) """
    cavity = spec.interaction
    if not isinstance(cavity, CavityCoupled):
        raise ConfigurationError("cavity parameters are missing", "model.interaction")
    if space.photon_dim != cavity.photon_dim:
        raise ConfigurationError(f"space keeps {space.photon_dim} Fock states, "
                                 f"cavity {cavity.photon_dim}", "model.interaction.photon_dim")
    a = boson_ladder(space, 'annihilate').matrix
    M = total_polarization(space).matrix
    H = build_qubit_term(spec, space).matrix
    H = H + cavity.omega0*number_operator(space).matrix
    H = H + cavity.gamma*(M @ (a + a.conj().T))
    return Operator(space, H)

""" ############################## Assembly ############################## """

def resolve(spec):
    """ Apply the per-model parameter conventions, preserving every qubit
        frequency:
            Ising: zero biases, disorder carried by the gaps.
            Exchange: uniform gap (the smallest frequency), disorder carried
            by the biases.
        Conventions are skipped with `override_convention`; a forced change
        emits a ConventionWarning.
    """
    if spec.override_convention:
        return spec
    params = spec.qubits
    omega = params.frequencies
    if spec.kind == 'ising' and any(params.epsilon):
        new = QubitParams.from_frequencies(omega, 'delta')
        note = "Ising model: biases set to zero, frequencies moved into the gaps"
    elif spec.kind == 'exchange' and np.ptp(params.delta) > 0.0:
        signs = np.where(np.asarray(params.epsilon) < 0.0, -1.0, 1.0)
        new = QubitParams.from_frequencies(omega, 'epsilon', signs=signs)
        note = "exchange model: uniform gap imposed, disorder moved into the biases"
    else:
        return spec
    warnings.warn(note, ConventionWarning)
    return replace(spec, qubits=new)

def assemble(spec):
    """ Hilbert space and total Hamiltonian of a model.

        Returns:
            Model(space, hamiltonian)
    """
    spec = resolve(spec)
    for issue in spec.regime_issues():
        warnings.warn(issue, RegimeWarning)

    space = spec.space()
    kind = spec.kind
    if kind == 'cavity':
        H = build_cavity(spec, space)
    else:
        H = build_qubit_term(spec, space)
        if kind == 'ising':
            H = H + build_ising(spec.interaction.g, space, None, spec.interaction.periodic)
        elif kind == 'exchange':
            H = H + build_exchange(spec.interaction.g, space)
    log.debug("assembled %s model: N=%d, dim=%d", kind, spec.n_qubits, space.total_dim)
    return Model(space, H)
