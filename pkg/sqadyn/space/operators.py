""" Operators on the tensor-product space of N spin-1/2 qubits and an optional
    truncated bosonic mode.

    Basis ordering:
        Qubit 0 is the most significant tensor factor and the photon index is
        the least significant (fastest-varying) one. For qubit bits b_i (0 for
        |0>, 1 for |1>) and Fock occupation `fock`:

            index = (sum_i b_i 2^(N-1-i)) * max(photon_dim, 1) + fock

    Computational basis:
        sigma^z |0> = +|0>, sigma^z |1> = -|1>.

    Units are hbar = 1 and mean qubit frequency = 1 throughout the package.
"""
from dataclasses import dataclass
from functools import reduce

import numpy as np

from sqadyn.exceptions import ConfigurationError
from sqadyn.utilities.decorators import hermitian

__all__ = ["HilbertSpace", "Operator", "StateVector", "PAULI",
           "basis_index", "identity", "pauli_site", "boson_ladder",
           "number_operator", "total_polarization", "product_state",
           "commutator"]

PAULI = {'x': np.array([[0, 1], [1, 0]], dtype=complex),
         'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
         'z': np.array([[1, 0], [0, -1]], dtype=complex)}

IDENTITY_2 = np.eye(2, dtype=complex)

@dataclass(frozen=True)
class HilbertSpace:
    """ N qubits plus an optional truncated bosonic mode.

        Args:
            n_qubits: (int)
                Number of spin-1/2 sites, at least 1.
            photon_dim: (int, default=0)
                0 for no bosonic mode, otherwise the number of retained Fock
                states (occupations 0..photon_dim-1).
    """
    n_qubits: int
    photon_dim: int = 0

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 1:
            raise ConfigurationError("must be a positive integer", "n_qubits")
        if int(self.photon_dim) != self.photon_dim or self.photon_dim < 0:
            raise ConfigurationError("must be a non-negative integer", "photon_dim")

    @property
    def qubit_dim(self):
        return 2**self.n_qubits

    @property
    def fock_dim(self):
        return max(self.photon_dim, 1)

    @property
    def total_dim(self):
        return self.qubit_dim*self.fock_dim

    @property
    def has_photons(self):
        return self.photon_dim > 0

    def to_serializable(self):
        return {"type": "HilbertSpace",
                "n_qubits": self.n_qubits,
                "photon_dim": self.photon_dim}

    @classmethod
    def from_serializable(cls, obj):
        return cls(obj["n_qubits"], obj.get("photon_dim", 0))

@dataclass(frozen=True, eq=False)
class Operator:
    """ Dense complex matrix bound to a HilbertSpace. The matrix is stored
        read-only, so operators can be shared between sweep workers.
    """
    space: HilbertSpace
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        dim = self.space.total_dim
        if matrix.shape != (dim, dim):
            raise ConfigurationError(f"expected shape {(dim, dim)}, "
                                     f"got {matrix.shape}", "matrix")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    def hermiticity_error(self):
        """ max|A - A^H| relative to max|A| (0.0 for the zero matrix) """
        scale = np.max(np.abs(self.matrix)) if self.matrix.size else 0.0
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))/scale)

    def is_hermitian(self, tol=1e-12):
        return self.hermiticity_error() <= tol

    def _check_space(self, other):
        if other.space != self.space:
            raise ConfigurationError(f"operators live on different spaces: "
                                     f"{self.space} and {other.space}")

    def __add__(self, other):
        self._check_space(other)
        return Operator(self.space, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check_space(other)
        return Operator(self.space, self.matrix - other.matrix)

    def __neg__(self):
        return Operator(self.space, -self.matrix)

    def __mul__(self, scalar):
        return Operator(self.space, scalar*self.matrix)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            self._check_space(other)
            return StateVector(self.space, self.matrix @ other.amplitudes,
                               normalize=False)
        self._check_space(other)
        return Operator(self.space, self.matrix @ other.matrix)

    def expectation(self, state):
        self._check_space(state)
        return complex(np.vdot(state.amplitudes, self.matrix @ state.amplitudes))

@dataclass(frozen=True, eq=False)
class StateVector:
    space: HilbertSpace
    amplitudes: np.ndarray
    normalize: bool = True

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape != (self.space.total_dim,):
            raise ConfigurationError(f"expected {self.space.total_dim} "
                                     f"amplitudes, got {amplitudes.shape[0]}",
                                     "amplitudes")
        if self.normalize:
            norm = np.linalg.norm(amplitudes)
            if norm == 0.0:
                raise ConfigurationError("cannot normalize the zero vector",
                                         "amplitudes")
            amplitudes = amplitudes/norm
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other):
        """ <self|other> """
        return complex(np.vdot(self.amplitudes, other.amplitudes))

def basis_index(space, bits, fock=0):
    """ Position of the product basis state |b_0 ... b_(N-1)> x |fock> """
    if len(bits) != space.n_qubits:
        raise ConfigurationError(f"expected {space.n_qubits} bits", "bits")
    if not 0 <= fock < space.fock_dim:
        raise IndexError(f"Fock occupation {fock} outside 0..{space.fock_dim-1}")
    qubit_index = 0
    for b in bits:
        qubit_index = 2*qubit_index + int(b)
    return qubit_index*space.fock_dim + fock

def _embed(space, site_ops, photon_op=None):
    """ Kronecker product of one 2x2 factor per site (identity where absent)
        and the photon factor, in the fixed basis ordering.
    """
    factors = [site_ops.get(i, IDENTITY_2) for i in range(space.n_qubits)]
    if space.has_photons:
        if photon_op is None:
            photon_op = np.eye(space.photon_dim, dtype=complex)
        factors.append(photon_op)
    return reduce(np.kron, factors)

def identity(space):
    return Operator(space, np.eye(space.total_dim, dtype=complex))

@hermitian()
def pauli_site(space, axis, site):
    """ Single-site Pauli operator sigma^axis_site, identity elsewhere.

        Args:
            space: (HilbertSpace)
            axis: {'x','y','z'}
            site: (int)
                0-based qubit index.
    """
    if axis not in PAULI:
        raise ConfigurationError("axis not in {'x','y','z'}", "axis")
    if not 0 <= site < space.n_qubits:
        raise IndexError(f"site {site} outside 0..{space.n_qubits-1}")
    return Operator(space, _embed(space, {site: PAULI[axis]}))

def _ladder_block(photon_dim):
    """ Truncated annihilation operator: sqrt(m) at (m-1, m) """
    return np.diag(np.sqrt(np.arange(1, photon_dim)), k=1).astype(complex)

def boson_ladder(space, kind):
    """ Identity on qubits tensored with the truncated ladder operator.

        Truncation makes [a, a^dag] equal the identity on every retained Fock
        state except the highest, where it equals -(photon_dim - 1).

        Args:
            kind: {'create','annihilate'}
    """
    if space.photon_dim < 2:
        raise ConfigurationError("a bosonic mode needs at least 2 Fock states",
                                 "photon_dim")
    block = _ladder_block(space.photon_dim)
    if kind == 'annihilate':
        pass
    elif kind == 'create':
        block = block.conj().T
    else:
        raise ConfigurationError("kind not in {'create','annihilate'}", "kind")
    return Operator(space, _embed(space, {}, block))

@hermitian()
def number_operator(space):
    if space.photon_dim < 2:
        raise ConfigurationError("a bosonic mode needs at least 2 Fock states",
                                 "photon_dim")
    block = np.diag(np.arange(space.photon_dim)).astype(complex)
    return Operator(space, _embed(space, {}, block))

@hermitian()
def total_polarization(space):
    """ M = sum_i sigma^z_i, identity on the photon factor. Diagonal in the
        product basis with integer entries in {-N, -N+2, ..., N}.
    """
    N = space.n_qubits
    counts = np.array([bin(q).count('1') for q in range(space.qubit_dim)])
    qubit_diag = N - 2*counts
    diag = np.repeat(qubit_diag, space.fock_dim).astype(complex)
    return Operator(space, np.diag(diag))

def product_state(space, per_qubit, fock=None):
    """ Normalized product state (x)_i |psi_i> (x) |fock>.

        Args:
            per_qubit: (sequence)
                One 2-component state per qubit, each normalized.
            fock: (int, default=None)
                Fock occupation; the vacuum when omitted.
    """
    if len(per_qubit) != space.n_qubits:
        raise ConfigurationError(f"expected {space.n_qubits} single-qubit "
                                 f"states, got {len(per_qubit)}", "per_qubit")
    fock = 0 if fock is None else fock
    if not 0 <= fock < space.fock_dim:
        raise IndexError(f"Fock occupation {fock} outside 0..{space.fock_dim-1}")

    factors = []
    for i, psi in enumerate(per_qubit):
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        if psi.shape != (2,):
            raise ConfigurationError("single-qubit states have 2 amplitudes",
                                     f"per_qubit[{i}]")
        if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
            raise ConfigurationError("single-qubit state is not normalized",
                                     f"per_qubit[{i}]")
        factors.append(psi)
    if space.has_photons:
        photon = np.zeros(space.photon_dim, dtype=complex)
        photon[fock] = 1.0
        factors.append(photon)
    return StateVector(space, reduce(np.kron, factors))

def commutator(A, B):
    return A @ B - B @ A
