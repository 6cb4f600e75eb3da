""" Dense Hermitian eigendecomposition with explicit quality contracts """
import logging

from collections import namedtuple
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from sqadyn.exceptions import NumericalError, ValidationError
from sqadyn.space.operators import HilbertSpace, StateVector

__all__ = ["Spectrum", "GroundState", "OverlapMatch", "diagonalize",
           "ground_state", "max_overlap_state", "HERMITIAN_TOL",
           "QUALITY_TOL", "DEGENERACY_TOL"]

log = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
QUALITY_TOL = 1e-10
DEGENERACY_TOL = 1e-12

GroundState = namedtuple("GroundState", ["energy", "vector", "degenerate"])

OverlapMatch = namedtuple("OverlapMatch", ["index", "energy", "vector", "overlap"])

@dataclass(frozen=True, eq=False)
class Spectrum:
    """ Ascending eigenvalues and the unitary matrix of eigenvectors
        (column k pairs with eigenvalue k).
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    space: HilbertSpace

    def __post_init__(self):
        for name in ('eigenvalues', 'eigenvectors'):
            value = np.array(getattr(self, name))
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    def __len__(self):
        return len(self.eigenvalues)

    def vector(self, k):
        return StateVector(self.space, self.eigenvectors[:, k], normalize=False)

    def matrix_elements(self, operator):
        """ <Psi_m| A |Psi_n> for all m, n """
        V = self.eigenvectors
        return V.conj().T @ operator.matrix @ V

    def residual(self, operator):
        """ max_k ||H v_k - lambda_k v_k||_2 """
        V = self.eigenvectors
        R = operator.matrix @ V - V*self.eigenvalues
        return float(np.max(np.linalg.norm(R, axis=0))) if len(self) else 0.0

    def orthonormality_error(self):
        V = self.eigenvectors
        return float(np.max(np.abs(V.conj().T @ V - np.eye(len(self))))) if len(self) else 0.0

def diagonalize(H):
    """ Full eigendecomposition of a Hermitian operator.

        The matrix is checked to be Hermitian within 1e-10 (relative to its
        largest entry), symmetrized as (H + H^H)/2 and decomposed with LAPACK.
        The result is checked against the residual and orthonormality
        contracts of `Spectrum`.

        Raises:
            ValidationError: H is not Hermitian.
            NumericalError: LAPACK failed or a contract is violated.
    """
    dim = H.space.total_dim
    error = H.hermiticity_error()
    if error > HERMITIAN_TOL:
        raise ValidationError(f"matrix of size {dim} is not Hermitian "
                              f"(relative error {error:.3e})")
    A = 0.5*(H.matrix + H.matrix.conj().T)
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(A)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigendecomposition of a {dim}x{dim} matrix "
                             f"failed: {exc}")

    spectrum = Spectrum(eigenvalues, eigenvectors, H.space)
    scale = float(np.max(np.abs(eigenvalues))) if dim else 0.0
    residual = spectrum.residual(H)
    if residual > QUALITY_TOL*scale:
        raise NumericalError(f"eigenpair residual {residual:.3e} exceeds "
                             f"tolerance for a {dim}x{dim} matrix")
    orthonormality = spectrum.orthonormality_error()
    if orthonormality > QUALITY_TOL:
        raise NumericalError(f"eigenvectors of a {dim}x{dim} matrix are not "
                             f"orthonormal ({orthonormality:.3e})")
    if np.any(np.diff(eigenvalues) < 0.0):
        raise NumericalError(f"eigenvalues of a {dim}x{dim} matrix are not sorted")
    log.debug("diagonalized %dx%d matrix, residual %.2e", dim, dim, residual)
    return spectrum

def ground_state(spectrum):
    """ Lowest eigenpair. On degeneracy within 1e-12 the first column is
        returned and `degenerate` is set.
    """
    if not len(spectrum):
        raise ValidationError("empty spectrum")
    E = spectrum.eigenvalues
    degenerate = len(E) > 1 and (E[1] - E[0]) <= DEGENERACY_TOL
    return GroundState(float(E[0]), spectrum.vector(0), bool(degenerate))

def max_overlap_state(spectrum, reference):
    """ Eigenstate with the largest squared overlap |<v_k|reference>|^2.

        Ties within 1e-12 go to the lower eigenvalue. The squared overlap is
        returned so callers can reject weak identifications.

        Returns:
            OverlapMatch(index, energy, vector, overlap)
    """
    if reference.space != spectrum.space:
        raise ValidationError("reference state lives on a different space")
    if abs(reference.norm - 1.0) > 1e-12:
        raise ValidationError("reference state is not normalized")
    overlaps = np.abs(spectrum.eigenvectors.conj().T @ reference.amplitudes)**2
    best = overlaps.max()
    index = int(np.flatnonzero(overlaps >= best - DEGENERACY_TOL)[0])
    return OverlapMatch(index, float(spectrum.eigenvalues[index]),
                        spectrum.vector(index), float(overlaps[index]))
