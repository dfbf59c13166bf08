"""Hermitian eigendecomposition by cyclic Jacobi rotations, and e^{itT}."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.errors import NoConvergence, NotHermitian, ShapeMismatch
from .core import CMatrix, adjoint, as_cmatrix, hermitian_part, op_norm

logger = logging.getLogger(__name__)

MAX_SWEEPS = 30
OFF_DIAGONAL_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """``A = Q diag(eigenvalues) Q*`` with ascending real eigenvalues."""
    eigenvalues: np.ndarray
    eigenvectors: CMatrix

    def reconstruct(self) -> CMatrix:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ adjoint(q)

    def exponentiate(self, t: float) -> CMatrix:
        """``Q diag(e^{i t lambda}) Q*``, the unitary e^{itA}."""
        q = self.eigenvectors
        phases = np.exp(1j * t * self.eigenvalues)
        return (q * phases) @ adjoint(q)

    def orthonormality_defect(self) -> float:
        q = self.eigenvectors
        return op_norm(adjoint(q) @ q - np.eye(q.shape[1]))


def _check_hermitian(a: CMatrix, tol: float) -> None:
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix of shape {a.shape} is not square")
    defect = op_norm(a - adjoint(a))
    if defect > tol * op_norm(a):
        raise NotHermitian(f"||A - A*|| = {defect:.3e} exceeds {tol:.1e} * ||A||")


def _rotation(work: CMatrix, p: int, q: int) -> np.ndarray | None:
    """2x2 unitary block annihilating ``work[p, q]``, or None if already zero."""
    off = work[p, q]
    magnitude = abs(off)
    if magnitude == 0.0:
        return None
    phase = off / magnitude
    theta = (work[q, q].real - work[p, p].real) / (2.0 * magnitude)
    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    # Phase the (p, q) entry to a positive real, then apply a real rotation.
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)


def _jacobi(a: CMatrix) -> EigenDecomposition:
    n = a.shape[0]
    work = hermitian_part(a).astype(np.complex128, copy=True)
    vectors = np.eye(n, dtype=np.complex128)
    frobenius = float(np.linalg.norm(work))
    target = OFF_DIAGONAL_TOL * frobenius

    for sweep in range(MAX_SWEEPS + 1):
        off = float(np.linalg.norm(work - np.diag(np.diag(work))))
        if off <= target:
            break
        if sweep == MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal {off:.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                block = _rotation(work, p, q)
                if block is None:
                    continue
                idx = [p, q]
                work[:, idx] = work[:, idx] @ block
                work[idx, :] = adjoint(block) @ work[idx, :]
                work[p, q] = work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vectors[:, idx] = vectors[:, idx] @ block

    eigenvalues = np.real(np.diag(work))
    order = np.argsort(eigenvalues, kind="stable")
    return EigenDecomposition(eigenvalues=eigenvalues[order], eigenvectors=vectors[:, order])


def herm_eig(a: CMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Args:
        a: Square matrix, Hermitian to within ``tol.herm`` relative.
        tol: Tolerance record; ``herm`` gates the input check.

    Returns:
        EigenDecomposition with ascending eigenvalues and orthonormal columns.

    Raises:
        NotHermitian: If the input fails the Hermitian check.
        NoConvergence: If the rotations do not converge in ``MAX_SWEEPS``.
    """
    a = as_cmatrix(a)
    _check_hermitian(a, tol.herm)
    result = _jacobi(a)
    defect = result.orthonormality_defect()
    if defect > tol.eig:
        logger.warning(f"Eigenvector orthonormality defect {defect:.3e} exceeds {tol.eig:.1e}")
    return result


def expm_i(t_matrix: CMatrix, t: float, tol: Tolerances = DEFAULT_TOLERANCES) -> CMatrix:
    """The unitary ``e^{itT}`` for Hermitian ``T``."""
    return herm_eig(t_matrix, tol).exponentiate(t)


def min_eigenvalue(a: CMatrix) -> float:
    """Smallest eigenvalue of the Hermitian part of ``a``."""
    a = np.asarray(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"matrix of shape {a.shape} is not square")
    return float(_jacobi(a).eigenvalues[0])
