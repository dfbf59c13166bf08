"""Dense complex matrix primitives.

Every algebra element, module element and operator is carried as a 2-D
``numpy`` array of dtype ``complex128`` (a "CMatrix").
"""

from typing import Sequence

import numpy as np
import numpy.typing as npt

from src.config import DEFAULT_TOLERANCES
from src.errors import DimensionMismatch, NonFiniteEntries, ShapeMismatch

CMatrix = npt.NDArray[np.complex128]


def as_cmatrix(value) -> CMatrix:
    """Coerce ``value`` to a finite 2-D complex matrix.

    Raises:
        ShapeMismatch: If the value is not two-dimensional or is empty.
        NonFiniteEntries: If any entry is NaN or infinite.
    """
    matrix = np.asarray(value, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.size == 0:
        raise ShapeMismatch(f"expected a non-empty 2-D matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteEntries("matrix contains NaN or infinite entries")
    return matrix


def adjoint(a: CMatrix) -> CMatrix:
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T


def hermitian_part(a: CMatrix) -> CMatrix:
    """``(A + A*) / 2``; the result is Hermitian to the last bit."""
    a = np.asarray(a)
    return (a + adjoint(a)) / 2


def matmul(a: CMatrix, b: CMatrix) -> CMatrix:
    """Complex matrix product.

    Raises:
        DimensionMismatch: If ``a.cols != b.rows``.
    """
    a, b = np.asarray(a), np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def op_norm(a: CMatrix) -> float:
    """Spectral norm: the largest singular value, 0 for the zero matrix."""
    a = np.asarray(a)
    if a.size == 0 or not np.any(a):
        return 0.0
    return float(np.linalg.norm(a, 2))


def matrix_units(rows: int, cols: int) -> list[CMatrix]:
    """The canonical basis ``E_pq`` of ``rows x cols`` matrices, row-major."""
    units = []
    for p in range(rows):
        for q in range(cols):
            unit = np.zeros((rows, cols), dtype=np.complex128)
            unit[p, q] = 1.0
            units.append(unit)
    return units


def rank_span(mats: Sequence[CMatrix], tol: float = DEFAULT_TOLERANCES.rank) -> int:
    """Dimension of the complex span of equally shaped matrices.

    The matrices are vectorized into the rows of a work array which is reduced
    by Gaussian elimination with complete pivoting. A pivot counts only if its
    magnitude exceeds ``tol`` times the largest initial entry magnitude.

    Raises:
        ShapeMismatch: If the list is empty or the shapes differ.
    """
    if len(mats) == 0:
        raise ShapeMismatch("rank_span needs at least one matrix")
    shape = np.shape(mats[0])
    if any(np.shape(m) != shape for m in mats):
        raise ShapeMismatch("rank_span needs matrices of a single shape")

    work = np.array([np.asarray(m, dtype=np.complex128).reshape(-1) for m in mats])
    scale = float(np.abs(work).max())
    if scale == 0.0:
        return 0
    threshold = tol * scale

    rows, cols = work.shape
    rank = 0
    while rank < min(rows, cols):
        block = np.abs(work[rank:, rank:])
        i, j = np.unravel_index(np.argmax(block), block.shape)
        if block[i, j] <= threshold:
            break
        i, j = i + rank, j + rank
        work[[rank, i]] = work[[i, rank]]
        work[:, [rank, j]] = work[:, [j, rank]]
        factors = work[rank + 1:, rank] / work[rank, rank]
        work[rank + 1:, rank:] -= np.outer(factors, work[rank, rank:])
        rank += 1
    return rank
