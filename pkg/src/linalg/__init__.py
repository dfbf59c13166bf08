"""Dense complex linear algebra primitives."""

from .core import (
    CMatrix,
    adjoint,
    as_cmatrix,
    hermitian_part,
    matmul,
    matrix_units,
    op_norm,
    rank_span,
)
from .eigen import EigenDecomposition, expm_i, herm_eig, min_eigenvalue
from .sampling import SampleRng, case_rng, derive_seed

__all__ = [
    "CMatrix",
    "EigenDecomposition",
    "SampleRng",
    "adjoint",
    "as_cmatrix",
    "case_rng",
    "derive_seed",
    "expm_i",
    "herm_eig",
    "hermitian_part",
    "matmul",
    "matrix_units",
    "min_eigenvalue",
    "op_norm",
    "rank_span",
]
