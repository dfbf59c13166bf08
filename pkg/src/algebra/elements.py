"""Elements of the matrix C*-algebra M_n."""

from dataclasses import dataclass

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import DimensionMismatch
from src.linalg import CMatrix, adjoint, as_cmatrix, min_eigenvalue, op_norm


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element ``a`` of ``A = M_n``."""
    value: CMatrix

    def __post_init__(self):
        value = as_cmatrix(self.value)
        if value.shape[0] != value.shape[1]:
            raise DimensionMismatch(f"algebra elements are square, got shape {value.shape}")
        object.__setattr__(self, "value", value)

    @property
    def algebra_dim(self) -> int:
        return self.value.shape[0]

    @property
    def norm(self) -> float:
        return op_norm(self.value)

    @classmethod
    def identity(cls, n: int) -> "AlgebraElement":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(np.zeros((n, n), dtype=np.complex128))

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(adjoint(self.value))

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        if other.algebra_dim != self.algebra_dim:
            raise DimensionMismatch(f"cannot multiply M_{self.algebra_dim} by M_{other.algebra_dim}")
        return AlgebraElement(self.value @ other.value)


def is_positive(a: AlgebraElement, tol: float = DEFAULT_TOLERANCES.positivity) -> bool:
    """Self-adjoint with spectrum in ``[-tol * ||a||, inf)``; zero is positive."""
    scale = a.norm
    if scale == 0.0:
        return True
    if op_norm(a.value - adjoint(a.value)) > tol * scale:
        return False
    return min_eigenvalue(a.value) >= -tol * scale
