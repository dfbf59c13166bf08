"""The Hilbert C*-module M_{n x k} over M_n with <x, y> = x y*."""

import logging
import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import DimensionMismatch, NotFull, SpaceMismatch
from src.linalg import CMatrix, adjoint, as_cmatrix, matrix_units, op_norm, rank_span
from src.algebra import AlgebraElement

logger = logging.getLogger(__name__)

# Construction-time fullness assertion is exhaustive up to this algebra size;
# beyond it the model is full by construction and the check is skipped.
FULLNESS_ASSERT_MAX_DIM = 8


@dataclass(frozen=True)
class ModuleSpace:
    """Left module ``M_{n x k}`` over ``A = M_n``.

    ``k = 1`` is a Hilbert space ``C^n`` viewed as a module over ``M_n``
    with ``<x, y>`` the rank-one operator ``z -> (z, y) x``.
    """
    algebra_dim: int
    module_cols: int

    # Test hooks override ``inner`` and may switch the fullness assertion off.
    require_full: ClassVar[bool] = True

    def __post_init__(self):
        if self.algebra_dim < 1 or self.module_cols < 1:
            raise DimensionMismatch(
                f"module space needs n >= 1 and k >= 1, got n={self.algebra_dim}, k={self.module_cols}"
            )
        if self.require_full and self.algebra_dim <= FULLNESS_ASSERT_MAX_DIM and not check_fullness(self):
            raise NotFull(f"inner products of {self} do not span M_{self.algebra_dim}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.algebra_dim, self.module_cols)

    @property
    def dimension(self) -> int:
        """Complex dimension of the module as a vector space."""
        return self.algebra_dim * self.module_cols

    def inner(self, x: CMatrix, y: CMatrix) -> CMatrix:
        return x @ adjoint(y)

    def generators(self) -> list[CMatrix]:
        """Module matrix units ``E_pq`` (``n x k``)."""
        return matrix_units(self.algebra_dim, self.module_cols)

    def element(self, value) -> "ModuleElement":
        return ModuleElement(self, value)

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, np.zeros(self.shape, dtype=np.complex128))


@dataclass(frozen=True, eq=False)
class ModuleElement:
    """An element ``x`` of a module space."""
    space: ModuleSpace
    value: CMatrix

    def __post_init__(self):
        value = as_cmatrix(self.value)
        if value.shape != self.space.shape:
            raise DimensionMismatch(f"element of shape {value.shape} does not fit {self.space}")
        object.__setattr__(self, "value", value)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        _same_space(self, other)
        return ModuleElement(self.space, self.value + other.value)

    def __rmul__(self, scalar: complex) -> "ModuleElement":
        return ModuleElement(self.space, scalar * self.value)


def _same_space(x: ModuleElement, y: ModuleElement) -> None:
    if x.space != y.space:
        raise SpaceMismatch(f"{x.space} and {y.space} differ")


def inner_product(x: ModuleElement, y: ModuleElement) -> AlgebraElement:
    """``<x, y>``, A-linear in ``x`` and conjugate-linear in ``y``.

    Raises:
        SpaceMismatch: If ``x`` and ``y`` live in different spaces.
    """
    _same_space(x, y)
    return AlgebraElement(x.space.inner(x.value, y.value))


def module_action(a: AlgebraElement, x: ModuleElement) -> ModuleElement:
    """``a . x`` (left matrix multiplication).

    Raises:
        DimensionMismatch: If ``a`` is not in ``M_n`` for the space of ``x``.
    """
    if a.algebra_dim != x.space.algebra_dim:
        raise DimensionMismatch(f"M_{a.algebra_dim} does not act on {x.space}")
    return ModuleElement(x.space, a.value @ x.value)


def module_norm(x: ModuleElement) -> float:
    """``||<x, x>||^{1/2}``; the largest singular value of ``x``."""
    return math.sqrt(op_norm(x.space.inner(x.value, x.value)))


def inner_product_span(space: ModuleSpace) -> int:
    """Rank of ``{<E_pq, E_rs>}`` over all module matrix units."""
    generators = space.generators()
    products = [space.inner(x, y) for x in generators for y in generators]
    return rank_span(products, DEFAULT_TOLERANCES.rank)


def check_fullness(space: ModuleSpace) -> bool:
    """Whether the inner products of the generators span ``M_n``."""
    return inner_product_span(space) == space.algebra_dim ** 2


def annihilator_defect(a: AlgebraElement, space: ModuleSpace) -> float:
    """``max_j ||a E_j1||`` over the column generators.

    Zero exactly when ``a`` annihilates the module (``a = 0``), and always at
    least ``||a|| / sqrt(n)``.
    """
    if a.algebra_dim != space.algebra_dim:
        raise DimensionMismatch(f"M_{a.algebra_dim} does not act on {space}")
    n = space.algebra_dim
    defect = 0.0
    for j in range(n):
        x = np.zeros(space.shape, dtype=np.complex128)
        x[j, 0] = 1.0
        defect = max(defect, op_norm(a.value @ x))
    return defect
