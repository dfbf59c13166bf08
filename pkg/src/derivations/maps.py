"""Linear maps on module and algebra elements used as derivation components."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from src.errors import DimensionMismatch, PreconditionViolated
from src.linalg import CMatrix, as_cmatrix, matrix_units


class LinearMap(ABC):
    """A map acting on matrices of one fixed ``shape``."""

    kind: ClassVar[str] = "abstract"

    @property
    @abstractmethod
    def shape(self) -> tuple[int, int]:
        ...

    @abstractmethod
    def __call__(self, value: CMatrix) -> CMatrix:
        ...

    def matrix(self) -> CMatrix:
        """Representation on row-major vectorized elements."""
        columns = [self(unit).reshape(-1) for unit in matrix_units(*self.shape)]
        return np.column_stack(columns)


@dataclass(frozen=True, eq=False)
class LeftMultGenerator(LinearMap):
    """``x -> i T x`` on ``n x cols`` matrices."""
    generator: CMatrix
    cols: int
    kind: ClassVar[str] = "left_mult_generator"

    def __post_init__(self):
        generator = as_cmatrix(self.generator)
        if generator.shape[0] != generator.shape[1]:
            raise DimensionMismatch(f"generator must be square, got shape {generator.shape}")
        object.__setattr__(self, "generator", generator)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.generator.shape[0], self.cols)

    def __call__(self, value: CMatrix) -> CMatrix:
        return 1j * (self.generator @ value)

    def matrix(self) -> CMatrix:
        return 1j * np.kron(self.generator, np.eye(self.cols))


@dataclass(frozen=True, eq=False)
class CommutatorMap(LinearMap):
    """``a -> i [T, a]`` on ``M_n``."""
    generator: CMatrix
    kind: ClassVar[str] = "commutator"

    def __post_init__(self):
        generator = as_cmatrix(self.generator)
        if generator.shape[0] != generator.shape[1]:
            raise DimensionMismatch(f"generator must be square, got shape {generator.shape}")
        object.__setattr__(self, "generator", generator)

    @property
    def shape(self) -> tuple[int, int]:
        return self.generator.shape

    def __call__(self, value: CMatrix) -> CMatrix:
        return 1j * (self.generator @ value - value @ self.generator)

    def matrix(self) -> CMatrix:
        n = self.generator.shape[0]
        eye = np.eye(n)
        return 1j * (np.kron(self.generator, eye) - np.kron(eye, self.generator.T))


@dataclass(frozen=True, eq=False)
class MatrixMap(LinearMap):
    """A general linear map given by its vectorized matrix."""
    operator: CMatrix
    element_shape: tuple[int, int]
    kind: ClassVar[str] = "matrix"

    def __post_init__(self):
        operator = as_cmatrix(self.operator)
        size = self.element_shape[0] * self.element_shape[1]
        if operator.shape != (size, size):
            raise DimensionMismatch(f"operator of shape {operator.shape} does not act on {self.element_shape}")
        object.__setattr__(self, "operator", operator)

    @classmethod
    def zero(cls, shape: tuple[int, int]) -> "MatrixMap":
        size = shape[0] * shape[1]
        return cls(np.zeros((size, size), dtype=np.complex128), shape)

    @property
    def shape(self) -> tuple[int, int]:
        return self.element_shape

    def __call__(self, value: CMatrix) -> CMatrix:
        return (self.operator @ np.asarray(value).reshape(-1)).reshape(self.element_shape)

    def matrix(self) -> CMatrix:
        return self.operator


@dataclass(frozen=True, eq=False)
class ConjugationMap(LinearMap):
    """Entrywise complex conjugation: additive but only real-linear.

    Exists to exercise linearity preconditions.
    """
    element_shape: tuple[int, int]
    kind: ClassVar[str] = "conjugation"

    @property
    def shape(self) -> tuple[int, int]:
        return self.element_shape

    def __call__(self, value: CMatrix) -> CMatrix:
        return np.conj(value)

    def matrix(self) -> CMatrix:
        raise PreconditionViolated("conjugation is not complex-linear and has no matrix")


def combine(alpha: complex, first: LinearMap, beta: complex, second: LinearMap) -> LinearMap:
    """``alpha first + beta second``, staying structural where the kinds allow."""
    if first.shape != second.shape:
        raise DimensionMismatch(f"cannot combine maps on {first.shape} and {second.shape}")
    if isinstance(first, LeftMultGenerator) and isinstance(second, LeftMultGenerator):
        return LeftMultGenerator(alpha * first.generator + beta * second.generator, first.cols)
    if isinstance(first, CommutatorMap) and isinstance(second, CommutatorMap):
        return CommutatorMap(alpha * first.generator + beta * second.generator)
    return MatrixMap(alpha * first.matrix() + beta * second.matrix(), first.shape)


def bracket(first: LinearMap, second: LinearMap) -> LinearMap:
    """``first second - second first``.

    For generator kinds ``[iT1, iT2] = i K`` with ``K = i [T1, T2]``, so the
    bracket stays structural.
    """
    if first.shape != second.shape:
        raise DimensionMismatch(f"cannot bracket maps on {first.shape} and {second.shape}")
    if isinstance(first, LeftMultGenerator) and isinstance(second, LeftMultGenerator):
        t1, t2 = first.generator, second.generator
        return LeftMultGenerator(1j * (t1 @ t2 - t2 @ t1), first.cols)
    if isinstance(first, CommutatorMap) and isinstance(second, CommutatorMap):
        t1, t2 = first.generator, second.generator
        return CommutatorMap(1j * (t1 @ t2 - t2 @ t1))
    m1, m2 = first.matrix(), second.matrix()
    return MatrixMap(m1 @ m2 - m2 @ m1, first.shape)
