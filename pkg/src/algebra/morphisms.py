"""Concrete *-morphisms between matrix algebras."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import DimensionMismatch, NotUnitary
from src.linalg import CMatrix, adjoint, as_cmatrix, matrix_units, op_norm, rank_span
from .elements import AlgebraElement

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-10

# Rank cross-checks enumerate n^2 images of size m^2; skip them beyond this.
RANK_CROSSCHECK_MAX_DIM = 8


def unitarity_defect(u: CMatrix) -> float:
    """``||U*U - I||``."""
    return op_norm(adjoint(u) @ u - np.eye(u.shape[1]))


class StarMorphism(ABC):
    """A map ``phi: M_n -> M_m`` represented by its structural kind."""

    kind: ClassVar[str] = "abstract"

    @property
    @abstractmethod
    def source_dim(self) -> int:
        ...

    @property
    @abstractmethod
    def target_dim(self) -> int:
        ...

    @property
    @abstractmethod
    def injective(self) -> bool:
        """Structural injectivity of the kind."""
        ...

    @abstractmethod
    def map(self, a: CMatrix) -> CMatrix:
        """Evaluate on a raw ``n x n`` matrix."""
        ...

    def __call__(self, a: CMatrix) -> CMatrix:
        return self.map(a)

    def describe(self) -> dict:
        return {"kind": self.kind, "source_dim": self.source_dim, "target_dim": self.target_dim}


@dataclass(frozen=True, eq=False)
class AdUnitary(StarMorphism):
    """``Ad U: a -> U a U*``."""
    unitary: CMatrix
    kind: ClassVar[str] = "ad_unitary"

    def __post_init__(self):
        u = as_cmatrix(self.unitary)
        if u.shape[0] != u.shape[1]:
            raise NotUnitary(f"unitary must be square, got shape {u.shape}")
        defect = unitarity_defect(u)
        if defect > UNITARY_TOL:
            raise NotUnitary(f"||U*U - I|| = {defect:.3e} exceeds {UNITARY_TOL:.0e}")
        object.__setattr__(self, "unitary", u)

    @property
    def source_dim(self) -> int:
        return self.unitary.shape[0]

    @property
    def target_dim(self) -> int:
        return self.unitary.shape[0]

    @property
    def injective(self) -> bool:
        return True

    def map(self, a: CMatrix) -> CMatrix:
        return self.unitary @ a @ adjoint(self.unitary)


@dataclass(frozen=True, eq=False)
class BlockEmbed(StarMorphism):
    """Places ``a`` as the diagonal block starting at ``offset`` of an ``m x m`` zero matrix."""
    source: int
    target: int
    offset: int = 0
    kind: ClassVar[str] = "block_embed"

    def __post_init__(self):
        if self.source < 1 or self.offset < 0 or self.offset + self.source > self.target:
            raise DimensionMismatch(
                f"cannot embed M_{self.source} at offset {self.offset} into M_{self.target}"
            )

    @property
    def source_dim(self) -> int:
        return self.source

    @property
    def target_dim(self) -> int:
        return self.target

    @property
    def injective(self) -> bool:
        return True

    def map(self, a: CMatrix) -> CMatrix:
        out = np.zeros((self.target, self.target), dtype=np.complex128)
        end = self.offset + self.source
        out[self.offset:end, self.offset:end] = a
        return out

    def describe(self) -> dict:
        return {**super().describe(), "offset": self.offset}


@dataclass(frozen=True, eq=False)
class IdentityMorphism(StarMorphism):
    dim: int
    kind: ClassVar[str] = "identity"

    @property
    def source_dim(self) -> int:
        return self.dim

    @property
    def target_dim(self) -> int:
        return self.dim

    @property
    def injective(self) -> bool:
        return True

    def map(self, a: CMatrix) -> CMatrix:
        return np.array(a, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ZeroMorphism(StarMorphism):
    source: int
    target: int
    kind: ClassVar[str] = "zero"

    @property
    def source_dim(self) -> int:
        return self.source

    @property
    def target_dim(self) -> int:
        return self.target

    @property
    def injective(self) -> bool:
        return False

    def map(self, a: CMatrix) -> CMatrix:
        return np.zeros((self.target, self.target), dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class TransposeMap(StarMorphism):
    """``a -> a^T``: linear, *-preserving and bijective but anti-multiplicative.

    Not a morphism of C*-algebras; it exists to exercise failing checks.
    """
    dim: int
    kind: ClassVar[str] = "transpose"

    @property
    def source_dim(self) -> int:
        return self.dim

    @property
    def target_dim(self) -> int:
        return self.dim

    @property
    def injective(self) -> bool:
        return True

    def map(self, a: CMatrix) -> CMatrix:
        return np.array(np.transpose(a), dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ComposedMorphism(StarMorphism):
    """``outer . inner``."""
    outer: StarMorphism
    inner: StarMorphism
    kind: ClassVar[str] = "composed"

    def __post_init__(self):
        if self.inner.target_dim != self.outer.source_dim:
            raise DimensionMismatch(
                f"cannot compose M_{self.outer.source_dim} <- M_{self.inner.target_dim}"
            )

    @property
    def source_dim(self) -> int:
        return self.inner.source_dim

    @property
    def target_dim(self) -> int:
        return self.outer.target_dim

    @property
    def injective(self) -> bool:
        return self.outer.injective and self.inner.injective

    def map(self, a: CMatrix) -> CMatrix:
        return self.outer.map(self.inner.map(a))

    def describe(self) -> dict:
        return {**super().describe(), "outer": self.outer.describe(), "inner": self.inner.describe()}


def apply_morphism(phi: StarMorphism, a: AlgebraElement) -> AlgebraElement:
    """Evaluate ``phi(a)``.

    Raises:
        DimensionMismatch: If ``a`` does not live in the source algebra.
    """
    if a.algebra_dim != phi.source_dim:
        raise DimensionMismatch(f"{phi.kind} expects M_{phi.source_dim}, got M_{a.algebra_dim}")
    return AlgebraElement(phi.map(a.value))


def compose_star(psi: StarMorphism, phi: StarMorphism) -> StarMorphism:
    """``psi . phi``, collapsing the kinds that stay closed under composition."""
    if phi.target_dim != psi.source_dim:
        raise DimensionMismatch(f"cannot compose M_{psi.source_dim} <- M_{phi.target_dim}")
    if isinstance(psi, ZeroMorphism) or isinstance(phi, ZeroMorphism):
        return ZeroMorphism(phi.source_dim, psi.target_dim)
    if isinstance(psi, IdentityMorphism):
        return phi
    if isinstance(phi, IdentityMorphism):
        return psi
    if isinstance(psi, AdUnitary) and isinstance(phi, AdUnitary):
        return AdUnitary(psi.unitary @ phi.unitary)
    return ComposedMorphism(psi, phi)


def image_rank(phi: StarMorphism, tol: float = DEFAULT_TOLERANCES.rank) -> int:
    """``rank_span({phi(E_pq)})`` over the matrix units of the source."""
    n = phi.source_dim
    return rank_span([phi.map(unit) for unit in matrix_units(n, n)], tol)


def is_injective(phi: StarMorphism) -> bool:
    """Structural injectivity, cross-checked by the rank of the images of the matrix units."""
    structural = phi.injective
    n = phi.source_dim
    if n <= RANK_CROSSCHECK_MAX_DIM:
        rank = image_rank(phi)
        if (rank == n * n) != structural:
            logger.warning(f"{phi.kind}: structural injectivity {structural} disagrees with rank {rank}/{n * n}")
    return structural


def is_surjective(phi: StarMorphism, tol: float = DEFAULT_TOLERANCES.rank) -> bool:
    """Whether the images of the matrix units span all of ``M_m``."""
    return image_rank(phi, tol) == phi.target_dim ** 2
