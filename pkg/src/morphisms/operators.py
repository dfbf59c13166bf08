"""phi-morphisms between module spaces."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from src.errors import DimensionMismatch, NotUnitary, PreconditionViolated, SpaceMismatch
from src.linalg import CMatrix, adjoint, as_cmatrix
from src.algebra import (
    AdUnitary,
    BlockEmbed,
    IdentityMorphism,
    StarMorphism,
    ZeroMorphism,
    compose_star,
    unitarity_defect,
)
from src.algebra.morphisms import UNITARY_TOL
from src.hilbert import ModuleElement, ModuleSpace


class ModuleMorphism(ABC):
    """A map ``Phi: M -> N`` paired with the *-morphism ``phi`` it claims to cover.

    Subclasses provide ``source``, ``target`` and ``reference`` (the ``phi``).
    """

    kind: ClassVar[str] = "abstract"
    source: ModuleSpace
    target: ModuleSpace
    reference: StarMorphism

    @abstractmethod
    def map(self, value: CMatrix) -> CMatrix:
        """Evaluate on a raw source-shaped matrix."""
        ...

    def matrix(self) -> CMatrix:
        """The map on row-major vectorized elements (``dim N x dim M``)."""
        columns = [self.map(unit).reshape(-1) for unit in self.source.generators()]
        return np.column_stack(columns)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "source": list(self.source.shape),
            "target": list(self.target.shape),
            "reference": self.reference.describe(),
        }


@dataclass(frozen=True, eq=False)
class LeftMult(ModuleMorphism):
    """``x -> U x`` for unitary ``U``, covering ``Ad U``."""
    unitary: CMatrix
    space: ModuleSpace
    reference: AdUnitary = field(init=False)
    kind: ClassVar[str] = "left_mult"

    def __post_init__(self):
        u = as_cmatrix(self.unitary)
        if u.shape != (self.space.algebra_dim, self.space.algebra_dim):
            raise DimensionMismatch(f"unitary of shape {u.shape} does not act on {self.space}")
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "reference", AdUnitary(u))

    @property
    def source(self) -> ModuleSpace:
        return self.space

    @property
    def target(self) -> ModuleSpace:
        return self.space

    def map(self, value: CMatrix) -> CMatrix:
        return self.unitary @ value


@dataclass(frozen=True, eq=False)
class LinearModuleMap(ModuleMorphism):
    """An arbitrary complex-linear map on vectorized elements.

    Carries no guarantee that it is a phi-morphism for its ``reference``;
    used for counterexamples and as the fallback representation of
    composites.
    """
    operator: CMatrix
    source: ModuleSpace
    target: ModuleSpace
    reference: StarMorphism
    kind: ClassVar[str] = "linear"

    def __post_init__(self):
        operator = as_cmatrix(self.operator)
        if operator.shape != (self.target.dimension, self.source.dimension):
            raise DimensionMismatch(
                f"operator of shape {operator.shape} does not map {self.source} to {self.target}"
            )
        object.__setattr__(self, "operator", operator)

    @classmethod
    def left_multiplication(cls, a: CMatrix, space: ModuleSpace, reference: StarMorphism) -> "LinearModuleMap":
        """``x -> a x`` for any square ``a`` (no unitarity required)."""
        a = as_cmatrix(a)
        return cls(np.kron(a, np.eye(space.module_cols)), space, space, reference)

    def map(self, value: CMatrix) -> CMatrix:
        return (self.operator @ np.asarray(value).reshape(-1)).reshape(self.target.shape)

    def matrix(self) -> CMatrix:
        return self.operator


@dataclass(frozen=True, eq=False)
class IdentityModuleMap(ModuleMorphism):
    space: ModuleSpace
    reference: IdentityMorphism = field(init=False)
    kind: ClassVar[str] = "identity"

    def __post_init__(self):
        object.__setattr__(self, "reference", IdentityMorphism(self.space.algebra_dim))

    @property
    def source(self) -> ModuleSpace:
        return self.space

    @property
    def target(self) -> ModuleSpace:
        return self.space

    def map(self, value: CMatrix) -> CMatrix:
        return np.array(value, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ZeroModuleMap(ModuleMorphism):
    source: ModuleSpace
    target: ModuleSpace
    reference: ZeroMorphism = field(init=False)
    kind: ClassVar[str] = "zero"

    def __post_init__(self):
        object.__setattr__(self, "reference", ZeroMorphism(self.source.algebra_dim, self.target.algebra_dim))

    def map(self, value: CMatrix) -> CMatrix:
        return np.zeros(self.target.shape, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class BlockInclusion(ModuleMorphism):
    """``M_{n x k} -> M_{m x k}``: rows placed at ``offset``, covering ``BlockEmbed``."""
    source: ModuleSpace
    target: ModuleSpace
    offset: int = 0
    reference: BlockEmbed = field(init=False)
    kind: ClassVar[str] = "block_inclusion"

    def __post_init__(self):
        if self.source.module_cols != self.target.module_cols:
            raise DimensionMismatch(f"cannot include {self.source} into {self.target}: column counts differ")
        object.__setattr__(
            self, "reference", BlockEmbed(self.source.algebra_dim, self.target.algebra_dim, self.offset)
        )

    def map(self, value: CMatrix) -> CMatrix:
        out = np.zeros(self.target.shape, dtype=np.complex128)
        out[self.offset:self.offset + self.source.algebra_dim, :] = value
        return out


def apply(phi_map: ModuleMorphism, x: ModuleElement) -> ModuleElement:
    """Evaluate ``Phi(x)``.

    Raises:
        SpaceMismatch: If ``x`` is not in the source space.
    """
    if x.space != phi_map.source:
        raise SpaceMismatch(f"{phi_map.kind} maps from {phi_map.source}, got an element of {x.space}")
    return ModuleElement(phi_map.target, phi_map.map(x.value))


def compose(psi_map: ModuleMorphism, phi_map: ModuleMorphism) -> ModuleMorphism:
    """``Psi Phi``, a ``psi phi``-morphism whenever both factors are morphisms.

    Raises:
        SpaceMismatch: If ``Phi`` does not land in the source of ``Psi``.
    """
    if phi_map.target != psi_map.source:
        raise SpaceMismatch(f"cannot compose {psi_map.source} <- {phi_map.target}")
    if isinstance(psi_map, LeftMult) and isinstance(phi_map, LeftMult):
        return LeftMult(psi_map.unitary @ phi_map.unitary, phi_map.space)
    if isinstance(psi_map, IdentityModuleMap):
        return phi_map
    if isinstance(phi_map, IdentityModuleMap):
        return psi_map
    if isinstance(psi_map, ZeroModuleMap) or isinstance(phi_map, ZeroModuleMap):
        return ZeroModuleMap(phi_map.source, psi_map.target)
    return LinearModuleMap(
        psi_map.matrix() @ phi_map.matrix(),
        phi_map.source,
        psi_map.target,
        compose_star(psi_map.reference, phi_map.reference),
    )


def inverse(phi_map: ModuleMorphism) -> ModuleMorphism:
    """Inverse of a unitary module operator (``LeftMult(U*)``)."""
    if isinstance(phi_map, LeftMult):
        return LeftMult(adjoint(phi_map.unitary), phi_map.space)
    if isinstance(phi_map, IdentityModuleMap):
        return phi_map
    raise PreconditionViolated(f"{phi_map.kind} has no structural inverse")


def unitary_from_operator(u: CMatrix, space: ModuleSpace) -> LeftMult:
    """The module operator ``x -> U x`` of a unitary Hilbert-space operator ``U``.

    ``U`` is unitary on ``C^n`` exactly when this is a unitary module operator.

    Raises:
        NotUnitary: If ``U`` is not unitary.
    """
    u = as_cmatrix(u)
    if u.shape[0] != u.shape[1] or unitarity_defect(u) > UNITARY_TOL:
        raise NotUnitary("operator is not unitary")
    return LeftMult(u, space)
