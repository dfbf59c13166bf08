"""Module dynamical systems ``alpha_t = e^{itT}`` and the induced algebra flow."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import DimensionMismatch, NotHermitian, NotUnitary, PreconditionViolated, SpaceMismatch
from src.linalg import CMatrix, EigenDecomposition, adjoint, as_cmatrix, herm_eig, op_norm
from src.algebra import AdUnitary, AlgebraElement, unitarity_defect
from src.algebra.morphisms import UNITARY_TOL
from src.hilbert import ModuleElement, ModuleSpace
from src.morphisms import LeftMult

logger = logging.getLogger(__name__)

# Default central-difference ladder: h0 halved six times.
DEFAULT_H0 = 1e-2
DEFAULT_LEVELS = 7

# Successive error ratios of a second-order scheme must land in this window.
RATIO_WINDOW = (3.5, 4.5)

# Ratios are only judged while the error exceeds this multiple of the floor.
FLOOR_MARGIN = 100.0


@dataclass(frozen=True, eq=False)
class DynamicalSystem:
    """A bounded Hermitian generator ``T`` acting on ``space``.

    The module flow is ``alpha_t(x) = e^{itT} x`` and the induced
    C*-dynamical system is ``alpha'_t = Ad(e^{itT})``. One eigendecomposition
    of ``T`` serves every ``t``.
    """
    space: ModuleSpace
    generator: CMatrix

    def __post_init__(self):
        t = as_cmatrix(self.generator)
        n = self.space.algebra_dim
        if t.shape != (n, n):
            raise DimensionMismatch(f"generator of shape {t.shape} does not act on {self.space}")
        defect = op_norm(t - adjoint(t))
        if defect > DEFAULT_TOLERANCES.herm * op_norm(t):
            raise NotHermitian(f"||T - T*|| = {defect:.3e}; generators must be Hermitian")
        object.__setattr__(self, "generator", t)
        spot = unitarity_defect(self.propagator(1.0))
        if spot > UNITARY_TOL:
            raise NotUnitary(f"e^{{iT}} has unitarity defect {spot:.3e}")

    @cached_property
    def eigen(self) -> EigenDecomposition:
        return herm_eig(self.generator)

    @property
    def generator_norm(self) -> float:
        return op_norm(self.generator)

    def propagator(self, t: float) -> CMatrix:
        """The unitary ``e^{itT}``."""
        return self.eigen.exponentiate(t)

    def describe(self) -> dict:
        return {
            "algebra_dim": self.space.algebra_dim,
            "module_cols": self.space.module_cols,
            "generator_norm": self.generator_norm,
        }


def _check_space(system: DynamicalSystem, x: ModuleElement) -> None:
    if x.space != system.space:
        raise SpaceMismatch(f"{x.space} is not the space of this system ({system.space})")


def _check_algebra(system: DynamicalSystem, a: AlgebraElement) -> None:
    if a.algebra_dim != system.space.algebra_dim:
        raise DimensionMismatch(f"M_{a.algebra_dim} is not the algebra of {system.space}")


def evolve(system: DynamicalSystem, t: float, x: ModuleElement) -> ModuleElement:
    """``alpha_t(x) = e^{itT} x``.

    Raises:
        SpaceMismatch: If ``x`` is not in the system's space.
    """
    _check_space(system, x)
    return ModuleElement(system.space, system.propagator(t) @ x.value)


def induced_algebra_flow(system: DynamicalSystem, t: float, a: AlgebraElement) -> AlgebraElement:
    """``alpha'_t(a) = e^{itT} a e^{-itT}``."""
    _check_algebra(system, a)
    u = system.propagator(t)
    return AlgebraElement(u @ a.value @ adjoint(u))


def flow_morphism(system: DynamicalSystem, t: float) -> LeftMult:
    """``alpha_t`` as a unitary module operator covering ``Ad(e^{itT})``."""
    return LeftMult(system.propagator(t), system.space)


def induced_star_morphism(system: DynamicalSystem, t: float) -> AdUnitary:
    """``alpha'_t`` as a *-automorphism of ``M_n``."""
    return AdUnitary(system.propagator(t))


def generator_exact(system: DynamicalSystem, x: ModuleElement) -> ModuleElement:
    """``delta(x) = i T x``."""
    _check_space(system, x)
    return ModuleElement(system.space, 1j * (system.generator @ x.value))


def algebra_generator_exact(system: DynamicalSystem, a: AlgebraElement) -> AlgebraElement:
    """``delta'(a) = i (T a - a T)``."""
    _check_algebra(system, a)
    t = system.generator
    return AlgebraElement(1j * (t @ a.value - a.value @ t))


def _check_step(h: float) -> None:
    if not h > 0:
        raise PreconditionViolated(f"finite-difference step must be positive, got {h}")


def estimate_generator(system: DynamicalSystem, x: ModuleElement, h: float) -> ModuleElement:
    """Central difference ``(alpha_h(x) - alpha_{-h}(x)) / 2h``."""
    _check_step(h)
    _check_space(system, x)
    forward = system.propagator(h) @ x.value
    backward = system.propagator(-h) @ x.value
    return ModuleElement(system.space, (forward - backward) / (2.0 * h))


def estimate_algebra_generator(system: DynamicalSystem, a: AlgebraElement, h: float) -> AlgebraElement:
    """Central difference of the induced flow at ``a``."""
    _check_step(h)
    forward = induced_algebra_flow(system, h, a).value
    backward = induced_algebra_flow(system, -h, a).value
    return AlgebraElement((forward - backward) / (2.0 * h))


@dataclass
class ConvergenceLadder:
    """Errors of a central-difference estimate at ``h0 / 2^j``.

    ``ratios[j]`` is ``error[j] / error[j + 1]``, or None when both errors are
    exactly zero (the estimate is exact there).
    """
    steps: list[tuple[float, float]]
    floor: float
    ratios: list[Optional[float]] = field(init=False)

    def __post_init__(self):
        self.ratios = []
        for (_, coarse), (_, fine) in zip(self.steps, self.steps[1:]):
            if coarse == 0.0 and fine == 0.0:
                self.ratios.append(None)
            else:
                self.ratios.append(coarse / fine if fine > 0 else float("inf"))

    @property
    def exact(self) -> bool:
        return all(error == 0.0 for _, error in self.steps)

    def judged_ratios(self) -> list[float]:
        """Ratios whose finer error is still above the roundoff floor margin."""
        return [
            ratio
            for ratio, (_, fine) in zip(self.ratios, self.steps[1:])
            if ratio is not None and fine > FLOOR_MARGIN * self.floor
        ]

    def is_second_order(self, window: tuple[float, float] = RATIO_WINDOW) -> bool:
        if self.exact:
            return True
        low, high = window
        return all(low <= ratio <= high for ratio in self.judged_ratios())

    def to_dict(self) -> dict:
        return {
            "steps": [[h, error] for h, error in self.steps],
            "ratios": self.ratios,
            "floor": self.floor,
            "exact": self.exact,
        }


def _check_ladder(h0: float, levels: int) -> None:
    _check_step(h0)
    if levels < 2:
        raise PreconditionViolated(f"a convergence ladder needs at least 2 levels, got {levels}")


def roundoff_floor(generator_norm: float, value_norm: float) -> float:
    """``100 eps ||T||^2 ||x||``."""
    return 100.0 * np.finfo(np.float64).eps * generator_norm ** 2 * value_norm


def convergence_order(
    system: DynamicalSystem,
    x: ModuleElement,
    h0: float = DEFAULT_H0,
    levels: int = DEFAULT_LEVELS,
) -> ConvergenceLadder:
    """Error of ``estimate_generator`` against ``i T x`` on a halving ladder."""
    _check_ladder(h0, levels)
    exact = generator_exact(system, x).value
    steps = []
    for j in range(levels):
        h = h0 / 2 ** j
        error = op_norm(estimate_generator(system, x, h).value - exact)
        steps.append((h, error))
    return ConvergenceLadder(steps, roundoff_floor(system.generator_norm, op_norm(x.value)))


def algebra_convergence_order(
    system: DynamicalSystem,
    a: AlgebraElement,
    h0: float = DEFAULT_H0,
    levels: int = DEFAULT_LEVELS,
) -> ConvergenceLadder:
    """Error of ``estimate_algebra_generator`` against ``i [T, a]``."""
    _check_ladder(h0, levels)
    exact = algebra_generator_exact(system, a).value
    steps = []
    for j in range(levels):
        h = h0 / 2 ** j
        error = op_norm(estimate_algebra_generator(system, a, h).value - exact)
        steps.append((h, error))
    return ConvergenceLadder(steps, roundoff_floor(2.0 * system.generator_norm, a.norm))


def random_system(space: ModuleSpace, rng) -> DynamicalSystem:
    """A system with a sampled Hermitian generator."""
    return DynamicalSystem(space, rng.hermitian(space.algebra_dim))


def zero_system(space: ModuleSpace) -> DynamicalSystem:
    n = space.algebra_dim
    return DynamicalSystem(space, np.zeros((n, n), dtype=np.complex128))
