"""Checkers for dynamical systems and the generator identities they induce."""

import logging
from typing import Optional, Sequence

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.errors import PreconditionViolated
from src.linalg import case_rng, op_norm
from src.algebra import AlgebraElement
from src.hilbert import ModuleElement, annihilator_defect
from src.derivations import CommutatorMap, LeftMultGenerator, NoConsistentD, check_generalized_leibniz
from src.derivations import commutator_derivation, recover_d
from src.report import CaseTracker, CheckCase, CheckReport, scaled
from .system import (
    DynamicalSystem,
    estimate_algebra_generator,
    estimate_generator,
    evolve,
    induced_algebra_flow,
)

logger = logging.getLogger(__name__)

# Times are sampled from [-T_RANGE, T_RANGE].
T_RANGE = 10.0

# Step of the finite-difference layer of the generator identity.
GENERATOR_STEP = 1e-4

DEFAULT_SCHEDULE = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
MIN_SCHEDULE_STEP = 1e-8

# Deviations may grow by this much between schedule points.
MONOTONE_SLACK = 1e-12


def _log_failures(report: CheckReport, label: str) -> CheckReport:
    for case in report.cases:
        if not case.passed:
            logger.debug(f"{label}: {case.name} residual {case.residual:.3e} > {case.tolerance:.1e}")
    return report


def _check_trials(trials: int) -> None:
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")


def check_group_law(
    system: DynamicalSystem,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.group_law,
) -> CheckReport:
    """Check ``alpha_{t+s} = alpha_t alpha_s`` on both the module and the algebra.

    The first sample is ``t = s = 0``; the ``inverse`` case pairs every ``t``
    with ``s = -t``.
    """
    _check_trials(trials)
    rng = case_rng(seed, "group_law")
    n, k = system.space.shape
    params = {**system.describe(), "trials": trials, **rng.provenance()}
    module_law = CaseTracker("module", tol, params)
    algebra_law = CaseTracker("algebra", tol, params)
    inverse = CaseTracker("inverse", tol, params)

    for trial in range(trials):
        if trial == 0:
            t, s = 0.0, 0.0
        else:
            t, s = rng.uniform(-T_RANGE, T_RANGE), rng.uniform(-T_RANGE, T_RANGE)
        x = ModuleElement(system.space, rng.complex_matrix(n, k))
        a = AlgebraElement(rng.complex_matrix(n, n))

        joint = evolve(system, t + s, x).value
        stepped = evolve(system, t, evolve(system, s, x)).value
        module_law.observe(scaled(op_norm(joint - stepped), op_norm(x.value)), t=t, s=s, x=x.value)

        joint = induced_algebra_flow(system, t + s, a).value
        stepped = induced_algebra_flow(system, t, induced_algebra_flow(system, s, a)).value
        algebra_law.observe(scaled(op_norm(joint - stepped), a.norm), t=t, s=s, a=a.value)

        back = evolve(system, t, evolve(system, -t, x)).value
        inverse.observe(scaled(op_norm(back - x.value), op_norm(x.value)), t=t, x=x.value)

    cases = [module_law.case(), algebra_law.case(), inverse.case()]
    return _log_failures(CheckReport(suite="group_law", cases=cases), "group_law")


def _check_schedule(schedule: Sequence[float]) -> None:
    if not schedule:
        raise PreconditionViolated("strong-continuity schedule is empty")
    if any(t < MIN_SCHEDULE_STEP for t in schedule):
        raise PreconditionViolated(f"schedule values must be >= {MIN_SCHEDULE_STEP}")
    if any(later >= earlier for earlier, later in zip(schedule, schedule[1:])):
        raise PreconditionViolated("schedule must be strictly decreasing")


def check_strong_continuity(
    system: DynamicalSystem,
    x: ModuleElement,
    schedule: Sequence[float] = DEFAULT_SCHEDULE,
    a: Optional[AlgebraElement] = None,
    tol: float = DEFAULT_TOLERANCES.continuity,
) -> CheckReport:
    """Check ``alpha_t(x) -> x`` along a decreasing ``schedule`` of times.

    Module deviations must obey ``||alpha_t x - x|| <= |t| ||T|| ||x||`` and
    shrink along the schedule. With ``a`` given, the induced flow must obey
    ``||alpha'_t(a) - a|| <= 2 |t| ||T|| ||a||`` and the triangle estimate
    that carries continuity of ``alpha'_t(a) x`` is recorded. Bound
    violations are reported as the excess over the bound, scaled.

    Raises:
        PreconditionViolated: If the schedule is empty, not strictly
            decreasing, or reaches below ``1e-8``.
    """
    _check_schedule(schedule)
    norm_t = system.generator_norm
    norm_x = op_norm(x.value)
    params = {**system.describe(), "schedule": list(schedule)}

    module_bound = CaseTracker("module_bound", tol, params)
    module_monotone = CaseTracker("module_monotone", MONOTONE_SLACK, params)
    deviations = []
    for t in schedule:
        deviation = op_norm(evolve(system, t, x).value - x.value)
        module_bound.observe(scaled(max(deviation - abs(t) * norm_t * norm_x, 0.0), norm_x), t=t)
        deviations.append(deviation)
    for t, (earlier, later) in zip(schedule[1:], zip(deviations, deviations[1:])):
        module_monotone.observe(max(later - earlier, 0.0), t=t)
    module_bound.params["deviations"] = deviations
    cases = [module_bound.case(), module_monotone.case()]

    if a is not None:
        cases.extend(_algebra_continuity(system, x, a, schedule, tol, params))

    return _log_failures(CheckReport(suite="strong_continuity", cases=cases), "strong_continuity")


def _algebra_continuity(system, x, a, schedule, tol, params) -> list[CheckCase]:
    norm_t = system.generator_norm
    algebra_bound = CaseTracker("algebra_bound", tol, params)
    algebra_monotone = CaseTracker("algebra_monotone", MONOTONE_SLACK, params)
    triangle = CaseTracker("action_triangle", tol, params)
    previous = None
    for t in schedule:
        moved = induced_algebra_flow(system, t, a).value
        deviation = op_norm(moved - a.value)
        algebra_bound.observe(scaled(max(deviation - 2.0 * abs(t) * norm_t * a.norm, 0.0), a.norm), t=t)
        if previous is not None:
            algebra_monotone.observe(max(deviation - previous, 0.0), t=t)
        previous = deviation

        flowed_x = evolve(system, t, x).value
        lhs = op_norm(moved @ x.value - a.value @ x.value)
        rhs = op_norm(moved @ x.value - moved @ flowed_x) + op_norm(moved @ flowed_x - a.value @ x.value)
        triangle.observe(scaled(max(lhs - rhs, 0.0), a.norm * op_norm(x.value)), t=t)
    return [algebra_bound.case(), algebra_monotone.case(), triangle.case()]


def check_flow_covariance(
    system: DynamicalSystem,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.phi_morphism,
) -> CheckReport:
    """Check ``<alpha_t x, alpha_t y> = alpha'_t(<x, y>)`` and ``alpha_t(ax) = alpha'_t(a) alpha_t(x)``.

    Also records norm conservation ``||alpha_t x|| = ||x||``.
    """
    _check_trials(trials)
    rng = case_rng(seed, "flow_covariance")
    space = system.space
    n, k = space.shape
    params = {**system.describe(), "trials": trials, **rng.provenance()}
    inner = CaseTracker("inner_product", tol, params)
    action = CaseTracker("module_action", tol, params)
    norm = CaseTracker("norm_conserved", tol, params)

    for _ in range(trials):
        t = rng.uniform(-T_RANGE, T_RANGE)
        x = ModuleElement(space, rng.complex_matrix(n, k))
        y = ModuleElement(space, rng.complex_matrix(n, k))
        a = AlgebraElement(rng.complex_matrix(n, n))
        ax, ay = evolve(system, t, x).value, evolve(system, t, y).value

        flowed_inner = induced_algebra_flow(system, t, AlgebraElement(space.inner(x.value, y.value))).value
        residual = op_norm(space.inner(ax, ay) - flowed_inner)
        inner.observe(scaled(residual, op_norm(x.value) * op_norm(y.value)), t=t, x=x.value, y=y.value)

        moved = evolve(system, t, ModuleElement(space, a.value @ x.value)).value
        residual = op_norm(moved - induced_algebra_flow(system, t, a).value @ ax)
        action.observe(scaled(residual, a.norm * op_norm(x.value)), t=t, a=a.value, x=x.value)

        norm.observe(scaled(abs(op_norm(ax) - op_norm(x.value)), op_norm(x.value)), t=t, x=x.value)

    cases = [inner.case(), action.case(), norm.case()]
    return _log_failures(CheckReport(suite="flow_covariance", cases=cases), "flow_covariance")


def check_identity_at_zero(
    system: DynamicalSystem,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.group_law,
) -> CheckReport:
    """Check ``alpha_0 = I`` and ``alpha'_0 = I``.

    ``alpha'_0(a) - a`` is measured through its annihilator defect: it acts as
    zero on every module generator exactly when it vanishes.
    """
    _check_trials(trials)
    rng = case_rng(seed, "identity_at_zero")
    space = system.space
    n, k = space.shape
    params = {**system.describe(), "trials": trials, **rng.provenance()}
    module_identity = CaseTracker("module", tol, params)
    algebra_identity = CaseTracker("algebra", tol, params)

    for _ in range(trials):
        x = ModuleElement(space, rng.complex_matrix(n, k))
        a = AlgebraElement(rng.complex_matrix(n, n))
        residual = op_norm(evolve(system, 0.0, x).value - x.value)
        module_identity.observe(scaled(residual, op_norm(x.value)), x=x.value)
        difference = AlgebraElement(induced_algebra_flow(system, 0.0, a).value - a.value)
        algebra_identity.observe(scaled(annihilator_defect(difference, space), a.norm), a=a.value)

    cases = [module_identity.case(), algebra_identity.case()]
    return _log_failures(CheckReport(suite="identity_at_zero", cases=cases), "identity_at_zero")


def check_generator_leibniz(
    system: DynamicalSystem,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    h: float = GENERATOR_STEP,
) -> CheckReport:
    """Check that the flow's generators satisfy ``delta(ax) = a delta(x) + d(a) x``.

    Cases:
        exact: ``delta = iT``, ``d = i[T, .]`` evaluated directly, residual
            scaled by ``1 + ||a|| ||x|| ||T||`` (tolerance ``theorem43_exact``).
        numerical: ``delta`` and ``d`` replaced by central differences of
            the two flows at step ``h``, scaled by
            ``1 + ||a|| ||x|| max(1, ||T||)^3`` (tolerance ``theorem43``).
        generalized_leibniz/*: the same pair built by ``commutator_derivation``
            and passed through ``check_generalized_leibniz``.
    """
    _check_trials(trials)
    rng = case_rng(seed, "generator_leibniz")
    space = system.space
    n, k = space.shape
    t_matrix = system.generator
    norm_t = system.generator_norm
    params = {**system.describe(), "trials": trials, "h": h, **rng.provenance()}
    exact = CaseTracker("exact", tol.theorem43_exact, params)
    numerical = CaseTracker("numerical", tol.theorem43, params)

    for _ in range(trials):
        a = AlgebraElement(rng.complex_matrix(n, n))
        x = ModuleElement(space, rng.complex_matrix(n, k))
        ax = ModuleElement(space, a.value @ x.value)
        size = a.norm * op_norm(x.value)

        residual = op_norm(
            1j * (t_matrix @ ax.value)
            - a.value @ (1j * (t_matrix @ x.value))
            - 1j * (t_matrix @ a.value - a.value @ t_matrix) @ x.value
        )
        exact.observe(residual / (1.0 + size * norm_t), a=a.value, x=x.value)

        residual = op_norm(
            estimate_generator(system, ax, h).value
            - a.value @ estimate_generator(system, x, h).value
            - estimate_algebra_generator(system, a, h).value @ x.value
        )
        numerical.observe(residual / (1.0 + size * max(1.0, norm_t) ** 3), a=a.value, x=x.value)

    report = CheckReport(suite="generator_leibniz", cases=[exact.case(), numerical.case()])
    gd = commutator_derivation(t_matrix, space)
    report.extend(check_generalized_leibniz(gd, trials, seed, tol.leibniz), prefix="generalized_leibniz")
    return _log_failures(report, "generator_leibniz")


def check_recovered_derivation(
    system: DynamicalSystem,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> CheckReport:
    """Recover ``d`` from ``delta = iT`` and compare it with ``i [T, .]`` entrywise."""
    space = system.space
    recovered = recover_d(LeftMultGenerator(system.generator, space.module_cols), space, tol.recover)
    params = system.describe()
    if isinstance(recovered, NoConsistentD):
        case = CheckCase("recovered_d", float("inf"), tol.leibniz, params, {"basis_index": list(recovered.basis_index)})
    else:
        expected = CommutatorMap(system.generator).matrix()
        residual = float(np.max(np.abs(recovered.matrix() - expected)))
        case = CheckCase("recovered_d", residual, tol.leibniz, params)
    return _log_failures(CheckReport(suite="recovered_derivation", cases=[case]), "recovered_derivation")
