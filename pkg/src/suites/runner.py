"""Verification suites and the runner that executes them."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.config import Suite, SuiteConfig
from src.linalg import case_rng, derive_seed, op_norm
from src.algebra import AlgebraElement, IdentityMorphism, check_star_homomorphism
from src.hilbert import (
    ModuleElement,
    ModuleSpace,
    check_module_axioms,
    check_norm_inequalities,
    inner_product_span,
)
from src.hilbert.space import FULLNESS_ASSERT_MAX_DIM
from src.morphisms import (
    BlockInclusion,
    IdentityModuleMap,
    LeftMult,
    LinearModuleMap,
    ModuleMorphism,
    ZeroModuleMap,
    check_derived_linearity,
    check_image_inner_products,
    check_isometry,
    check_phi_morphism,
    check_unitary,
    compose,
    inverse,
)
from src.derivations import (
    GeneralizedDerivation,
    check_generalized_leibniz,
    check_induced_d_is_derivation,
    check_jacobi,
    check_linearity,
    commutator_derivation,
    lie_bracket,
    linear_combination,
)
from src.dynamics import (
    DynamicalSystem,
    algebra_convergence_order,
    check_flow_covariance,
    check_generator_leibniz,
    check_group_law,
    check_identity_at_zero,
    check_recovered_derivation,
    check_strong_continuity,
    convergence_order,
    estimate_generator,
    generator_exact,
    induced_star_morphism,
)
from src.dynamics.system import RATIO_WINDOW
from src.report import CheckCase, CheckReport

logger = logging.getLogger(__name__)

# Finite-difference step of the generator-estimate case.
ESTIMATE_STEP = 1e-3

# Induced automorphisms are spot-checked at this many random times.
AUTOMORPHISM_TIMES = 3

# Rank and recovery cases work on n^2-dimensional spans; skipped above this size.
EXHAUSTIVE_MAX_DIM = 8


@dataclass
class SuiteJob:
    """One named unit of work; ``run`` receives the seed derived from the name."""
    name: str
    run: Callable[[int], CheckReport]


SuiteBuilder = Callable[[SuiteConfig], list[SuiteJob]]

SUITES: dict[Suite, SuiteBuilder] = {}


def register(suite: Suite) -> Callable[[SuiteBuilder], SuiteBuilder]:
    """Register a job builder for ``suite``."""
    def decorator(builder: SuiteBuilder) -> SuiteBuilder:
        SUITES[suite] = builder
        return builder
    return decorator


def _space(config: SuiteConfig) -> ModuleSpace:
    return ModuleSpace(config.algebra_dim, config.module_cols)


def _single(suite: str, case: CheckCase) -> CheckReport:
    return CheckReport(suite=suite, cases=[case])


def _agreement(name: str, report: CheckReport, first: str, second: str) -> CheckReport:
    """Zero residual when two cases of ``report`` pass or fail together."""
    left, right = report.case(first), report.case(second)
    params = {first: left.passed, second: right.passed}
    return _single(name, CheckCase(name, 0.0 if left.passed == right.passed else 1.0, 0.0, params))


def _expect_failure(name: str, report: CheckReport, case_name: str) -> CheckReport:
    """Zero residual when ``case_name`` fails, as it must for a counterexample."""
    case = report.case(case_name)
    return _single(name, CheckCase(name, 0.0 if not case.passed else 1.0, 0.0, {"residual": case.residual}))


@register(Suite.MODULE_AXIOMS)
def module_axiom_jobs(config: SuiteConfig) -> list[SuiteJob]:
    tol = config.tolerances
    space = _space(config)

    def fullness(seed: int) -> CheckReport:
        n = space.algebra_dim
        deficiency = n * n - inner_product_span(space)
        return _single("fullness", CheckCase("fullness", float(deficiency), 0.0, {"algebra_dim": n}))

    jobs = [
        SuiteJob("axioms", lambda seed: check_module_axioms(space, config.trials, seed, tol.module_axioms)),
        SuiteJob(
            "norm_inequalities",
            lambda seed: check_norm_inequalities(space, config.trials, seed, tol.module_axioms),
        ),
    ]
    if space.algebra_dim <= FULLNESS_ASSERT_MAX_DIM:
        jobs.append(SuiteJob("fullness", fullness))
    return jobs


def _sample_morphisms(space: ModuleSpace, seed: int) -> dict[str, ModuleMorphism]:
    rng = case_rng(seed, "morphisms")
    n, k = space.shape
    left = LeftMult(rng.unitary(n), space)
    right = LeftMult(rng.unitary(n), space)
    return {
        "left_mult": left,
        "identity": IdentityModuleMap(space),
        "zero": ZeroModuleMap(space, space),
        "block_inclusion": BlockInclusion(space, ModuleSpace(n + 1, k), offset=1),
        "composite": compose(right, left),
    }


def _projection_map(space: ModuleSpace) -> LinearModuleMap:
    """``x -> E_11 x``, claimed to cover the identity: a counterexample for ``n > 1``."""
    n = space.algebra_dim
    projection = np.zeros((n, n), dtype=np.complex128)
    projection[0, 0] = 1.0
    return LinearModuleMap.left_multiplication(projection, space, IdentityMorphism(n))


@register(Suite.MORPHISM)
def morphism_jobs(config: SuiteConfig) -> list[SuiteJob]:
    tol = config.tolerances
    space = _space(config)
    jobs = []

    def kind_jobs(kind: str) -> list[SuiteJob]:
        def phi_morphism(seed: int) -> CheckReport:
            phi_map = _sample_morphisms(space, seed)[kind]
            report = check_phi_morphism(phi_map, config.trials, seed, tol.phi_morphism)
            report.extend(_agreement("polarization", report, "diagonal", "polarized"))
            return report

        def derived(seed: int) -> CheckReport:
            phi_map = _sample_morphisms(space, seed)[kind]
            report = check_derived_linearity(phi_map, config.trials, seed, tol.derived_linearity)
            report.extend(check_star_homomorphism(phi_map.reference, config.trials, seed, tol.star), "reference")
            if space.algebra_dim <= EXHAUSTIVE_MAX_DIM:
                report.extend(check_image_inner_products(phi_map))
            return report

        return [SuiteJob(f"{kind}/phi_morphism", phi_morphism), SuiteJob(f"{kind}/derived", derived)]

    for kind in ("left_mult", "identity", "zero", "block_inclusion", "composite"):
        jobs.extend(kind_jobs(kind))

    def projection(seed: int) -> CheckReport:
        report = check_phi_morphism(_projection_map(space), config.trials, seed, tol.phi_morphism)
        result = _agreement("polarization", report, "diagonal", "polarized")
        if space.algebra_dim > 1:
            result.extend(_expect_failure("fails_diagonal", report, "diagonal"))
            result.extend(_expect_failure("fails_polarized", report, "polarized"))
        return result

    jobs.append(SuiteJob("projection", projection))
    return jobs


@register(Suite.UNITARY)
def unitary_jobs(config: SuiteConfig) -> list[SuiteJob]:
    tol = config.tolerances
    space = _space(config)

    def left_mult(seed: int) -> CheckReport:
        phi_map = _sample_morphisms(space, seed)["left_mult"]
        report = check_isometry(phi_map, config.trials, seed, tol.isometry)
        if space.algebra_dim <= EXHAUSTIVE_MAX_DIM:
            report.extend(check_unitary(phi_map, config.trials, seed, tol.phi_morphism), "unitary")
        round_trip = compose(inverse(phi_map), phi_map)
        report.extend(check_phi_morphism(round_trip, config.trials, seed, tol.phi_morphism), "inverse")
        return report

    def block_inclusion(seed: int) -> CheckReport:
        phi_map = _sample_morphisms(space, seed)["block_inclusion"]
        report = check_isometry(phi_map, config.trials, seed, tol.isometry)
        if space.algebra_dim <= EXHAUSTIVE_MAX_DIM:
            unitary = check_unitary(phi_map, config.trials, seed, tol.phi_morphism)
            report.extend(_expect_failure("not_surjective", unitary, "surjective"))
        return report

    def zero(seed: int) -> CheckReport:
        unitary = check_unitary(ZeroModuleMap(space, space), config.trials, seed, tol.phi_morphism)
        report = CheckReport(suite="zero", cases=[unitary.case("phi_morphism")])
        report.extend(_expect_failure("not_injective", unitary, "phi_injective"))
        return report

    def projection(seed: int) -> CheckReport:
        unitary = check_unitary(_projection_map(space), config.trials, seed, tol.phi_morphism)
        report = _expect_failure("not_phi_morphism", unitary, "phi_morphism")
        report.extend(_expect_failure("not_surjective", unitary, "surjective"))
        return report

    jobs = [SuiteJob("left_mult", left_mult), SuiteJob("block_inclusion", block_inclusion)]
    if space.algebra_dim <= EXHAUSTIVE_MAX_DIM:
        jobs.append(SuiteJob("zero", zero))
        # E_11 is the identity of M_1
        if space.algebra_dim > 1:
            jobs.append(SuiteJob("projection", projection))
    return jobs


def _sample_derivations(space: ModuleSpace, seed: int) -> list[GeneralizedDerivation]:
    rng = case_rng(seed, "derivations")
    return [commutator_derivation(rng.hermitian(space.algebra_dim), space) for _ in range(3)]


@register(Suite.DERIVATION)
def derivation_jobs(config: SuiteConfig) -> list[SuiteJob]:
    tol = config.tolerances
    space = _space(config)

    def leibniz(seed: int) -> CheckReport:
        gd, _, _ = _sample_derivations(space, seed)
        report = check_generalized_leibniz(gd, config.trials, seed, tol.leibniz)
        report.extend(check_induced_d_is_derivation(gd, config.trials, seed, tol.leibniz), "induced")
        report.extend(check_linearity(gd, config.trials, seed, tol.leibniz))
        return report

    def closure(seed: int) -> CheckReport:
        gd1, gd2, gd3 = _sample_derivations(space, seed)
        rng = case_rng(seed, "coefficients")
        combined = linear_combination(gd1, gd2, rng.scalar(), rng.scalar())
        report = CheckReport(suite="closure")
        report.extend(check_generalized_leibniz(combined, config.trials, seed, tol.leibniz), "linear_combination")
        report.extend(check_generalized_leibniz(lie_bracket(gd1, gd2), config.trials, seed, tol.leibniz), "bracket")
        report.extend(check_jacobi(gd1, gd2, gd3, config.trials, seed))
        return report

    def recovered(seed: int) -> CheckReport:
        rng = case_rng(seed, "recover")
        return check_recovered_derivation(DynamicalSystem(space, rng.hermitian(space.algebra_dim)), tol)

    jobs = [SuiteJob("leibniz", leibniz), SuiteJob("closure", closure)]
    if space.algebra_dim <= EXHAUSTIVE_MAX_DIM:
        jobs.append(SuiteJob("recover_d", recovered))
    return jobs


def _ladder_case(name: str, ladder) -> CheckCase:
    """Distance of the judged ratios from the second-order window (0 inside)."""
    low, high = RATIO_WINDOW
    excess = [max(low - ratio, ratio - high, 0.0) for ratio in ladder.judged_ratios()]
    return CheckCase(name, max(excess, default=0.0), 0.0, ladder.to_dict())


@register(Suite.DYNAMICS)
def dynamics_jobs(config: SuiteConfig) -> list[SuiteJob]:
    tol = config.tolerances
    space = _space(config)
    n, k = space.shape

    def system_for(seed: int) -> DynamicalSystem:
        return DynamicalSystem(space, case_rng(seed, "generator").hermitian(n))

    def samples(seed: int) -> tuple[ModuleElement, AlgebraElement]:
        rng = case_rng(seed, "samples")
        return ModuleElement(space, rng.complex_matrix(n, k)), AlgebraElement(rng.complex_matrix(n, n))

    def group(seed: int) -> CheckReport:
        system = system_for(seed)
        report = check_group_law(system, config.trials, seed, tol.group_law)
        report.extend(check_identity_at_zero(system, config.trials, seed, tol.group_law), "identity")
        return report

    def covariance(seed: int) -> CheckReport:
        system = system_for(seed)
        report = check_flow_covariance(system, config.trials, seed, tol.phi_morphism)
        rng = case_rng(seed, "automorphism_times")
        for index in range(AUTOMORPHISM_TIMES):
            alpha = induced_star_morphism(system, rng.uniform(-10.0, 10.0))
            report.extend(check_star_homomorphism(alpha, config.trials, seed, tol.star), f"automorphism_{index}")
        return report

    def continuity(seed: int) -> CheckReport:
        x, a = samples(seed)
        return check_strong_continuity(system_for(seed), x, a=a, tol=tol.continuity)

    def generators(seed: int) -> CheckReport:
        return check_generator_leibniz(system_for(seed), config.trials, seed, tol)

    def convergence(seed: int) -> CheckReport:
        system = system_for(seed)
        x, a = samples(seed)
        estimate = estimate_generator(system, x, ESTIMATE_STEP).value
        error = op_norm(estimate - generator_exact(system, x).value)
        scale = max(1.0, system.generator_norm) ** 3 * op_norm(x.value)
        cases = [
            _ladder_case("module_ladder", convergence_order(system, x)),
            _ladder_case("algebra_ladder", algebra_convergence_order(system, a)),
            CheckCase("estimate", error / scale, tol.generator, {"h": ESTIMATE_STEP}),
        ]
        return CheckReport(suite="convergence", cases=cases)

    return [
        SuiteJob("group_law", group),
        SuiteJob("covariance", covariance),
        SuiteJob("strong_continuity", continuity),
        SuiteJob("generator_leibniz", generators),
        SuiteJob("convergence", convergence),
    ]


def collect_jobs(config: SuiteConfig) -> list[SuiteJob]:
    """Jobs of every selected suite, named ``<suite>/<job>``."""
    jobs = []
    for suite in Suite.expand([s.value for s in config.suites]):
        for job in SUITES[suite](config):
            jobs.append(SuiteJob(f"{suite.value}/{job.name}", job.run))
    return jobs


def _run_job(job: SuiteJob, master_seed: int) -> CheckReport:
    try:
        return job.run(derive_seed(master_seed, job.name))
    except Exception as e:
        logger.error(f"Job {job.name} raised {type(e).__name__}: {e}")
        case = CheckCase("error", float("inf"), 0.0, witness={"error": f"{type(e).__name__}: {e}"})
        return _single(job.name, case)


def run_suite(config: SuiteConfig) -> CheckReport:
    """Run every selected suite and merge the results.

    Each job sees a seed derived from the master seed and its own name, and
    cases are sorted by name, so the report does not depend on ``workers``.
    """
    jobs = collect_jobs(config)
    logger.info(f"Running {len(jobs)} jobs for {config.suite_label} with {config.workers} worker(s)")
    start = time.perf_counter()

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = {job.name: pool.submit(_run_job, job, config.master_seed) for job in jobs}
        report = CheckReport(suite=config.suite_label, config=config.to_dict())
        for name in sorted(futures):
            report.extend(futures[name].result(), prefix=name)

    report = report.sorted()
    report.seconds = time.perf_counter() - start
    logger.info(f"Finished {config.suite_label}: {report.passed} passed, {report.failed} failed")
    return report
