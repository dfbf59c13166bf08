"""Checkers for phi-morphisms, their derived properties and unitarity."""

import logging

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import PreconditionViolated
from src.linalg import case_rng, op_norm, rank_span
from src.algebra import image_rank, is_injective
from src.hilbert import ModuleElement, module_norm
from src.report import CaseTracker, CheckCase, CheckReport, scaled
from .operators import ModuleMorphism

logger = logging.getLogger(__name__)

# Generator pairs are swept exhaustively for modules up to this dimension.
GENERATOR_SWEEP_MAX_DIM = 16


def _log_failures(report: CheckReport, label: str) -> CheckReport:
    for case in report.cases:
        if not case.passed:
            logger.debug(f"{label}: {case.name} residual {case.residual:.3e} > {case.tolerance:.1e}")
    return report


def check_phi_morphism(
    phi_map: ModuleMorphism,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.phi_morphism,
) -> CheckReport:
    """Check ``<Phi x, Phi y> = phi(<x, y>)``.

    Two independent cases are reported: ``diagonal`` tests only ``y = x``
    and ``polarized`` tests pairs. By polarization they pass or fail
    together, which the report makes observable.
    """
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    rng = case_rng(seed, "phi_morphism")
    source, target, phi = phi_map.source, phi_map.target, phi_map.reference
    n, k = source.shape
    params = {**phi_map.describe(), "trials": trials, **rng.provenance()}

    diagonal = CaseTracker("diagonal", tol, params)
    polarized = CaseTracker("polarized", tol, params)

    def defect(x, y):
        return op_norm(target.inner(phi_map.map(x), phi_map.map(y)) - phi(source.inner(x, y)))

    generators = source.generators()
    for x in generators:
        diagonal.observe(defect(x, x), x=x)
    if source.dimension <= GENERATOR_SWEEP_MAX_DIM:
        for x in generators:
            for y in generators:
                polarized.observe(defect(x, y), x=x, y=y)

    for _ in range(trials):
        x = rng.complex_matrix(n, k)
        y = rng.complex_matrix(n, k)
        diagonal.observe(scaled(defect(x, x), op_norm(x) ** 2), x=x)
        polarized.observe(scaled(defect(x, y), op_norm(x) * op_norm(y)), x=x, y=y)

    report = CheckReport(suite="phi_morphism", cases=[diagonal.case(), polarized.case()])
    return _log_failures(report, phi_map.kind)


def check_derived_linearity(
    phi_map: ModuleMorphism,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.derived_linearity,
) -> CheckReport:
    """Check ``Phi(alpha x + y) = alpha Phi(x) + Phi(y)`` and ``Phi(a x) = phi(a) Phi(x)``."""
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    rng = case_rng(seed, "derived_linearity")
    n, k = phi_map.source.shape
    phi = phi_map.reference
    params = {**phi_map.describe(), "trials": trials, **rng.provenance()}

    additive = CaseTracker("additive", tol, params)
    module_map = CaseTracker("module_map", tol, params)

    for _ in range(trials):
        x = rng.complex_matrix(n, k)
        y = rng.complex_matrix(n, k)
        a = rng.complex_matrix(n, n)
        alpha = rng.scalar()

        residual = op_norm(phi_map.map(alpha * x + y) - (alpha * phi_map.map(x) + phi_map.map(y)))
        additive.observe(scaled(residual, abs(alpha) * op_norm(x) + op_norm(y)), x=x, y=y, alpha=alpha)

        residual = op_norm(phi_map.map(a @ x) - phi(a) @ phi_map.map(x))
        module_map.observe(scaled(residual, op_norm(a) * op_norm(x)), a=a, x=x)

    report = CheckReport(suite="derived_linearity", cases=[additive.case(), module_map.case()])
    return _log_failures(report, phi_map.kind)


def check_isometry(
    phi_map: ModuleMorphism,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.isometry,
) -> CheckReport:
    """Check ``||Phi x|| = ||x||``, which holds when ``phi`` is injective.

    Raises:
        PreconditionViolated: If the reference morphism is not injective or
            ``trials < 1``.
    """
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    if not is_injective(phi_map.reference):
        raise PreconditionViolated(f"{phi_map.reference.kind} is not injective; isometry is not implied")
    rng = case_rng(seed, "isometry")
    n, k = phi_map.source.shape
    params = {**phi_map.describe(), "trials": trials, **rng.provenance()}
    isometry = CaseTracker("norm_preserved", tol, params)

    samples = [np.zeros(phi_map.source.shape, dtype=np.complex128)]
    samples += [rng.complex_matrix(n, k) for _ in range(trials)]
    for value in samples:
        x = ModuleElement(phi_map.source, value)
        image = ModuleElement(phi_map.target, phi_map.map(value))
        norm = module_norm(x)
        isometry.observe(scaled(abs(module_norm(image) - norm), norm), x=value)

    return _log_failures(CheckReport(suite="isometry", cases=[isometry.case()]), phi_map.kind)


def map_rank(phi_map: ModuleMorphism) -> int:
    """Rank of ``Phi`` as a linear map on the vectorized module."""
    return rank_span([phi_map.map(unit) for unit in phi_map.source.generators()], DEFAULT_TOLERANCES.rank)


def check_unitary(
    phi_map: ModuleMorphism,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.phi_morphism,
) -> CheckReport:
    """Decide whether ``Phi`` is a unitary module operator.

    Cases: ``phi_morphism`` (the morphism identity), ``phi_injective``,
    ``surjective`` (rank of ``Phi`` equals ``dim N``) and ``phi_surjective``
    (``phi`` onto ``M_m``, which a surjective morphism onto a full module forces).
    Rank cases report the rank deficiency against a zero tolerance.
    """
    morphism = check_phi_morphism(phi_map, trials, seed, tol)
    params = {**phi_map.describe(), "trials": trials, "seed": seed}
    worst = max(morphism.cases, key=lambda case: case.residual)

    injective = is_injective(phi_map.reference)
    rank = map_rank(phi_map)
    reference_rank = image_rank(phi_map.reference)
    m = phi_map.reference.target_dim

    cases = [
        CheckCase("phi_morphism", worst.residual, tol, params, worst.witness),
        CheckCase("phi_injective", 0.0 if injective else 1.0, 0.0, params),
        CheckCase("surjective", float(phi_map.target.dimension - rank), 0.0, {**params, "rank": rank}),
        CheckCase("phi_surjective", float(m * m - reference_rank), 0.0, {**params, "rank": reference_rank}),
    ]
    return _log_failures(CheckReport(suite="unitary", cases=cases), phi_map.kind)


def check_image_inner_products(phi_map: ModuleMorphism) -> CheckReport:
    """Compare ``span <Im Phi, Im Phi>`` with ``phi(span <M, M>)`` by rank."""
    source, target, phi = phi_map.source, phi_map.target, phi_map.reference
    generators = source.generators()
    images = [phi_map.map(x) for x in generators]
    image_products = [target.inner(x, y) for x in images for y in images]
    mapped_products = [phi(source.inner(x, y)) for x in generators for y in generators]
    image_span = rank_span(image_products)
    mapped_span = rank_span(mapped_products)
    case = CheckCase(
        "image_inner_products",
        float(abs(image_span - mapped_span)),
        0.0,
        {**phi_map.describe(), "image_rank": image_span, "mapped_rank": mapped_span},
    )
    return _log_failures(CheckReport(suite="image_inner_products", cases=[case]), phi_map.kind)
