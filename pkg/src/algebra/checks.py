"""Randomized verification of the *-homomorphism axioms."""

import logging

from src.config import DEFAULT_TOLERANCES
from src.errors import PreconditionViolated
from src.linalg import adjoint, case_rng, matrix_units, op_norm
from src.report import CaseTracker, CheckReport
from .morphisms import StarMorphism

logger = logging.getLogger(__name__)

# Exhaustive matrix-unit pairs are swept for algebras up to this size.
UNIT_SWEEP_MAX_DIM = 4


def check_star_homomorphism(
    phi: StarMorphism,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.star,
) -> CheckReport:
    """Check multiplicativity, *-preservation and linearity of ``phi``.

    Residuals are scaled by the operand norms. Matrix-unit pairs are swept
    first for small algebras, then ``trials`` random Gaussian pairs.
    """
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    rng = case_rng(seed, "star_homomorphism")
    n = phi.source_dim
    params = {**phi.describe(), "trials": trials, **rng.provenance()}

    multiplicative = CaseTracker("multiplicative", tol, params)
    star = CaseTracker("star", tol, params)
    linear = CaseTracker("linear", tol, params)

    def observe_product(a, b):
        residual = op_norm(phi(a @ b) - phi(a) @ phi(b))
        scale = op_norm(a) * op_norm(b)
        multiplicative.observe(residual / scale if scale > 0 else residual, a=a, b=b)

    if n <= UNIT_SWEEP_MAX_DIM:
        units = matrix_units(n, n)
        for a in units:
            for b in units:
                observe_product(a, b)

    for _ in range(trials):
        a = rng.complex_matrix(n, n)
        b = rng.complex_matrix(n, n)
        alpha = rng.scalar()
        observe_product(a, b)

        star.observe(op_norm(phi(adjoint(a)) - adjoint(phi(a))) / op_norm(a), a=a)

        residual = op_norm(phi(alpha * a + b) - (alpha * phi(a) + phi(b)))
        linear.observe(residual / (abs(alpha) * op_norm(a) + op_norm(b)), a=a, b=b, alpha=alpha)

    report = CheckReport(suite="star_homomorphism", cases=[multiplicative.case(), star.case(), linear.case()])
    for case in report.cases:
        if not case.passed:
            logger.debug(f"{phi.kind}: {case.name} residual {case.residual:.3e} > {case.tolerance:.1e}")
    return report
