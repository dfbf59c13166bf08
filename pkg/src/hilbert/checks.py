"""Randomized verification of the Hilbert module axioms and norm bounds."""

import logging
import math

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import PreconditionViolated
from src.linalg import adjoint, case_rng, min_eigenvalue, op_norm
from src.algebra import AlgebraElement
from src.report import CaseTracker, CheckReport, scaled
from .space import ModuleSpace, annihilator_defect, module_norm

logger = logging.getLogger(__name__)


def check_module_axioms(
    space: ModuleSpace,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.module_axioms,
) -> CheckReport:
    """Verify the inner-product axioms of ``space`` on random data.

    Cases: linearity in the first slot, conjugate linearity in the second,
    ``<ax, y> = a<x, y>``, ``<x, y>* = <y, x>``, positivity of ``<x, x>``
    and definiteness (``||x|| >= max |x_ij|``, so ``||x|| = 0`` forces ``x = 0``).
    """
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    rng = case_rng(seed, "module_axioms")
    n, k = space.shape
    inner = space.inner
    params = {"algebra_dim": n, "module_cols": k, "trials": trials, **rng.provenance()}

    first = CaseTracker("linear_first", tol, params)
    second = CaseTracker("conjugate_linear_second", tol, params)
    module = CaseTracker("module_linearity", tol, params)
    symmetry = CaseTracker("conjugate_symmetry", tol, params)
    positivity = CaseTracker("positivity", tol, params)
    definiteness = CaseTracker("definiteness", tol, params)

    samples = [np.zeros(space.shape, dtype=np.complex128)]
    samples += [rng.complex_matrix(n, k) for _ in range(trials)]
    for x in samples:
        y = rng.complex_matrix(n, k)
        z = rng.complex_matrix(n, k)
        a = rng.complex_matrix(n, n)
        alpha = rng.scalar()
        nx, ny, nz = op_norm(x), op_norm(y), op_norm(z)

        residual = op_norm(inner(alpha * x + y, z) - (alpha * inner(x, z) + inner(y, z)))
        first.observe(scaled(residual, (abs(alpha) * nx + ny) * nz), x=x, y=y, z=z, alpha=alpha)

        residual = op_norm(inner(x, alpha * y + z) - (np.conj(alpha) * inner(x, y) + inner(x, z)))
        second.observe(scaled(residual, nx * (abs(alpha) * ny + nz)), x=x, y=y, z=z, alpha=alpha)

        residual = op_norm(inner(a @ x, y) - a @ inner(x, y))
        module.observe(scaled(residual, op_norm(a) * nx * ny), a=a, x=x, y=y)

        residual = op_norm(adjoint(inner(x, y)) - inner(y, x))
        symmetry.observe(scaled(residual, nx * ny), x=x, y=y)

        gram = inner(x, x)
        gram_norm = op_norm(gram)
        if gram_norm > 0:
            skew = op_norm(gram - adjoint(gram)) / gram_norm
            negativity = max(0.0, -min_eigenvalue(gram)) / gram_norm
            positivity.observe(max(skew, negativity), x=x)

        entry_max = float(np.abs(x).max())
        norm = math.sqrt(gram_norm)
        definiteness.observe(scaled(max(0.0, entry_max - norm), entry_max), x=x)

    report = CheckReport(
        suite="module_axioms",
        cases=[first.case(), second.case(), module.case(), symmetry.case(), positivity.case(), definiteness.case()],
    )
    for case in report.cases:
        if not case.passed:
            logger.debug(f"{space}: {case.name} residual {case.residual:.3e} > {case.tolerance:.1e}")
    return report


def check_norm_inequalities(
    space: ModuleSpace,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.module_axioms,
) -> CheckReport:
    """Cauchy-Schwarz, ``||ax|| <= ||a|| ||x||`` and ``defect(a) >= ||a|| / sqrt(n)``.

    Residuals are the relative amount by which an inequality is violated.
    """
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    rng = case_rng(seed, "norm_inequalities")
    n, k = space.shape
    params = {"algebra_dim": n, "module_cols": k, "trials": trials, **rng.provenance()}

    cauchy_schwarz = CaseTracker("cauchy_schwarz", tol, params)
    action = CaseTracker("action_bound", tol, params)
    annihilator = CaseTracker("annihilator_bound", tol, params)

    for _ in range(trials):
        x = space.element(rng.complex_matrix(n, k))
        y = space.element(rng.complex_matrix(n, k))
        a = AlgebraElement(rng.complex_matrix(n, n))
        nx, ny, na = module_norm(x), module_norm(y), a.norm

        bound = nx * ny
        cauchy_schwarz.observe(scaled(max(0.0, op_norm(space.inner(x.value, y.value)) - bound), bound), x=x.value, y=y.value)

        bound = na * nx
        action.observe(scaled(max(0.0, op_norm(a.value @ x.value) - bound), bound), a=a.value, x=x.value)

        bound = na / math.sqrt(n)
        annihilator.observe(scaled(max(0.0, bound - annihilator_defect(a, space)), na), a=a.value)

    return CheckReport(suite="norm_inequalities", cases=[cauchy_schwarz.case(), action.case(), annihilator.case()])
