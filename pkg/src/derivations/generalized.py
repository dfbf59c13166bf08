"""Generalized derivations: pairs (delta, d) with delta(ax) = a delta(x) + d(a) x.

Both domains are the whole module and the whole algebra; in finite
dimension every linear map is everywhere defined and bounded.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import DimensionMismatch, NotHermitian, PreconditionViolated, SpaceMismatch
from src.linalg import CMatrix, adjoint, as_cmatrix, case_rng, matrix_units, op_norm
from src.hilbert import ModuleSpace
from src.report import CaseTracker, CheckReport, scaled
from .maps import CommutatorMap, LeftMultGenerator, LinearMap, MatrixMap, bracket, combine

logger = logging.getLogger(__name__)

# d(ab) residuals may exceed the Leibniz tolerance by this factor.
INDUCED_DERIVATION_FACTOR = 10.0

# Matrix-unit pairs (a, x) are swept when there are at most this many.
UNIT_SWEEP_MAX_PAIRS = 256


@dataclass(frozen=True, eq=False)
class GeneralizedDerivation:
    """A ``d``-derivation ``delta`` on ``space``."""
    space: ModuleSpace
    delta: LinearMap
    d: LinearMap

    def __post_init__(self):
        n = self.space.algebra_dim
        if self.delta.shape != self.space.shape:
            raise DimensionMismatch(f"delta acts on {self.delta.shape}, space is {self.space.shape}")
        if self.d.shape != (n, n):
            raise DimensionMismatch(f"d acts on {self.d.shape}, algebra is M_{n}")

    def describe(self) -> dict:
        return {
            "delta": self.delta.kind,
            "d": self.d.kind,
            "algebra_dim": self.space.algebra_dim,
            "module_cols": self.space.module_cols,
        }


@dataclass(frozen=True)
class NoConsistentD:
    """``x -> delta(ax) - a delta(x)`` is not left multiplication for this basis element."""
    basis_index: tuple[int, int]
    residual: float


def _log_failures(report: CheckReport, label: str) -> CheckReport:
    for case in report.cases:
        if not case.passed:
            logger.debug(f"{label}: {case.name} residual {case.residual:.3e} > {case.tolerance:.1e}")
    return report


def commutator_derivation(
    t_matrix: CMatrix,
    space: Optional[ModuleSpace] = None,
    tol: float = DEFAULT_TOLERANCES.herm,
) -> GeneralizedDerivation:
    """The pair ``delta(x) = i T x``, ``d(a) = i [T, a]`` for Hermitian ``T``.

    Args:
        t_matrix: Hermitian ``n x n`` generator.
        space: Module the derivation acts on; defaults to ``M_{n x 1}``.
        tol: Relative Hermitian tolerance.

    Raises:
        NotHermitian: If ``T`` is not Hermitian.
    """
    t = as_cmatrix(t_matrix)
    if t.shape[0] != t.shape[1] or op_norm(t - adjoint(t)) > tol * op_norm(t):
        raise NotHermitian("commutator derivations need a Hermitian generator")
    space = space or ModuleSpace(t.shape[0], 1)
    if space.algebra_dim != t.shape[0]:
        raise DimensionMismatch(f"generator of size {t.shape[0]} does not act on {space}")
    gd = GeneralizedDerivation(space, LeftMultGenerator(t, space.module_cols), CommutatorMap(t))
    spot_check = check_generalized_leibniz(gd, trials=3, seed=0, tol=DEFAULT_TOLERANCES.leibniz)
    if not spot_check.ok:
        raise PreconditionViolated(f"generalized Leibniz identity fails: {spot_check.max_residual:.3e}")
    return gd


def _unit_pairs(space: ModuleSpace) -> list[tuple[CMatrix, CMatrix]]:
    n = space.algebra_dim
    if n * n * space.dimension > UNIT_SWEEP_MAX_PAIRS:
        return []
    return [(a, x) for a in matrix_units(n, n) for x in space.generators()]


def check_generalized_leibniz(
    gd: GeneralizedDerivation,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.leibniz,
) -> CheckReport:
    """Check ``delta(ax) = a delta(x) + d(a) x``, scaled by ``1 + ||a|| ||x||``."""
    if trials < 1:
        raise PreconditionViolated(f"trials must be >= 1, got {trials}")
    rng = case_rng(seed, "generalized_leibniz")
    n, k = gd.space.shape
    tracker = CaseTracker("leibniz", tol, {**gd.describe(), "trials": trials, **rng.provenance()})

    def observe(a, x):
        residual = op_norm(gd.delta(a @ x) - a @ gd.delta(x) - gd.d(a) @ x)
        tracker.observe(residual / (1.0 + op_norm(a) * op_norm(x)), a=a, x=x)

    for a, x in _unit_pairs(gd.space):
        observe(a, x)
    for _ in range(trials):
        observe(rng.complex_matrix(n, n), rng.complex_matrix(n, k))

    return _log_failures(CheckReport(suite="generalized_leibniz", cases=[tracker.case()]), gd.delta.kind)


def check_induced_d_is_derivation(
    gd: GeneralizedDerivation,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.leibniz,
) -> CheckReport:
    """Check ``d(ab) = a d(b) + d(a) b`` for the ``d`` of a generalized derivation.

    The tolerance is ``INDUCED_DERIVATION_FACTOR * tol``.

    Raises:
        PreconditionViolated: If ``gd`` fails ``check_generalized_leibniz`` at ``tol``.
    """
    precondition = check_generalized_leibniz(gd, trials, seed, tol)
    if not precondition.ok:
        raise PreconditionViolated(
            f"generalized Leibniz identity fails (residual {precondition.max_residual:.3e}); "
            "d is not forced to be a derivation"
        )
    rng = case_rng(seed, "induced_derivation")
    n = gd.space.algebra_dim
    tracker = CaseTracker(
        "derivation", INDUCED_DERIVATION_FACTOR * tol, {**gd.describe(), "trials": trials, **rng.provenance()}
    )
    for _ in range(trials):
        a = rng.complex_matrix(n, n)
        b = rng.complex_matrix(n, n)
        residual = op_norm(gd.d(a @ b) - a @ gd.d(b) - gd.d(a) @ b)
        tracker.observe(residual / (1.0 + op_norm(a) * op_norm(b)), a=a, b=b)

    return _log_failures(CheckReport(suite="induced_derivation", cases=[tracker.case()]), gd.d.kind)


def check_linearity(
    gd: GeneralizedDerivation,
    trials: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOLERANCES.leibniz,
) -> CheckReport:
    """Complex-linearity of ``delta`` and ``d`` on random data."""
    rng = case_rng(seed, "derivation_linearity")
    params = {**gd.describe(), "trials": trials, **rng.provenance()}
    cases = []
    for name, linear_map in (("delta_linear", gd.delta), ("d_linear", gd.d)):
        cases.append(_linearity_case(name, linear_map, trials, rng, tol, params))
    return _log_failures(CheckReport(suite="derivation_linearity", cases=cases), gd.delta.kind)


def _linearity_case(name, linear_map: LinearMap, trials, rng, tol, params):
    tracker = CaseTracker(name, tol, params)
    rows, cols = linear_map.shape
    for _ in range(trials):
        x = rng.complex_matrix(rows, cols)
        y = rng.complex_matrix(rows, cols)
        alpha = rng.scalar()
        residual = op_norm(linear_map(alpha * x + y) - (alpha * linear_map(x) + linear_map(y)))
        tracker.observe(scaled(residual, abs(alpha) * op_norm(x) + op_norm(y)), x=x, y=y, alpha=alpha)
    return tracker.case()


def recover_d(
    delta: LinearMap,
    space: ModuleSpace,
    tol: float = DEFAULT_TOLERANCES.recover,
) -> LinearMap | NoConsistentD:
    """Solve for the ``d`` that makes ``delta`` a ``d``-derivation.

    For each matrix unit ``a = E_pq`` the map ``x -> delta(ax) - a delta(x)``
    must be left multiplication by one matrix ``D``; on a full module that
    matrix is unique and ``d(a) = D``.

    Returns:
        A ``MatrixMap`` for ``d``, or ``NoConsistentD`` naming the first basis
        element whose residual exceeds ``tol``.

    Raises:
        PreconditionViolated: If ``delta`` fails a complex-linearity spot check.
    """
    if delta.shape != space.shape:
        raise DimensionMismatch(f"delta acts on {delta.shape}, space is {space.shape}")
    linearity = _linearity_case("delta_linear", delta, 5, case_rng(0, "recover_d/linearity"), tol, {})
    if not linearity.passed:
        raise PreconditionViolated(f"delta is not complex-linear (residual {linearity.residual:.3e})")

    n = space.algebra_dim
    generators = space.generators()
    x_all = np.hstack(generators)
    columns = []
    for index, a in enumerate(matrix_units(n, n)):
        y_all = np.hstack([delta(a @ x) - a @ delta(x) for x in generators])
        solution, *_ = np.linalg.lstsq(x_all.T, y_all.T, rcond=None)
        d_a = solution.T
        residual = op_norm(d_a @ x_all - y_all) / (1.0 + op_norm(y_all))
        if residual > tol:
            basis = divmod(index, n)
            logger.info(f"No consistent d: basis E{basis} residual {residual:.3e}")
            return NoConsistentD(basis_index=basis, residual=float(residual))
        columns.append(d_a.reshape(-1))
    return MatrixMap(np.column_stack(columns), (n, n))


def _same_space(gd1: GeneralizedDerivation, gd2: GeneralizedDerivation) -> None:
    if gd1.space != gd2.space:
        raise SpaceMismatch(f"{gd1.space} and {gd2.space} differ")


def linear_combination(
    gd1: GeneralizedDerivation,
    gd2: GeneralizedDerivation,
    alpha: complex,
    beta: complex,
) -> GeneralizedDerivation:
    """``alpha delta1 + beta delta2``, an ``(alpha d1 + beta d2)``-derivation."""
    _same_space(gd1, gd2)
    return GeneralizedDerivation(
        gd1.space,
        combine(alpha, gd1.delta, beta, gd2.delta),
        combine(alpha, gd1.d, beta, gd2.d),
    )


def lie_bracket(gd1: GeneralizedDerivation, gd2: GeneralizedDerivation) -> GeneralizedDerivation:
    """``[delta1, delta2]``, a ``[d1, d2]``-derivation."""
    _same_space(gd1, gd2)
    return GeneralizedDerivation(gd1.space, bracket(gd1.delta, gd2.delta), bracket(gd1.d, gd2.d))


def check_jacobi(
    gd1: GeneralizedDerivation,
    gd2: GeneralizedDerivation,
    gd3: GeneralizedDerivation,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-9,
) -> CheckReport:
    """Pointwise norm of the cyclic nested-bracket sum, on both levels."""
    _same_space(gd1, gd2)
    _same_space(gd1, gd3)
    rng = case_rng(seed, "jacobi")
    params = {**gd1.describe(), "trials": trials, **rng.provenance()}
    total = linear_combination(
        linear_combination(lie_bracket(gd1, lie_bracket(gd2, gd3)), lie_bracket(gd2, lie_bracket(gd3, gd1)), 1, 1),
        lie_bracket(gd3, lie_bracket(gd1, gd2)),
        1,
        1,
    )
    n, k = gd1.space.shape
    module_level = CaseTracker("jacobi_delta", tol, params)
    algebra_level = CaseTracker("jacobi_d", tol, params)
    for _ in range(trials):
        x = rng.complex_matrix(n, k)
        a = rng.complex_matrix(n, n)
        module_level.observe(op_norm(total.delta(x)) / op_norm(x), x=x)
        algebra_level.observe(op_norm(total.d(a)) / op_norm(a), a=a)
    return _log_failures(CheckReport(suite="jacobi", cases=[module_level.case(), algebra_level.case()]), "jacobi")
