"""Worked demonstration: the generator of Ad(e^{itT}) is V -> i[T, V]."""

import logging
from dataclasses import dataclass

import numpy as np

from src.errors import PreconditionViolated
from src.linalg import CMatrix, case_rng, op_norm
from src.algebra import AlgebraElement
from src.hilbert import ModuleSpace
from src.dynamics import (
    ConvergenceLadder,
    DynamicalSystem,
    algebra_convergence_order,
    algebra_generator_exact,
    estimate_algebra_generator,
)

logger = logging.getLogger(__name__)

DEMO_MIN_DIM = 2
DEMO_MAX_DIM = 8
DEMO_STEPS = (1e-2, 1e-3, 1e-4)

FIXED_GENERATOR = np.diag([1.0, 2.0]).astype(np.complex128)
FIXED_ELEMENT = np.array([[0, 1], [0, 0]], dtype=np.complex128)
FIXED_EXPECTED = np.array([[0, -1j], [0, 0]], dtype=np.complex128)


@dataclass
class InducedGeneratorDemo:
    """Everything the demo prints, kept for inspection."""
    algebra_dim: int
    seed: int
    generator: CMatrix
    element: CMatrix
    exact: CMatrix
    estimates: list[tuple[float, CMatrix]]
    ladder: ConvergenceLadder
    fixed_exact: CMatrix

    @property
    def fixed_matches(self) -> bool:
        return bool(np.array_equal(self.fixed_exact, FIXED_EXPECTED))

    def render(self) -> str:
        lines = [
            "fixed case: T = diag(1, 2), V = E_12",
            _block("i[T, V]", self.fixed_exact),
            f"matches -i E_12: {'yes' if self.fixed_matches else 'no'}",
            "",
            f"random case: n={self.algebra_dim} seed={self.seed}",
            _block("T", self.generator),
            _block("V", self.element),
            _block("i[T, V]", self.exact),
        ]
        for h, estimate in self.estimates:
            lines.append(_block(f"central difference h={h:.0e}", estimate))
        lines.append("error ladder:")
        lines.append(f"  {'h':>10}  {'error':>10}  {'ratio':>8}")
        ratios = [None] + list(self.ladder.ratios)
        for (h, error), ratio in zip(self.ladder.steps, ratios):
            shown = "-" if ratio is None else f"{ratio:.3f}"
            lines.append(f"  {h:10.3e}  {error:10.3e}  {shown:>8}")
        if self.ladder.exact:
            lines.append("order: exact (all errors zero)")
        else:
            lines.append(f"second order: {'yes' if self.ladder.is_second_order() else 'no'}")
        return "\n".join(lines) + "\n"


def _block(label: str, matrix: CMatrix) -> str:
    body = np.array2string(np.asarray(matrix), precision=6, suppress_small=True, max_line_width=120)
    return f"{label} =\n{body}"


def run_induced_generator_demo(n: int, seed: int, zero_generator: bool = False) -> InducedGeneratorDemo:
    """Compare ``i[T, V]`` with central differences of ``Ad(e^{itT})`` at ``V``.

    Raises:
        PreconditionViolated: If ``n`` is outside ``[2, 8]``.
    """
    if not DEMO_MIN_DIM <= n <= DEMO_MAX_DIM:
        raise PreconditionViolated(f"demo dimension must be in [{DEMO_MIN_DIM}, {DEMO_MAX_DIM}], got {n}")
    space = ModuleSpace(n, 1)

    fixed = DynamicalSystem(ModuleSpace(2, 1), FIXED_GENERATOR)
    fixed_exact = algebra_generator_exact(fixed, AlgebraElement(FIXED_ELEMENT)).value

    rng = case_rng(seed, "demo")
    generator = np.zeros((n, n), dtype=np.complex128) if zero_generator else rng.hermitian(n)
    element = AlgebraElement(rng.complex_matrix(n, n))
    system = DynamicalSystem(space, generator)

    estimates = [(h, estimate_algebra_generator(system, element, h).value) for h in DEMO_STEPS]
    ladder = algebra_convergence_order(system, element)
    exact = algebra_generator_exact(system, element).value
    logger.info(f"Demo n={n} seed={seed}: ||i[T, V]|| = {op_norm(exact):.3e}")

    return InducedGeneratorDemo(
        algebra_dim=n,
        seed=seed,
        generator=generator,
        element=element.value,
        exact=exact,
        estimates=estimates,
        ladder=ladder,
        fixed_exact=fixed_exact,
    )


def demo_induced_generator(n: int, seed: int, zero_generator: bool = False) -> str:
    """Rendered text of ``run_induced_generator_demo``."""
    return run_induced_generator_demo(n, seed, zero_generator).render()
