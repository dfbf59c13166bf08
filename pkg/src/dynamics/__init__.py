"""One-parameter unitary groups on the module and the induced algebra dynamics."""

from .system import (
    ConvergenceLadder,
    DynamicalSystem,
    algebra_convergence_order,
    algebra_generator_exact,
    convergence_order,
    estimate_algebra_generator,
    estimate_generator,
    evolve,
    flow_morphism,
    generator_exact,
    induced_algebra_flow,
    induced_star_morphism,
    random_system,
    roundoff_floor,
    zero_system,
)
from .checks import (
    DEFAULT_SCHEDULE,
    check_flow_covariance,
    check_generator_leibniz,
    check_group_law,
    check_identity_at_zero,
    check_recovered_derivation,
    check_strong_continuity,
)

__all__ = [
    "ConvergenceLadder",
    "DEFAULT_SCHEDULE",
    "DynamicalSystem",
    "algebra_convergence_order",
    "algebra_generator_exact",
    "check_flow_covariance",
    "check_generator_leibniz",
    "check_group_law",
    "check_identity_at_zero",
    "check_recovered_derivation",
    "check_strong_continuity",
    "convergence_order",
    "estimate_algebra_generator",
    "estimate_generator",
    "evolve",
    "flow_morphism",
    "generator_exact",
    "induced_algebra_flow",
    "induced_star_morphism",
    "random_system",
    "roundoff_floor",
    "zero_system",
]
