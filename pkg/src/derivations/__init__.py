"""Generalized derivations and the linear/Lie structure of GDer(M)."""

from .maps import (
    CommutatorMap,
    ConjugationMap,
    LeftMultGenerator,
    LinearMap,
    MatrixMap,
    bracket,
    combine,
)
from .generalized import (
    GeneralizedDerivation,
    NoConsistentD,
    check_generalized_leibniz,
    check_induced_d_is_derivation,
    check_jacobi,
    check_linearity,
    commutator_derivation,
    lie_bracket,
    linear_combination,
    recover_d,
)

__all__ = [
    "CommutatorMap",
    "ConjugationMap",
    "GeneralizedDerivation",
    "LeftMultGenerator",
    "LinearMap",
    "MatrixMap",
    "NoConsistentD",
    "bracket",
    "check_generalized_leibniz",
    "check_induced_d_is_derivation",
    "check_jacobi",
    "check_linearity",
    "combine",
    "commutator_derivation",
    "lie_bracket",
    "linear_combination",
    "recover_d",
]
