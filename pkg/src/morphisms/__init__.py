"""phi-morphisms of Hilbert C*-modules and unitary module operators."""

from .operators import (
    BlockInclusion,
    IdentityModuleMap,
    LeftMult,
    LinearModuleMap,
    ModuleMorphism,
    ZeroModuleMap,
    apply,
    compose,
    inverse,
    unitary_from_operator,
)
from .checks import (
    check_derived_linearity,
    check_image_inner_products,
    check_isometry,
    check_phi_morphism,
    check_unitary,
    map_rank,
)

__all__ = [
    "BlockInclusion",
    "IdentityModuleMap",
    "LeftMult",
    "LinearModuleMap",
    "ModuleMorphism",
    "ZeroModuleMap",
    "apply",
    "check_derived_linearity",
    "check_image_inner_products",
    "check_isometry",
    "check_phi_morphism",
    "check_unitary",
    "compose",
    "inverse",
    "map_rank",
    "unitary_from_operator",
]
