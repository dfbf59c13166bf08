"""Matrix C*-algebra layer: elements, positivity and *-morphisms."""

from .elements import AlgebraElement, is_positive
from .morphisms import (
    AdUnitary,
    BlockEmbed,
    ComposedMorphism,
    IdentityMorphism,
    StarMorphism,
    TransposeMap,
    ZeroMorphism,
    apply_morphism,
    compose_star,
    image_rank,
    is_injective,
    is_surjective,
    unitarity_defect,
)
from .checks import check_star_homomorphism

__all__ = [
    "AdUnitary",
    "AlgebraElement",
    "BlockEmbed",
    "ComposedMorphism",
    "IdentityMorphism",
    "StarMorphism",
    "TransposeMap",
    "ZeroMorphism",
    "apply_morphism",
    "check_star_homomorphism",
    "compose_star",
    "image_rank",
    "is_injective",
    "is_positive",
    "is_surjective",
    "unitarity_defect",
]
