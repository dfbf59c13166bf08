"""The concrete full Hilbert C*-module M_{n x k} over M_n."""

from .space import (
    ModuleElement,
    ModuleSpace,
    annihilator_defect,
    check_fullness,
    inner_product,
    inner_product_span,
    module_action,
    module_norm,
)
from .checks import check_module_axioms, check_norm_inequalities

__all__ = [
    "ModuleElement",
    "ModuleSpace",
    "annihilator_defect",
    "check_fullness",
    "check_module_axioms",
    "check_norm_inequalities",
    "inner_product",
    "inner_product_span",
    "module_action",
    "module_norm",
]
