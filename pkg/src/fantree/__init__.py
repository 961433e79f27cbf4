from .fantree import main
from .multiplier import ideal_presentation, jumping_numbers, membership
from .oracles import blowup_resolve, howald_jumping_numbers
from .resolution import Curve, resolve
from .tree_functions import build_decoration_table, build_valuation_table

__all__ = [
    "Curve",
    "blowup_resolve",
    "build_decoration_table",
    "build_valuation_table",
    "howald_jumping_numbers",
    "ideal_presentation",
    "jumping_numbers",
    "main",
    "membership",
    "resolve",
]
