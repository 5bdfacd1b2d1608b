"""starforge.hochschild: polydifferential cochains.

``PolyDiffOp`` houses star-product terms, equivalences and quantized vector
fields. ``hoch_coboundary`` works relative to any 2-cochain product and
``gerstenhaber`` follows the convention ``[m, P] = hoch_coboundary(P)``.
"""

from starforge.hochschild._calculus import (
    associator,
    gerstenhaber,
    gerstenhaber_insertions,
    hoch_coboundary,
    interpolate,
    multi_indices,
)
from starforge.hochschild._cochain import (
    PolyDiffOp,
    partial_op,
    pointwise,
    splittings,
)
from starforge.hochschild._text import format_op

__all__ = [
    "PolyDiffOp",
    "associator",
    "format_op",
    "gerstenhaber",
    "gerstenhaber_insertions",
    "hoch_coboundary",
    "interpolate",
    "multi_indices",
    "partial_op",
    "pointwise",
    "splittings",
]
