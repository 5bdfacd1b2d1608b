"""starforge.dgla: Maurer-Cartan theory in filtered DGLAs.

An ``MCContext`` bundles differential, bracket and filtration of a
carrier (polyvectors or cochains). ``mc_residual``, ``gauge_action``,
``campbell_hausdorff`` and ``twist`` act on it; ``LInfMorphism`` carries
finite families of structure maps with ``linf_push``/``linf_twist``.
"""

from starforge.dgla._context import (
    MAX_SERIES_STEPS,
    MCContext,
    cochain_context,
    differential_square,
    jacobi_residual,
    leibniz_residual,
    polyvector_context,
)
from starforge.dgla._linf import (
    LInfMorphism,
    bracket_defect,
    intertwining_residual,
    linf_push,
    linf_twist,
)
from starforge.dgla._mc import (
    bernoulli_even,
    campbell_hausdorff,
    gauge_action,
    mc_residual,
    twist,
)

__all__ = [
    "MAX_SERIES_STEPS",
    "LInfMorphism",
    "MCContext",
    "bernoulli_even",
    "bracket_defect",
    "campbell_hausdorff",
    "cochain_context",
    "differential_square",
    "gauge_action",
    "intertwining_residual",
    "jacobi_residual",
    "leibniz_residual",
    "linf_push",
    "linf_twist",
    "mc_residual",
    "polyvector_context",
    "twist",
]
