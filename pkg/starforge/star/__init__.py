"""starforge.star: star products on a chart.

Moyal products use ``f * g = m exp(pi^(ij) d_i (x) d_j)(f (x) g)`` without
a factor 1/2, so ``[x^i, x^j]_* = 2 pi^(ij)``. ``moyal_normalizer``
removes the higher hbar-orders of a constant ``pi``, ``bfield_equivalence``
integrates the equivalence flow of an exact B-field and ``transition_demo``
builds transition functions for a constant cocycle.
"""

from starforge.star._bfield import (
    BFieldFlow,
    bfield_equivalence,
    intertwining_family,
    vector_field_op,
)
from starforge.star._equivalence import (
    Equivalence,
    MatrixNormalizer,
    Normalizer,
    conjugate,
    hbar_order,
    intertwining_residual,
    linear_vector_field,
    moyal_normalizer,
    normalize_matrix,
    op_exp,
    solve_chi,
)
from starforge.star._moyal import (
    ConstPoissonMatrix,
    StarProduct,
    assoc_residual,
    associator_op,
    compose_constant,
    exp_constant,
    mc_form,
    moyal,
    poisson_bidifferential,
)
from starforge.star._transition import (
    Exponent,
    TransitionFunction,
    TransitionReport,
    transition_demo,
)

__all__ = [
    "BFieldFlow",
    "ConstPoissonMatrix",
    "Equivalence",
    "Exponent",
    "MatrixNormalizer",
    "Normalizer",
    "StarProduct",
    "TransitionFunction",
    "TransitionReport",
    "assoc_residual",
    "associator_op",
    "bfield_equivalence",
    "compose_constant",
    "conjugate",
    "exp_constant",
    "hbar_order",
    "intertwining_family",
    "intertwining_residual",
    "linear_vector_field",
    "mc_form",
    "moyal",
    "moyal_normalizer",
    "normalize_matrix",
    "op_exp",
    "poisson_bidifferential",
    "solve_chi",
    "transition_demo",
    "vector_field_op",
]
