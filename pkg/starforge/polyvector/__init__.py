"""starforge.polyvector: polyvector fields, forms and their brackets.

Houses pi, B, theta and omega. ``schouten`` is the Schouten-Nijenhuis
bracket, ``pi_sharp`` the multiplicative extension of ``pi#`` and
``courant``/``pairing``/``b_transform`` the generalized-geometry apparatus
on ``TM + T*M``.
"""

from starforge.polyvector._calculus import (
    b_transform,
    contract,
    coordinate_fields,
    coordinate_forms,
    courant,
    de_rham,
    evaluate,
    graph_section,
    hamiltonian,
    interior,
    is_poisson,
    jacobiator,
    lie_derivative,
    linear_primitive,
    mixed_jacobiator,
    pairing,
    pi_sharp,
    poisson_bracket,
    schouten,
)
from starforge.polyvector._fields import (
    DiffForm,
    GenSection,
    PolyVectorField,
    SuperField,
)
from starforge.polyvector._text import (
    format_field,
    parse_form,
    parse_polyvector,
)

__all__ = [
    "DiffForm",
    "GenSection",
    "PolyVectorField",
    "SuperField",
    "b_transform",
    "contract",
    "coordinate_fields",
    "coordinate_forms",
    "courant",
    "de_rham",
    "evaluate",
    "format_field",
    "graph_section",
    "hamiltonian",
    "interior",
    "is_poisson",
    "jacobiator",
    "lie_derivative",
    "linear_primitive",
    "mixed_jacobiator",
    "pairing",
    "parse_form",
    "parse_polyvector",
    "pi_sharp",
    "poisson_bracket",
    "schouten",
]
