"""starforge.core: exact scalars and the truncated multi-graded substrate.

Everything above this package computes with:

  - ``CRational``: exact Gaussian rationals,
  - ``TruncationProfile``: the (N, Dx, Dy, d) truncation bounds,
  - ``TruncPoly`` / ``HSeries`` / ``WeylElement`` term maps and ``HMatrix``,
  - the canonical text grammar and the ``StarForgeError`` hierarchy.
"""

from starforge.core._errors import (
    ArityMismatch,
    ArityOverflow,
    CheckFailed,
    DegenerateOmega,
    DegeneratePi1,
    FiltrationViolation,
    GrammarError,
    IncompatibleConnection,
    NoConvergence,
    NonConstantCocycle,
    NonConstantZerothOrder,
    NonDivisible,
    NonInvertible,
    NonInvertibleInitialCondition,
    NonTermination,
    NotAntisymmetric,
    NotClosed,
    NotDeltaFlat,
    NotFormal,
    ProfileMismatch,
    StarForgeError,
    ZeroElement,
    ZerothOrderViolation,
)
from starforge.core._matrix import HMatrix, from_sympy, to_sympy
from starforge.core._poly import (
    Exponent,
    TruncPoly,
    falling,
    multi_falling,
    unit_exponent,
)
from starforge.core._profile import (
    DEFAULT_PROFILE,
    TruncationProfile,
    same_profile,
)
from starforge.core._scalar import (
    ONE,
    ZERO,
    CRational,
    I,
    ScalarLike,
    format_scalar,
)
from starforge.core._series import HSeries, series_invert
from starforge.core._terms import TermMap, accumulate, add_exponents
from starforge.core._text import (
    format_element,
    parse_poly,
    parse_scalar,
    parse_series,
    parse_term,
    parse_weyl,
    sort_sign,
    split_terms,
)
from starforge.core._weyl import WeylElement, merge_sign, weight

__all__ = [
    "DEFAULT_PROFILE",
    "I",
    "ONE",
    "ZERO",
    "ArityMismatch",
    "ArityOverflow",
    "CRational",
    "CheckFailed",
    "DegenerateOmega",
    "DegeneratePi1",
    "Exponent",
    "FiltrationViolation",
    "GrammarError",
    "HMatrix",
    "HSeries",
    "IncompatibleConnection",
    "NoConvergence",
    "NonConstantCocycle",
    "NonConstantZerothOrder",
    "NonDivisible",
    "NonInvertible",
    "NonInvertibleInitialCondition",
    "NonTermination",
    "NotAntisymmetric",
    "NotClosed",
    "NotDeltaFlat",
    "NotFormal",
    "ProfileMismatch",
    "ScalarLike",
    "StarForgeError",
    "TermMap",
    "TruncPoly",
    "TruncationProfile",
    "WeylElement",
    "ZeroElement",
    "ZerothOrderViolation",
    "accumulate",
    "add_exponents",
    "falling",
    "format_element",
    "format_scalar",
    "from_sympy",
    "merge_sign",
    "multi_falling",
    "parse_poly",
    "parse_scalar",
    "parse_series",
    "parse_term",
    "parse_weyl",
    "same_profile",
    "series_invert",
    "sort_sign",
    "split_terms",
    "to_sympy",
    "unit_exponent",
    "weight",
]
