"""Text form of cochains: ``[coeff-series] d^(a_1)|..|d^(a_k)`` records."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from starforge.hochschild._cochain import PolyDiffOp


def format_op(op: PolyDiffOp) -> str:
    """One ``(series) D(a_1)|..|D(a_k)`` record per slot pattern."""
    if not op.terms:
        return f"0 (arity {op.arity})"
    records = []
    for alphas, coeff in op.coefficients().items():
        slots = "|".join("D(" + ",".join(map(str, a)) + ")" for a in alphas)
        records.append(f"({coeff}) {slots}" if slots else f"({coeff})")
    return " + ".join(records)
