"""Text form of polyvectors and forms: ``coeff h^k x^(..) d(1,2)``.

Polyvector components are tagged ``∂(i1,..,ik)`` (``d(..)`` is accepted
on input) and form components ``dx(i1,..,ik)``; indices are 1-based.
"""

from __future__ import annotations

import re

from starforge.core import (
    CRational,
    GrammarError,
    TruncationProfile,
    format_scalar,
    parse_term,
    sort_sign,
    split_terms,
)
from starforge.polyvector._fields import DiffForm, PolyVectorField, SuperField

_VEC_TAG = re.compile(r"^(?:∂|d)\((\d+(?:,\d+)*)?\)$")
_FORM_TAG = re.compile(r"^dx\((\d+(?:,\d+)*)?\)$")


def format_field(f: SuperField) -> str:
    if not f.terms:
        return "0"
    tag = "∂" if isinstance(f, PolyVectorField) else "dx"
    pieces = []
    for (k, x, odd), c in f:
        parts = [format_scalar(c)]
        if k:
            parts.append(f"h^{k}")
        if any(x):
            parts.append("x^(" + ",".join(map(str, x)) + ")")
        if odd:
            parts.append(f"{tag}(" + ",".join(str(i + 1) for i in odd) + ")")
        pieces.append(" ".join(parts))
    return " + ".join(pieces)


def _parse(text: str, profile: TruncationProfile, tag: re.Pattern[str]):
    if text.strip() == "0":
        return []
    terms: list[tuple[tuple, CRational]] = []
    for piece in split_terms(text):
        tokens = piece.split()
        odd: tuple[int, ...] = ()
        if tokens and (m := tag.match(tokens[-1])):
            odd = tuple(int(v) - 1 for v in (m.group(1) or "").split(",") if v)
            tokens = tokens[:-1]
            if any(i < 0 or i >= profile.dim for i in odd):
                raise GrammarError(f"index out of range in {piece!r}")
            if len(set(odd)) != len(odd):
                continue
        c, k, x, _, _ = (
            parse_term(" ".join(tokens), profile.dim, allow="hx")
            if tokens
            else (CRational.of(1), 0, (0,) * profile.dim, None, None)
        )
        sign, odd = sort_sign(odd)
        terms.append(((k, x, odd), c if sign > 0 else -c))
    return terms


def parse_polyvector(text: str, profile: TruncationProfile) -> PolyVectorField:
    return PolyVectorField(_parse(text, profile, _VEC_TAG), profile)


def parse_form(text: str, profile: TruncationProfile) -> DiffForm:
    return DiffForm(_parse(text, profile, _FORM_TAG), profile)
