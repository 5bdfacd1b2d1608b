"""Canonical text form of truncated elements.

A term is ``coeff h^k x^(a1,..,ad) y^(b1,..,bd) dx{i1,..}`` with trivial
factors omitted; ``dx`` indices are 1-based. Terms are joined by `` + `` in
canonical order and zero prints as ``0``. The coefficient may be omitted
when parsing, in which case it is 1.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from starforge.core._errors import GrammarError
from starforge.core._profile import TruncationProfile
from starforge.core._scalar import CRational, format_scalar

if TYPE_CHECKING:
    from starforge.core._poly import TruncPoly
    from starforge.core._series import HSeries
    from starforge.core._weyl import WeylElement

_HBAR = re.compile(r"^h(?:\^(\d+))?$")
_POWER = re.compile(r"^([xy])\^\((\d+(?:,\d+)*)\)$")
_DX = re.compile(r"^dx\{(\d+(?:,\d+)*)?\}$")

TermFields = tuple[CRational, int, tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def parse_scalar(text: str) -> CRational:
    """Parse ``p``, ``p/q``, ``r/s*i``, ``i`` or ``p/q+r/s*i``."""
    t = text.strip().replace(" ", "")
    if not t:
        raise GrammarError("empty coefficient")
    try:
        if not t.endswith("i"):
            return CRational(Fraction(t))
        body = t[:-1]
        if body.endswith("*"):
            body = body[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_text, im_text = body[:cut], body[cut:]
        else:
            re_text, im_text = "", body
        if im_text in ("", "+", "-"):
            im_text += "1"
        return CRational(Fraction(re_text or "0"), Fraction(im_text))
    except (ValueError, ZeroDivisionError) as exc:
        raise GrammarError(f"bad coefficient {text!r}") from exc


def _format_factors(
    k: int, x: tuple[int, ...], y: tuple[int, ...] | None, dx: tuple[int, ...]
) -> list[str]:
    parts = []
    if k:
        parts.append(f"h^{k}")
    if any(x):
        parts.append("x^(" + ",".join(map(str, x)) + ")")
    if y is not None and any(y):
        parts.append("y^(" + ",".join(map(str, y)) + ")")
    if dx:
        parts.append("dx{" + ",".join(str(i + 1) for i in dx) + "}")
    return parts


def format_term(
    c: CRational,
    k: int,
    x: tuple[int, ...],
    y: tuple[int, ...] | None = None,
    dx: tuple[int, ...] = (),
) -> str:
    return " ".join([format_scalar(c), *_format_factors(k, x, y, dx)])


def format_element(elem: Any) -> str:
    """Render a ``TruncPoly``, ``HSeries`` or ``WeylElement``."""
    from starforge.core._poly import TruncPoly
    from starforge.core._series import HSeries

    if not elem.terms:
        return "0"
    pieces = []
    for key, c in elem:
        if isinstance(elem, TruncPoly):
            pieces.append(format_term(c, 0, key))
        elif isinstance(elem, HSeries):
            pieces.append(format_term(c, key[0], key[1]))
        else:
            k, x, y, dx = key
            pieces.append(format_term(c, k, x, y, dx))
    return " + ".join(pieces)


def split_terms(text: str) -> list[str]:
    t = text.strip()
    if not t:
        raise GrammarError("empty element")
    return [p.strip() for p in re.split(r"\s\+\s", t)]


def parse_term(text: str, dim: int, *, allow: str) -> TermFields:
    """Parse a single term; ``allow`` lists the permitted factors (``hxyd``)."""
    tokens = text.split()
    if not tokens:
        raise GrammarError("empty term")
    coeff = CRational(Fraction(1))
    first = tokens[0]
    if not (
        _HBAR.match(first) or _POWER.match(first) or _DX.match(first)
    ):
        coeff = parse_scalar(first)
        tokens = tokens[1:]
    k = 0
    x = y = (0,) * dim
    dx: tuple[int, ...] = ()
    seen: set[str] = set()
    for tok in tokens:
        if m := _HBAR.match(tok):
            tag, k = "h", int(m.group(1) or 1)
        elif m := _POWER.match(tok):
            tag = m.group(1)
            exp = tuple(int(v) for v in m.group(2).split(","))
            if len(exp) != dim:
                raise GrammarError(f"{tok!r} needs {dim} exponents")
            if tag == "x":
                x = exp
            else:
                y = exp
        elif m := _DX.match(tok):
            tag = "d"
            idx = [int(v) - 1 for v in (m.group(1) or "").split(",") if v]
            if any(i < 0 or i >= dim for i in idx):
                raise GrammarError(f"dx index out of range in {tok!r}")
            if len(set(idx)) != len(idx):
                raise GrammarError(f"repeated dx index in {tok!r}")
            dx = tuple(idx)
        else:
            raise GrammarError(f"unrecognised factor {tok!r}")
        if tag not in allow:
            raise GrammarError(f"factor {tok!r} not allowed here")
        if tag in seen:
            raise GrammarError(f"factor {tag!r} given twice in {text!r}")
        seen.add(tag)
    return coeff, k, x, y, dx


def _parse_all(text: str, dim: int, allow: str) -> list[TermFields]:
    if text.strip() == "0":
        return []
    return [parse_term(t, dim, allow=allow) for t in split_terms(text)]


def sort_sign(dx: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``dx`` and the sorted tuple."""
    sign = 1
    items = list(dx)
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return sign, tuple(items)


def parse_poly(text: str, profile: TruncationProfile) -> TruncPoly:
    from starforge.core._poly import TruncPoly

    return TruncPoly(
        [(x, c) for c, _, x, _, _ in _parse_all(text, profile.dim, "x")],
        profile,
    )


def parse_series(text: str, profile: TruncationProfile) -> HSeries:
    from starforge.core._series import HSeries

    return HSeries(
        [((k, x), c) for c, k, x, _, _ in _parse_all(text, profile.dim, "hx")],
        profile,
    )


def parse_weyl(text: str, profile: TruncationProfile) -> WeylElement:
    """Parse a Weyl element; unsorted ``dx{..}`` picks up the Koszul sign."""
    from starforge.core._weyl import WeylElement

    terms = []
    for c, k, x, y, dx in _parse_all(text, profile.dim, "hxyd"):
        sign, dx = sort_sign(dx)
        terms.append(((k, x, y, dx), c if sign > 0 else -c))
    return WeylElement(terms, profile)
