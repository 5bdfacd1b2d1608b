"""Shared sparse term-map machinery for the truncated algebras."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from typing import Any, Generic, TypeVar

from starforge.core._profile import TruncationProfile, same_profile
from starforge.core._scalar import CRational, ScalarLike

K = TypeVar("K", bound=Hashable)
T = TypeVar("T", bound="TermMap[Any]")


def add_exponents(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p + q for p, q in zip(a, b, strict=True))


def accumulate(
    out: dict[Any, CRational], key: Any, value: CRational
) -> None:
    """``out[key] += value``, deleting the entry when it cancels."""
    prev = out.get(key)
    if prev is None:
        if value:
            out[key] = value
        return
    total = prev + value
    if total:
        out[key] = total
    else:
        del out[key]


class TermMap(Generic[K]):
    """Immutable sparse map ``key -> CRational`` tied to a profile.

    Subclasses decide which keys survive truncation (``_keep``) and how to
    multiply. Zero is the empty map; no stored coefficient is ever zero.
    """

    __slots__ = ("terms", "profile")

    terms: dict[K, CRational]
    profile: TruncationProfile

    def __init__(
        self,
        terms: Mapping[K, ScalarLike] | Iterable[tuple[K, ScalarLike]],
        profile: TruncationProfile,
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[K, CRational] = {}
        for key, value in items:
            key = self._normalize_key(key, profile)
            if not self._keep(key, profile):
                continue
            accumulate(clean, key, CRational.of(value))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "profile", profile)

    @classmethod
    def _raw(cls: type[T], terms: dict[Any, CRational], profile) -> T:
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "profile", profile)
        return obj

    def _like(self: T, terms: dict[Any, CRational]) -> T:
        """A new element of the same kind holding ``terms``."""
        return type(self)._raw(terms, self.profile)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _normalize_key(key: Any, profile: TruncationProfile) -> Any:
        return key

    @staticmethod
    def _keep(key: Any, profile: TruncationProfile) -> bool:
        raise NotImplementedError

    # -- container protocol -------------------------------------------------

    def __iter__(self) -> Iterator[tuple[K, CRational]]:
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0]))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.profile == other.profile and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    # -- linear structure ---------------------------------------------------

    def _check(self, other: TermMap[Any]) -> None:
        same_profile(self.profile, other.profile)

    def __add__(self: T, other: T) -> T:
        self._check(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            accumulate(out, key, value)
        return self._like(out)

    def __sub__(self: T, other: T) -> T:
        self._check(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            accumulate(out, key, -value)
        return self._like(out)

    def __neg__(self: T) -> T:
        return self._like({k: -v for k, v in self.terms.items()})

    def scale(self: T, c: ScalarLike) -> T:
        c = CRational.of(c)
        if not c:
            return self._like({})
        return self._like({k: v * c for k, v in self.terms.items()})

    def filter(self: T, predicate) -> T:
        """Keep only the terms whose key satisfies ``predicate``."""
        return self._like(
            {k: v for k, v in self.terms.items() if predicate(k)}
        )

    def reduce(self: T, profile: TruncationProfile) -> T:
        """Re-express under ``profile`` dropping everything it truncates."""
        return type(self)(
            [(k, v) for k, v in self.terms.items()],
            profile,
        )
