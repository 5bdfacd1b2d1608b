"""Sections of the Weyl bundle on a chart: polynomial forms in (x, y, dx).

An element is a finite sum of terms ``c hbar^k x^a y^b dx^S`` with ``S`` a
strictly increasing tuple of (0-based) indices. The dx are Grassmann
generators; x and y commute with everything. The quotient kept is

    hbar^(N+1) + (x)^(Dx+1) + (filtration weight 2k + |b| + |S| > Dy)

which is an ideal for the plain product and for the fiberwise products,
and is preserved by delta, delta^-1 and the connection.
"""

from __future__ import annotations

from collections.abc import Callable

from starforge.core._errors import NonDivisible, ZeroElement
from starforge.core._poly import Exponent, multi_falling, unit_exponent
from starforge.core._profile import TruncationProfile
from starforge.core._scalar import CRational, ScalarLike
from starforge.core._series import HSeries
from starforge.core._terms import TermMap, accumulate, add_exponents

DxSet = tuple[int, ...]
WeylKey = tuple[int, Exponent, Exponent, DxSet]


def merge_sign(s: DxSet, t: DxSet) -> int:
    """Koszul sign of ``dx^s dx^t -> dx^(s u t)``; 0 if they overlap."""
    sign = 1
    for a in s:
        for b in t:
            if a == b:
                return 0
            if a > b:
                sign = -sign
    return sign


def merge(s: DxSet, t: DxSet) -> DxSet:
    return tuple(sorted(s + t))


def weight(key: WeylKey) -> int:
    """Filtration weight ``2k + |y| + |dx|`` of a term key."""
    k, _, y, dx = key
    return 2 * k + sum(y) + len(dx)


class WeylElement(TermMap[WeylKey]):
    """Element of Omega(U, S M)[[hbar]] on a polynomial chart."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key, profile: TruncationProfile) -> WeylKey:
        k, x, y, dx = key
        x, y = tuple(x), tuple(y)
        if len(x) != profile.dim or len(y) != profile.dim:
            raise ValueError(f"key {key} does not match dim={profile.dim}")
        dx = tuple(dx)
        if list(dx) != sorted(set(dx)):
            raise ValueError(f"dx-subset {dx} must be strictly increasing")
        if dx and (dx[0] < 0 or dx[-1] >= profile.dim):
            raise ValueError(f"dx-subset {dx} out of range")
        return (int(k), x, y, dx)

    @staticmethod
    def _keep(key: WeylKey, profile: TruncationProfile) -> bool:
        k, x, _, _ = key
        return (
            0 <= k <= profile.hbar_order
            and sum(x) <= profile.x_degree
            and weight(key) <= profile.y_degree
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, profile: TruncationProfile) -> WeylElement:
        return cls._raw({}, profile)

    @classmethod
    def one(cls, profile: TruncationProfile) -> WeylElement:
        z = (0,) * profile.dim
        return cls({(0, z, z, ()): 1}, profile)

    @classmethod
    def from_series(cls, s: HSeries) -> WeylElement:
        """Embed a function of (x, hbar) as a 0-form constant in y."""
        z = (0,) * s.profile.dim
        return cls([((k, x, z, ()), c) for (k, x), c in s.terms.items()], s.profile)

    @classmethod
    def y(cls, i: int, profile: TruncationProfile) -> WeylElement:
        z = (0,) * profile.dim
        return cls({(0, z, unit_exponent(i, profile.dim), ()): 1}, profile)

    @classmethod
    def dx(cls, i: int, profile: TruncationProfile) -> WeylElement:
        z = (0,) * profile.dim
        return cls({(0, z, z, (i,)): 1}, profile)

    @classmethod
    def monomial(
        cls,
        profile: TruncationProfile,
        *,
        c: ScalarLike = 1,
        hbar_power: int = 0,
        x: Exponent | None = None,
        y: Exponent | None = None,
        dx: DxSet = (),
    ) -> WeylElement:
        z = (0,) * profile.dim
        return cls({(hbar_power, x or z, y or z, tuple(dx)): c}, profile)

    @property
    def constant_term(self) -> CRational:
        z = (0,) * self.profile.dim
        return self.terms.get((0, z, z, ()), CRational())

    # -- gradings -----------------------------------------------------------

    def filtration_degree(self) -> int:
        """Minimal ``2k + |y| + |dx|`` over the stored terms.

        Raises:
            ZeroElement: for zero, whose degree is infinite.
        """
        if not self.terms:
            raise ZeroElement("filtration degree of zero is +infinity")
        return min(weight(key) for key in self.terms)

    def dx_degrees(self) -> set[int]:
        return {len(key[3]) for key in self.terms}

    def y_degrees(self) -> set[int]:
        return {sum(key[2]) for key in self.terms}

    def parity(self) -> int:
        """Common dx-degree parity (0 for zero); raises on mixed parity."""
        parities = {len(key[3]) % 2 for key in self.terms}
        if len(parities) > 1:
            raise ValueError("element has mixed dx-parity")
        return parities.pop() if parities else 0

    def dx_part(self, q: int) -> WeylElement:
        return self.filter(lambda key: len(key[3]) == q)

    def y_part(self, p: int) -> WeylElement:
        return self.filter(lambda key: sum(key[2]) == p)

    def hbar_part(self, k: int) -> WeylElement:
        return self.filter(lambda key: key[0] == k)

    def truncate_hbar(self, order: int) -> WeylElement:
        return self.filter(lambda key: key[0] <= order)

    def x_constant(self) -> WeylElement:
        return self.filter(lambda key: not any(key[1]))

    # -- products -----------------------------------------------------------

    def __mul__(self, other: WeylElement | HSeries | ScalarLike) -> WeylElement:
        """Graded-commutative product ``a b`` (Koszul sign on dx)."""
        if isinstance(other, HSeries):
            other = WeylElement.from_series(other)
        elif not isinstance(other, WeylElement):
            return self.scale(other)
        self._check(other)
        out: dict[WeylKey, CRational] = {}
        p = self.profile
        n_cap, x_cap, w_cap = p.hbar_order, p.x_degree, p.y_degree
        for ka, ca in self.terms.items():
            a_k, a_x, a_y, a_dx = ka
            wa = weight(ka)
            da = sum(a_x)
            for kb, cb in other.terms.items():
                b_k, b_x, b_y, b_dx = kb
                if (
                    a_k + b_k > n_cap
                    or wa + weight(kb) > w_cap
                    or da + sum(b_x) > x_cap
                ):
                    continue
                sign = merge_sign(a_dx, b_dx)
                if not sign:
                    continue
                key = (
                    a_k + b_k,
                    add_exponents(a_x, b_x),
                    add_exponents(a_y, b_y),
                    merge(a_dx, b_dx),
                )
                c = ca * cb
                accumulate(out, key, c if sign > 0 else -c)
        return WeylElement._raw(out, p)

    def __rmul__(self, other: HSeries | ScalarLike) -> WeylElement:
        if isinstance(other, HSeries):
            return WeylElement.from_series(other) * self
        return self.scale(other)

    def map_terms(
        self, fn: Callable[[WeylKey, CRational], list[tuple[WeylKey, CRational]]]
    ) -> WeylElement:
        """Apply a term-wise linear rule and re-truncate."""
        out: dict[WeylKey, CRational] = {}
        p = self.profile
        for key, c in self.terms.items():
            for new_key, new_c in fn(key, c):
                if WeylElement._keep(new_key, p):
                    accumulate(out, new_key, new_c)
        return WeylElement._raw(out, p)

    # -- derivations --------------------------------------------------------

    def diff_y(self, alpha: Exponent) -> WeylElement:
        """``d^alpha / dy^alpha`` (even, no signs)."""
        out: dict[WeylKey, CRational] = {}
        for (k, x, y, dx), c in self.terms.items():
            f = multi_falling(y, alpha)
            if f:
                ny = tuple(n - a for n, a in zip(y, alpha, strict=True))
                out[(k, x, ny, dx)] = c * f
        return WeylElement._raw(out, self.profile)

    def partial_y(self, i: int) -> WeylElement:
        return self.diff_y(unit_exponent(i, self.profile.dim))

    def partial_x(self, i: int) -> WeylElement:
        e = unit_exponent(i, self.profile.dim)
        out: dict[WeylKey, CRational] = {}
        for (k, x, y, dx), c in self.terms.items():
            if x[i]:
                nx = tuple(n - a for n, a in zip(x, e, strict=True))
                out[(k, nx, y, dx)] = c * x[i]
        return WeylElement._raw(out, self.profile)

    def dx_left(self, i: int) -> WeylElement:
        """Left multiplication by ``dx^i``."""

        def rule(key: WeylKey, c: CRational) -> list[tuple[WeylKey, CRational]]:
            k, x, y, dx = key
            if i in dx:
                return []
            before = sum(1 for j in dx if j < i)
            sign = -1 if before % 2 else 1
            return [((k, x, y, merge((i,), dx)), c * sign)]

        return self.map_terms(rule)

    def dx_derivative(self, i: int) -> WeylElement:
        """Left derivative ``d/d(dx^i)``: sign ``(-1)^position``."""
        out: dict[WeylKey, CRational] = {}
        for (k, x, y, dx), c in self.terms.items():
            if i not in dx:
                continue
            pos = dx.index(i)
            rest = dx[:pos] + dx[pos + 1 :]
            out[(k, x, y, rest)] = -c if pos % 2 else c
        return WeylElement._raw(out, self.profile)

    def y_times(self, i: int) -> WeylElement:
        e = unit_exponent(i, self.profile.dim)
        return self.map_terms(
            lambda key, c: [((key[0], key[1], add_exponents(key[2], e), key[3]), c)]
        )

    # -- hbar bookkeeping ---------------------------------------------------

    def divide_by_hbar(self) -> WeylElement:
        """Exact division by hbar.

        Raises:
            NonDivisible: if an hbar^0 term is present.
        """
        if any(key[0] == 0 for key in self.terms):
            raise NonDivisible("element has an hbar^0 part")
        return WeylElement._raw(
            {(k - 1, x, y, dx): c for (k, x, y, dx), c in self.terms.items()},
            self.profile,
        )

    def times_hbar(self, power: int = 1) -> WeylElement:
        return WeylElement(
            [((k + power, x, y, dx), c) for (k, x, y, dx), c in self.terms.items()],
            self.profile,
        )

    def sigma(self) -> HSeries:
        """Set ``y = dx = 0``."""
        z = (0,) * self.profile.dim
        return HSeries(
            [
                ((k, x), c)
                for (k, x, y, dx), c in self.terms.items()
                if y == z and not dx
            ],
            self.profile,
        )

    def __str__(self) -> str:
        from starforge.core._text import format_element

        return format_element(self)
