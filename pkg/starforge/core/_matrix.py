"""Square matrices over the truncated series ring."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from fractions import Fraction

import sympy

from starforge.core._errors import NonInvertible, NotAntisymmetric, NotFormal
from starforge.core._profile import TruncationProfile, same_profile
from starforge.core._scalar import CRational, ScalarLike
from starforge.core._series import HSeries


def to_sympy(c: CRational) -> sympy.Expr:
    re = sympy.Rational(c.re.numerator, c.re.denominator)
    im = sympy.Rational(c.im.numerator, c.im.denominator)
    return re + sympy.I * im


def from_sympy(expr: sympy.Expr) -> CRational:
    re, im = sympy.expand(expr).as_real_imag()
    re, im = sympy.Rational(re), sympy.Rational(im)
    return CRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


class HMatrix:
    """An ``n x n`` matrix whose entries are ``HSeries``.

    Used for pi, B, omega, connection coefficients and the normalizer
    generators. Immutable; rows are stored as tuples.
    """

    __slots__ = ("rows", "profile")

    rows: tuple[tuple[HSeries, ...], ...]
    profile: TruncationProfile

    def __init__(
        self, rows: Sequence[Sequence[HSeries]], profile: TruncationProfile
    ) -> None:
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("HMatrix must be square")
        for row in rows:
            for entry in row:
                same_profile(entry.profile, profile)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "profile", profile)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, profile: TruncationProfile) -> HMatrix:
        z = HSeries.zero(profile)
        return cls([[z] * n for _ in range(n)], profile)

    @classmethod
    def identity(cls, n: int, profile: TruncationProfile) -> HMatrix:
        return cls.from_scalars(
            [[int(i == j) for j in range(n)] for i in range(n)], profile
        )

    @classmethod
    def from_scalars(
        cls,
        rows: Sequence[Sequence[ScalarLike]],
        profile: TruncationProfile,
        hbar_power: int = 0,
    ) -> HMatrix:
        """Constant matrix times ``hbar^hbar_power``."""
        return cls(
            [
                [HSeries.constant(c, profile, hbar_power) for c in row]
                for row in rows
            ],
            profile,
        )

    @classmethod
    def from_function(
        cls,
        n: int,
        profile: TruncationProfile,
        fn: Callable[[int, int], HSeries],
    ) -> HMatrix:
        return cls([[fn(i, j) for j in range(n)] for i in range(n)], profile)

    # -- access -------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> HSeries:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HMatrix):
            return NotImplemented
        return self.profile == other.profile and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    def hbar_valuation(self) -> int | None:
        vals = [
            v
            for row in self.rows
            for e in row
            if (v := e.hbar_valuation()) is not None
        ]
        return min(vals, default=None)

    def map(self, fn: Callable[[HSeries], HSeries]) -> HMatrix:
        return HMatrix([[fn(e) for e in row] for row in self.rows], self.profile)

    def constant_part(self) -> sympy.Matrix:
        """The hbar^0, x^0 part as an exact SymPy matrix."""
        return sympy.Matrix(
            [[to_sympy(e.constant_term) for e in row] for row in self.rows]
        )

    # -- algebra ------------------------------------------------------------

    def _zip(self, other: HMatrix, fn) -> HMatrix:
        if self.size != other.size:
            raise ValueError(f"size mismatch {self.size} vs {other.size}")
        same_profile(self.profile, other.profile)
        return HMatrix(
            [
                [fn(a, b) for a, b in zip(ra, rb, strict=True)]
                for ra, rb in zip(self.rows, other.rows, strict=True)
            ],
            self.profile,
        )

    def __add__(self, other: HMatrix) -> HMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: HMatrix) -> HMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> HMatrix:
        return self.map(lambda e: -e)

    def scale(self, c: HSeries | ScalarLike) -> HMatrix:
        if isinstance(c, HSeries):
            return self.map(lambda e: e * c)
        return self.map(lambda e: e.scale(c))

    def __matmul__(self, other: HMatrix) -> HMatrix:
        if self.size != other.size:
            raise ValueError(f"size mismatch {self.size} vs {other.size}")
        same_profile(self.profile, other.profile)
        n = self.size
        zero = HSeries.zero(self.profile)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return HMatrix(out, self.profile)

    def transpose(self) -> HMatrix:
        n = self.size
        return HMatrix(
            [[self.rows[j][i] for j in range(n)] for i in range(n)],
            self.profile,
        )

    @property
    def T(self) -> HMatrix:  # noqa: N802
        return self.transpose()

    def is_antisymmetric(self) -> bool:
        return self == -self.transpose()

    def check_antisymmetric(self, what: str = "matrix") -> None:
        if not self.is_antisymmetric():
            raise NotAntisymmetric(f"{what} is not antisymmetric")

    def partial(self, i: int) -> HMatrix:
        return self.map(lambda e: e.partial(i))

    def reduce(self, profile: TruncationProfile) -> HMatrix:
        return HMatrix(
            [[e.reduce(profile) for e in row] for row in self.rows], profile
        )

    def truncate_hbar(self, order: int) -> HMatrix:
        return self.map(lambda e: e.truncate_hbar(order))

    def inverse(self) -> HMatrix:
        """Exact inverse: SymPy on the constant part, Neumann on the rest.

        Raises:
            NonInvertible: if the constant part is singular.
        """
        const = self.constant_part()
        if const.det() == 0:
            raise NonInvertible("constant part of the matrix is singular")
        c_inv = HMatrix.from_scalars(
            [[from_sympy(v) for v in const.inv().row(i)] for i in range(self.size)],
            self.profile,
        )
        one = HMatrix.identity(self.size, self.profile)
        u = one - c_inv @ self
        result = one
        power = one
        while True:
            power = power @ u
            if power.is_zero:
                break
            result = result + power
        return result @ c_inv

    def exp(self) -> HMatrix:
        """``sum M^n / n!`` for a matrix with vanishing constant part.

        Raises:
            NotFormal: if the constant part is nonzero (series would not
                terminate in the truncated ring).
        """
        if not self.constant_part().is_zero_matrix:
            raise NotFormal("exp needs a matrix in the maximal ideal")
        result = HMatrix.identity(self.size, self.profile)
        term = result
        n = 0
        while True:
            n += 1
            term = (term @ self).scale(CRational(Fraction(1, n)))
            if term.is_zero:
                return result
            result = result + term

    def __str__(self) -> str:
        return "[" + "; ".join(
            ", ".join(str(e) for e in row) for row in self.rows
        ) + "]"

    def __repr__(self) -> str:
        return f"HMatrix({self})"
