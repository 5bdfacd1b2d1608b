"""Fiberwise polydifferential cochains, their flat lift and the map nu.

A fiber cochain is ``sum c_alpha d_y^(alpha_1) (x) .. (x) d_y^(alpha_k)``
with Weyl-element coefficients. ``cochain_lift`` extends a cochain with
y-independent coefficients to a ``D``-flat one; ``nu_eval`` reads a flat
cochain as an operator on functions through the flat lift.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from fractions import Fraction
from itertools import product
from math import factorial, prod

from starforge.core import (
    ArityMismatch,
    CRational,
    Exponent,
    HSeries,
    NoConvergence,
    NotDeltaFlat,
    TruncationProfile,
    WeylElement,
    multi_falling,
    same_profile,
)
from starforge.fedosov._fiber import delta_inverse
from starforge.fedosov._recursion import GeometricData, flat_lift, iteration_bound
from starforge.hochschild import PolyDiffOp, interpolate, multi_indices
from starforge.utils import get_logger

logger = get_logger(__name__)

Slots = tuple[Exponent, ...]


class FiberCochain:
    """A y-polydifferential operator of fixed ``arity``."""

    __slots__ = ("coeffs", "arity", "profile")

    def __init__(
        self,
        coeffs: Mapping[Slots, WeylElement],
        arity: int,
        profile: TruncationProfile,
    ) -> None:
        clean: dict[Slots, WeylElement] = {}
        for alphas, c in coeffs.items():
            alphas = tuple(tuple(a) for a in alphas)
            if len(alphas) != arity:
                raise ArityMismatch(f"slots {alphas} do not match arity {arity}")
            same_profile(c.profile, profile)
            if c:
                clean[alphas] = c
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "profile", profile)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FiberCochain is immutable")

    @classmethod
    def from_op(cls, op: PolyDiffOp) -> FiberCochain:
        """Read ``d_x^alpha`` as ``d_y^alpha``; coefficients stay in ``x``."""
        return cls(
            {
                alphas: WeylElement.from_series(c)
                for alphas, c in op.coefficients().items()
            },
            op.arity,
            op.profile,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiberCochain):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _combine(self, other: FiberCochain, sign: int) -> FiberCochain:
        if other.arity != self.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        out = dict(self.coeffs)
        for alphas, c in other.coeffs.items():
            c = c if sign > 0 else -c
            out[alphas] = out[alphas] + c if alphas in out else c
        return FiberCochain(out, self.arity, self.profile)

    def __add__(self, other: FiberCochain) -> FiberCochain:
        return self._combine(other, 1)

    def __sub__(self, other: FiberCochain) -> FiberCochain:
        return self._combine(other, -1)

    def map_coefficients(
        self, fn: Callable[[WeylElement], WeylElement]
    ) -> FiberCochain:
        return FiberCochain(
            {alphas: fn(c) for alphas, c in self.coeffs.items()},
            self.arity,
            self.profile,
        )

    def slot_order(self) -> int:
        """Largest single-slot derivative order (0 for zero)."""
        return max(
            (sum(a) for alphas in self.coeffs for a in alphas), default=0
        )

    def is_delta_flat(self) -> bool:
        """Coefficients free of ``y`` and ``dx``."""
        return all(
            c.y_degrees() == {0} and c.dx_degrees() == {0}
            for c in self.coeffs.values()
        )

    def apply(self, *args: WeylElement) -> WeylElement:
        if len(args) != self.arity:
            raise ArityMismatch(
                f"cochain of arity {self.arity} applied to {len(args)} arguments"
            )
        out = WeylElement.zero(self.profile)
        derived: dict[tuple[int, Exponent], WeylElement] = {}
        for alphas, c in self.coeffs.items():
            value = c
            for slot, (alpha, a) in enumerate(zip(alphas, args, strict=True)):
                key = (slot, alpha)
                if key not in derived:
                    derived[key] = a.diff_y(alpha)
                value = value * derived[key]
                if not value:
                    break
            out = out + value
        return out

    def __call__(self, *args: WeylElement) -> WeylElement:
        return self.apply(*args)

    def lie_derivative(
        self, x: Callable[[WeylElement], WeylElement]
    ) -> FiberCochain:
        """``(L_X Q)(a..) = X(Q(a..)) - sum_i Q(.., X a_i, ..)`` for an odd
        derivation ``X`` and a cochain with 0-form coefficients."""

        def value(*args: WeylElement) -> WeylElement:
            out = x(self.apply(*args))
            for i in range(self.arity):
                moved = list(args)
                moved[i] = x(args[i])
                out = out - self.apply(*moved)
            return out

        return interpolate_fiber(value, self.arity, self.profile, self.slot_order())

    def __str__(self) -> str:
        parts = [f"({c}) d{list(alphas)}" for alphas, c in sorted(self.coeffs.items())]
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"FiberCochain({self})"


def interpolate_fiber(
    fn: Callable[..., WeylElement],
    arity: int,
    profile: TruncationProfile,
    max_order: int,
) -> FiberCochain:
    """The fiber cochain with slot orders ``<= max_order`` whose values on
    y-monomials are given by ``fn``."""
    monos = multi_indices(profile.dim, max_order)
    z = (0,) * profile.dim
    cache: dict[Exponent, WeylElement] = {}

    def mono(e: Exponent) -> WeylElement:
        if e not in cache:
            cache[e] = WeylElement({(0, z, e, ()): 1}, profile)
        return cache[e]

    coeffs: dict[Slots, WeylElement] = {}
    tuples = sorted(product(monos, repeat=arity), key=lambda t: sum(map(sum, t)))
    for betas in tuples:
        value = fn(*(mono(b) for b in betas))
        for alphas, c in coeffs.items():
            if not all(
                all(a <= b for a, b in zip(al, be, strict=True))
                for al, be in zip(alphas, betas, strict=True)
            ):
                continue
            factor = prod(
                multi_falling(be, al) for al, be in zip(alphas, betas, strict=True)
            )
            shifted = c
            for al, be in zip(alphas, betas, strict=True):
                rest = tuple(b - a for a, b in zip(al, be, strict=True))
                if any(rest):
                    shifted = shifted * mono(rest)
            value = value - shifted.scale(factor)
        if value:
            denom = prod(prod(factorial(b) for b in be) for be in betas)
            coeffs[betas] = value.scale(CRational(Fraction(1, denom)))
    return FiberCochain(coeffs, arity, profile)


def cochain_lift(p: FiberCochain | PolyDiffOp, data: GeometricData) -> FiberCochain:
    """``rho = P + delta^-1(L_nabla rho + L_A rho)``, flat for ``D``.

    Raises:
        NotDeltaFlat: if a coefficient of ``p`` depends on ``y`` or ``dx``.
        NoConvergence: if the iteration does not settle.
    """
    if isinstance(p, PolyDiffOp):
        p = FiberCochain.from_op(p)
    if not p.is_delta_flat():
        raise NotDeltaFlat(f"cochain coefficients depend on the fiber: {p}")

    def move(a: WeylElement) -> WeylElement:
        return data.nabla(a) + data.apply_tail(a)

    rho = p
    bound = iteration_bound(p.profile)
    for n in range(1, bound + 1):
        nxt = p + rho.lie_derivative(move).map_coefficients(delta_inverse)
        if nxt == rho:
            logger.debug("cochain lift converged after %d iterations", n)
            return rho
        rho = nxt
    raise NoConvergence(f"cochain lift did not converge within {bound} iterations")


def cochain_flatness_residual(rho: FiberCochain, data: GeometricData) -> FiberCochain:
    """``L_D rho``; zero exactly for flat cochains."""
    return rho.lie_derivative(data.differential)


def nu_eval(rho: FiberCochain, data: GeometricData) -> PolyDiffOp:
    """``nu(rho)(f..) = sigma(rho(tau f, ..))`` as a cochain on functions."""
    lifts: dict[str, WeylElement] = {}

    def lift(f: HSeries) -> WeylElement:
        key = str(f)
        if key not in lifts:
            lifts[key] = flat_lift(data, f)
        return lifts[key]

    def value(*fs: HSeries) -> HSeries:
        return rho.apply(*(lift(f) for f in fs)).sigma()

    return interpolate(value, rho.arity, rho.profile, rho.slot_order())


def nu_inverse(q: PolyDiffOp, data: GeometricData) -> FiberCochain:
    """The y-independent ``P`` with ``nu(cochain_lift(P)) = q``.

    ``nu`` of a lift agrees with ``P`` in top order, so the correction
    strictly lowers the order of the error at each step.

    Raises:
        NoConvergence: if the iteration does not settle.
    """
    p = FiberCochain.from_op(q)
    bound = iteration_bound(q.profile)
    for n in range(1, bound + 1):
        error = q - nu_eval(cochain_lift(p, data), data)
        if not error:
            logger.debug("nu inverse converged after %d iterations", n)
            return p
        p = p + FiberCochain.from_op(error)
    raise NoConvergence(f"nu inverse did not converge within {bound} iterations")
