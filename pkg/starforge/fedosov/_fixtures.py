"""Hand-checked connection and Poisson data on the plane.

For ``pi = c(hbar) J`` a connection preserves ``pi`` exactly when each
``Gamma_i = (Gamma^k_il)_kl`` is trace-free, i.e.
``Gamma^1_i1 + Gamma^2_i2 = 0``. All data below is x-independent, so every
Fedosov identity is exact in the truncated ring; the curved fixtures have
``[Gamma_1, Gamma_2]`` invertible, which makes ``r - r^cl`` nonzero at
hbar^2 once ``Dy >= 6``.
"""

from __future__ import annotations

from dataclasses import dataclass

from starforge.core import HMatrix, HSeries, ScalarLike, TruncationProfile
from starforge.fedosov._connection import ConnectionData


@dataclass(frozen=True, slots=True)
class FedosovFixture:
    name: str
    connection: ConnectionData
    pi: HMatrix


def scaled_j(orders: dict[int, ScalarLike], profile: TruncationProfile) -> HMatrix:
    """``(sum_k orders[k] hbar^k) J`` on the plane."""
    c = HSeries.zero(profile)
    for k, value in orders.items():
        c = c + HSeries.constant(value, profile, hbar_power=k)
    zero = HSeries.zero(profile)
    return HMatrix([[zero, c], [-c, zero]], profile)


def _series(profile: TruncationProfile, *coeffs: ScalarLike) -> HSeries:
    out = HSeries.zero(profile)
    for k, value in enumerate(coeffs):
        out = out + HSeries.constant(value, profile, hbar_power=k)
    return out


def fedosov_fixtures(profile: TruncationProfile) -> list[FedosovFixture]:
    """``flat``, ``curved`` and ``curved-hbar`` (the last with ``pi_2 != 0``).

    Raises:
        ValueError: unless ``profile.dim == 2``.
    """
    if profile.dim != 2:
        raise ValueError("the Fedosov fixtures live on the plane")
    s = _series
    curved = ConnectionData.from_entries(
        {(1, 0, 0): s(profile, 1), (0, 1, 1): s(profile, 1, 1)}, profile
    )
    curved_hbar = ConnectionData.from_entries(
        {
            (0, 0, 0): s(profile, 0, 1),
            (1, 0, 1): s(profile, 0, -1),
            (1, 0, 0): s(profile, 1, 1),
            (0, 1, 1): s(profile, 2),
        },
        profile,
    )
    return [
        FedosovFixture("flat", ConnectionData.flat(profile), scaled_j({1: 1}, profile)),
        FedosovFixture("curved", curved, scaled_j({1: 1}, profile)),
        FedosovFixture("curved-hbar", curved_hbar, scaled_j({1: 1, 2: 1}, profile)),
    ]
