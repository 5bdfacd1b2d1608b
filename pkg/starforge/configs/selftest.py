"""Selftest configuration: which suites run, how many instances, how wide."""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from starforge.configs.base import check_profile_caps, coerce_profile
from starforge.core import DEFAULT_PROFILE, TruncationProfile

SuiteName = Literal[
    "moyal",
    "identities",
    "gauge",
    "normalizer",
    "bfield",
    "fedosov",
    "ode",
    "dgla",
    "transition",
    "stability",
]

SUITE_NAMES: tuple[SuiteName, ...] = (
    "moyal",
    "identities",
    "gauge",
    "normalizer",
    "bfield",
    "fedosov",
    "ode",
    "dgla",
    "transition",
    "stability",
)


class SelftestCfg(BaseModel):
    """Knobs of the built-in acceptance matrix.

    Instance counts default to the full matrix; tests shrink them. The
    profile must keep ``N >= 3``, ``Dx >= 4`` and ``Dy >= 6``: below that
    the randomized data and the curved fixtures no longer fit.
    """

    model_config = ConfigDict(extra="forbid")

    seed: int = 20240601
    profile: TruncationProfile = Field(default=DEFAULT_PROFILE)

    # Randomized instances per suite (per dimension where a suite runs on
    # both the plane and R^3)
    identities: int = Field(default=100, ge=1)
    gauge: int = Field(default=50, ge=1)
    normalizer: int = Field(default=10, ge=1)
    bfield: int = Field(default=5, ge=1)
    ode: int = Field(default=50, ge=1)
    dgla: int = Field(default=25, ge=1)

    # Suites are independent; at most this many run at once
    concurrency: int = Field(default=4, ge=1)
    suites: list[SuiteName] = Field(default_factory=lambda: list(SUITE_NAMES))

    @field_validator("profile", mode="before")
    @classmethod
    def _parse_profile(cls, value: Any) -> Any:
        return coerce_profile(value)

    @model_validator(mode="after")
    def _validate_profile(self) -> "SelftestCfg":
        p = check_profile_caps(self.profile)
        if p.hbar_order < 3 or p.x_degree < 4 or p.y_degree < 6:
            raise ValueError("selftest needs N >= 3, Dx >= 4 and Dy >= 6")
        if p.dim != 2:
            raise ValueError("selftest profiles are given on the plane")
        if len(set(self.suites)) != len(self.suites):
            raise ValueError("suites must not repeat")
        return self

    def selected(self) -> list[SuiteName]:
        """``suites`` in canonical order."""
        return [name for name in SUITE_NAMES if name in self.suites]
