"""Base scenario model and the payload parsers every scenario shares.

`BaseScenario` is the data contract of one ``[kind]`` section of a scenario
file: a truncation profile plus kind-specific payload fields written in the
coefficient grammar. Subclasses set a ``Literal`` discriminator on ``kind``
and parse their payload in an ``after`` validator, so a scenario that
validates is one the runner can build.
"""

from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator

from starforge.core import (
    DEFAULT_PROFILE,
    HMatrix,
    NotFormal,
    TruncationProfile,
    parse_series,
)

MAX_HBAR_ORDER = 16
MAX_X_DEGREE = 8
MAX_Y_DEGREE = 10


def _as_text(value: Any) -> Any:
    # YAML turns ``1`` into an int; floats would silently lose exactness
    if isinstance(value, bool):
        raise ValueError("expected an expression, got a boolean")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        raise ValueError(f"floats are not exact; write {value!r} as p/q")
    return value


Text = Annotated[str, BeforeValidator(_as_text)]
"""A payload string in the coefficient grammar."""

MatrixRows = list[list[Text]]


def check_profile_caps(profile: TruncationProfile) -> TruncationProfile:
    """Raises ValueError above N=16, Dx=8 or Dy=10."""
    if profile.hbar_order > MAX_HBAR_ORDER:
        raise ValueError(f"hbar_order {profile.hbar_order} exceeds {MAX_HBAR_ORDER}")
    if profile.x_degree > MAX_X_DEGREE:
        raise ValueError(f"x_degree {profile.x_degree} exceeds {MAX_X_DEGREE}")
    if profile.y_degree > MAX_Y_DEGREE:
        raise ValueError(f"y_degree {profile.y_degree} exceeds {MAX_Y_DEGREE}")
    return profile


def coerce_profile(value: Any) -> Any:
    """Accept the CLI form ``"N,Dx,Dy,dim"`` wherever a profile is expected."""
    if isinstance(value, str):
        return TruncationProfile.parse(value)
    return value


def parse_matrix(rows: MatrixRows, profile: TruncationProfile) -> HMatrix:
    """A ``dim x dim`` matrix of series.

    Raises:
        ValueError: on a shape other than ``dim x dim``.
        GrammarError: on an entry that does not parse.
    """
    n = profile.dim
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"matrix must be {n} x {n}")
    return HMatrix([[parse_series(e, profile) for e in row] for row in rows], profile)


def constant_poisson_matrix(rows: MatrixRows, profile: TruncationProfile) -> HMatrix:
    """A constant, antisymmetric matrix without hbar^0 part.

    Raises:
        NotAntisymmetric: if the matrix is not antisymmetric.
        NotFormal: if it has an hbar^0 part.
        ValueError: on x-dependent entries or a bad shape.
    """
    m = parse_matrix(rows, profile)
    m.check_antisymmetric("Poisson matrix")
    if any(not e.is_scalar for row in m.rows for e in row):
        raise ValueError("Poisson matrix must have constant entries")
    if not m.truncate_hbar(0).is_zero:
        raise NotFormal("Poisson matrix has an hbar^0 part")
    return m


class BaseScenario(BaseModel):
    """Parent of every ``[kind]`` section; subclasses narrow ``kind``."""

    model_config = ConfigDict(extra="forbid")

    kind: str
    profile: TruncationProfile = Field(default=DEFAULT_PROFILE)

    @field_validator("profile", mode="before")
    @classmethod
    def _parse_profile(cls, value: Any) -> Any:
        return coerce_profile(value)

    @field_validator("profile")
    @classmethod
    def _cap_profile(cls, value: TruncationProfile) -> TruncationProfile:
        return check_profile_caps(value)
