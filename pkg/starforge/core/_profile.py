"""The truncation profile: the quotient ring every computation lives in."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from starforge.core._errors import ProfileMismatch


class TruncationProfile(BaseModel):
    """Engine-wide truncation bounds.

    Scalars live in ``Q(i)[[hbar]]`` modulo ``hbar^(N+1)``, base polynomials
    modulo ``(x)^(Dx+1)``. Fiber (Weyl) elements are additionally cut at
    filtration weight ``2k + |y| + |dx| > Dy``, which in particular keeps
    ``|y| <= Dy``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    hbar_order: int = Field(default=6, ge=0)
    x_degree: int = Field(default=4, ge=0)
    y_degree: int = Field(default=6, ge=0)
    dim: int = Field(default=2, ge=1)

    @property
    def fiber_hbar_order(self) -> int:
        """Highest hbar power a fiberwise product determines exactly."""
        return min(self.hbar_order, self.y_degree // 2)

    def with_bounds(self, **changes: int) -> TruncationProfile:
        """Copy with some bounds replaced (validated)."""
        return TruncationProfile(**{**self.model_dump(), **changes})

    def covers(self, other: TruncationProfile) -> bool:
        """True when ``self`` keeps at least everything ``other`` keeps."""
        return (
            self.dim == other.dim
            and self.hbar_order >= other.hbar_order
            and self.x_degree >= other.x_degree
            and self.y_degree >= other.y_degree
        )

    @classmethod
    def parse(cls, text: str) -> TruncationProfile:
        """Parse the CLI form ``N,Dx,Dy,dim``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"profile must be N,Dx,Dy,dim, got {text!r}")
        n, dx, dy, dim = (int(p) for p in parts)
        return cls(hbar_order=n, x_degree=dx, y_degree=dy, dim=dim)

    def __str__(self) -> str:
        return (
            f"{self.hbar_order},{self.x_degree},{self.y_degree},{self.dim}"
        )


DEFAULT_PROFILE = TruncationProfile()


def same_profile(a: TruncationProfile, b: TruncationProfile) -> None:
    """Raise ``ProfileMismatch`` unless ``a == b``."""
    if a is b:
        return
    if a != b:
        raise ProfileMismatch(f"profiles differ: ({a}) vs ({b})")
