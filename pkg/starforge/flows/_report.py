"""Residual reports: one line per check, plus an optional JSON mirror.

A check records how many terms a residual has and its first nonzero term.
Wall time is kept on every group but only printed on request, so two runs
over the same input give byte-identical reports.
"""

from collections.abc import Iterable, Mapping
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from starforge.configs import leading_term
from starforge.core import HMatrix, TermMap
from starforge.fedosov import FiberCochain
from starforge.ode import TPolySeries
from starforge.polyvector import GenSection


def summarize(value: object) -> tuple[int, str | None]:
    """``(term count, first nonzero term)`` of a residual of any carrier."""
    if isinstance(value, TermMap):
        return len(value), leading_term(value) if value else None
    if isinstance(value, HMatrix):
        n = value.size
        return _summarize_items(
            (f"[{i + 1},{j + 1}]", value[i, j]) for i in range(n) for j in range(n)
        )
    if isinstance(value, TPolySeries):
        return _summarize_items((f"t^{n}", v) for n, v in value.coeffs.items())
    if isinstance(value, GenSection):
        return _summarize_items([("vector", value.vec), ("form", value.form)])
    if isinstance(value, FiberCochain):
        return _summarize_items(
            (f"d_y{alphas}", c) for alphas, c in sorted(value.coeffs.items())
        )
    if isinstance(value, Mapping):
        return _summarize_items((str(k), v) for k, v in sorted(value.items()))
    if isinstance(value, (list, tuple)):
        return _summarize_items((f"#{i}", v) for i, v in enumerate(value))
    raise TypeError(f"cannot summarize a {type(value).__name__}")


def _summarize_items(items: Iterable[tuple[str, object]]) -> tuple[int, str | None]:
    total, first = 0, None
    for label, v in items:
        n, f = summarize(v)
        total += n
        if first is None and f is not None:
            first = f"{label}: {f}"
    return total, first


class Check(BaseModel):
    """One named residual; ``expect="nonzero"`` marks a witness."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    terms: int
    first: str | None = None
    expect: Literal["zero", "nonzero"] = "zero"

    @property
    def passed(self) -> bool:
        return self.terms == 0 if self.expect == "zero" else self.terms > 0

    def line(self) -> str:
        out = f"{self.name}: {self.terms} terms"
        if self.first is not None:
            out += f", first {self.first}"
        if self.expect == "nonzero":
            out += " (witness)"
        if not self.passed:
            out += "  FAILED"
        return out


def residual_check(
    name: str, value: object, expect: Literal["zero", "nonzero"] = "zero"
) -> Check:
    terms, first = summarize(value)
    return Check(name=name, terms=terms, first=first, expect=expect)


def family_check(name: str, values: Iterable[object]) -> Check:
    """One check over many instances; ``first`` names the first bad one."""
    total, first = 0, None
    for i, v in enumerate(values):
        n, f = summarize(v)
        total += n
        if first is None and f is not None:
            first = f"instance {i}: {f}"
    return Check(name=name, terms=total, first=first)


def equality_check(name: str, got: object, want: object) -> Check:
    """Equality of values without a subtraction (SymPy scalars, strings)."""
    if got == want:
        return Check(name=name, terms=0)
    return Check(name=name, terms=1, first=f"got {got}, want {want}")


class CheckGroup(BaseModel):
    """The checks of one scenario or one selftest suite."""

    model_config = ConfigDict(extra="forbid")

    title: str
    checks: list[Check] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    @property
    def failed_checks(self) -> int:
        return sum(not c.passed for c in self.checks) + (self.error is not None)

    def lines(self, timing: bool = False) -> list[str]:
        out = [f"[{self.title}]"]
        out += [f"  {c.line()}" for c in self.checks]
        out += [f"  {n}" for n in self.notes]
        if self.error is not None:
            out.append(f"  error: {self.error}")
        if timing:
            out.append(f"  time: {self.seconds:.3f}s")
        out.append(f"  status: {'ok' if self.passed else 'FAILED'}")
        return out


class Report(BaseModel):
    """What ``run`` and ``selftest`` print."""

    model_config = ConfigDict(extra="forbid")

    command: Literal["run", "selftest"]
    source: str
    profile: str
    groups: list[CheckGroup] = Field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.groups)

    def table(self, timing: bool = False) -> list[str]:
        """Per-group summary, one row each."""
        width = max((len(g.title) for g in self.groups), default=5)
        head = f"{'group':<{width}}  checks  failed  status"
        rows = [head + ("     time" if timing else "")]
        for g in self.groups:
            row = (
                f"{g.title:<{width}}  {len(g.checks):>6}  {g.failed_checks:>6}  "
                f"{'PASS' if g.passed else 'FAIL':<6}"
            )
            if timing:
                row += f"  {g.seconds:>6.2f}s"
            rows.append(row)
        return rows

    def lines(self, timing: bool = False) -> list[str]:
        out = [f"{self.command}: {self.source}", f"profile: {self.profile}"]
        for g in self.groups:
            out += g.lines(timing)
        out += self.table(timing)
        if timing:
            out.append(f"total time: {self.seconds:.3f}s")
        failed = sum(g.failed_checks for g in self.groups)
        out.append("result: ok" if self.passed else f"result: FAILED ({failed})")
        return out

    def to_json(self, timing: bool = False) -> str:
        exclude = (
            None if timing else {"seconds": True, "groups": {"__all__": {"seconds"}}}
        )
        return self.model_dump_json(indent=2, exclude=exclude)
