"""Scenario kinds and the discriminated union over them.

One model per ``[kind]`` header. Payload strings use the coefficient
grammar (series ``1/2 h^2 x^(1,0)``, polyvectors ``h ∂(1,2)``, forms
``dx(1,2)``); matrices are YAML lists of rows. The ``after`` validators
build every payload once, so parse errors and violated preconditions
surface as validation errors naming the field.
"""

import re
from fractions import Fraction
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from starforge.configs.base import (
    BaseScenario,
    MatrixRows,
    Text,
    constant_poisson_matrix,
    parse_matrix,
)
from starforge.core import (
    CRational,
    DegeneratePi1,
    FiltrationViolation,
    HMatrix,
    HSeries,
    NotClosed,
    NotFormal,
    TermMap,
    ZerothOrderViolation,
    parse_scalar,
    parse_series,
)
from starforge.polyvector import (
    DiffForm,
    PolyVectorField,
    de_rham,
    parse_form,
    parse_polyvector,
)

_EXPONENT = re.compile(
    r"^(?:(?P<rational>.*\S)\s+\+\s+)?(?P<multiple>-?\d+(?:/\d+)?)?\s*2pi i$"
)


def leading_term(value: TermMap) -> str:
    """The smallest-key term of a nonzero element, in text form."""
    key = min(value.terms)
    return str(value.filter(lambda k: k == key))


def parse_exponent(text: str) -> tuple[CRational, Fraction]:
    """Parse ``r``, ``m 2pi i`` or ``r + m 2pi i`` into ``(r, m)``."""
    t = text.strip()
    m = _EXPONENT.match(t)
    if m is None:
        return parse_scalar(t), Fraction(0)
    rational = parse_scalar(m["rational"]) if m["rational"] else CRational.of(0)
    return rational, Fraction(m["multiple"] or "1")


def parse_pair(key: str) -> tuple[int, int]:
    """``"12"`` or ``"1,2"`` to the chart pair ``(1, 2)``."""
    parts = key.split(",") if "," in key else list(key)
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise ValueError(f"cocycle key {key!r} must name two charts")
    a, b = (int(p) for p in parts)
    if a == b or min(a, b) < 1:
        raise ValueError(f"cocycle key {key!r} must name two distinct charts")
    return a, b


def _closed_form(text: str, profile, what: str) -> DiffForm:
    b = parse_form(text, profile)
    if b.degrees() - {2}:
        raise ValueError(f"{what} must be a 2-form")
    db = de_rham(b)
    if db:
        raise NotClosed(
            f"{what} is not closed: dB has {len(db)} terms, first {leading_term(db)}"
        )
    return b


class ProductCase(BaseModel):
    """An expected value ``f * g = value``."""

    model_config = ConfigDict(extra="forbid")

    f: Text
    g: Text
    value: Text


class MoyalScenario(BaseScenario):
    """Associativity and Maurer-Cartan checks for a constant ``pi``."""

    kind: Literal["moyal"] = "moyal"
    pi: MatrixRows
    max_degree: int | None = Field(default=None, ge=0)
    products: list[ProductCase] = Field(default_factory=list)

    def poisson_matrix(self) -> HMatrix:
        return constant_poisson_matrix(self.pi, self.profile)

    @model_validator(mode="after")
    def _validate_payload(self) -> "MoyalScenario":
        self.poisson_matrix()
        for case in self.products:
            for text in (case.f, case.g, case.value):
                parse_series(text, self.profile)
        return self


class NormalizerScenario(BaseScenario):
    """Fiberwise and base equivalence to ``hbar pi_1``."""

    kind: Literal["normalizer"] = "normalizer"
    pi: MatrixRows
    max_degree: int | None = Field(default=None, ge=0)

    def poisson_matrix(self) -> HMatrix:
        return constant_poisson_matrix(self.pi, self.profile)

    @model_validator(mode="after")
    def _validate_payload(self) -> "NormalizerScenario":
        m = self.poisson_matrix()
        pi1 = m.map(lambda e: e.filter(lambda key: key[0] == 1).shift(-1))
        if pi1.constant_part().det() == 0:
            raise DegeneratePi1("pi_1 is singular")
        return self


class BFieldScenario(BaseScenario):
    """Equivalence flow of Moyal products under a constant closed ``B``."""

    kind: Literal["bfield-equivalence"] = "bfield-equivalence"
    pi: MatrixRows
    b: Text
    max_degree: int | None = Field(default=None, ge=0)

    def poisson_matrix(self) -> HMatrix:
        return constant_poisson_matrix(self.pi, self.profile)

    def b_field(self) -> DiffForm:
        return _closed_form(self.b, self.profile, "B-field")

    @model_validator(mode="after")
    def _validate_payload(self) -> "BFieldScenario":
        self.poisson_matrix()
        if not self.b_field().is_constant():
            raise ValueError("B-field must have constant coefficients")
        return self


class TransitionScenario(BaseScenario):
    """Transition functions of a constant cocycle on three charts."""

    kind: Literal["transition-demo"] = "transition-demo"
    pi: MatrixRows
    cocycle: dict[str, Text]
    winding: int = 0

    def poisson_matrix(self) -> HMatrix:
        return constant_poisson_matrix(self.pi, self.profile)

    def exponents(self) -> dict[tuple[int, int], tuple[CRational, Fraction]]:
        return {
            parse_pair(key): parse_exponent(text)
            for key, text in self.cocycle.items()
        }

    @model_validator(mode="after")
    def _validate_payload(self) -> "TransitionScenario":
        self.poisson_matrix()
        charts = {c for pair in self.exponents() for c in pair}
        if charts != {1, 2, 3}:
            raise ValueError("the cocycle must live on charts 1, 2 and 3")
        return self


class GaugeScenario(BaseScenario):
    """The B-field action on a formal bivector, two ways."""

    kind: Literal["gauge"] = "gauge"
    pi: Text
    b: Text
    b2: Text | None = None

    def bivector(self) -> PolyVectorField:
        pi = parse_polyvector(self.pi, self.profile)
        if pi.degrees() - {2}:
            raise ValueError("pi must be a bivector")
        if pi.hbar_part(0):
            raise NotFormal(f"pi has an hbar^0 part: {pi.hbar_part(0)}")
        return pi

    def b_fields(self) -> list[DiffForm]:
        texts = [self.b] if self.b2 is None else [self.b, self.b2]
        return [_closed_form(t, self.profile, "B-field") for t in texts]

    @model_validator(mode="after")
    def _validate_payload(self) -> "GaugeScenario":
        self.bivector()
        self.b_fields()
        return self


FixtureName = Literal["flat", "curved", "curved-hbar"]


class FedosovScenario(BaseScenario):
    """The Fedosov engine on a built-in fixture or on explicit data.

    ``gamma`` maps ``"k,i,j"`` (1-based) to ``Gamma^k_ij``; entries are
    symmetrized in ``i, j``. A classical run skips the comparison with
    the original product, which needs the quantum state.
    """

    kind: Literal["fedosov"] = "fedosov"
    fixture: FixtureName | None = None
    pi: MatrixRows | None = None
    gamma: dict[str, Text] = Field(default_factory=dict)
    mode: Literal["quantum", "classical"] = "quantum"
    max_degree: int = Field(default=2, ge=0)

    def poisson_matrix(self) -> HMatrix:
        if self.pi is None:
            raise ValueError("no explicit pi (fixture scenario)")
        m = parse_matrix(self.pi, self.profile)
        m.check_antisymmetric("Poisson matrix")
        if not m.truncate_hbar(0).is_zero:
            raise NotFormal("Poisson matrix has an hbar^0 part")
        return m

    def christoffels(self) -> dict[tuple[int, int, int], HSeries]:
        out = {}
        d = self.profile.dim
        for key, text in self.gamma.items():
            parts = [p.strip() for p in key.split(",")]
            if len(parts) != 3 or not all(p.isdigit() for p in parts):
                raise ValueError(f"gamma key {key!r} must be 'k,i,j'")
            k, i, j = (int(p) - 1 for p in parts)
            if not all(0 <= v < d for v in (k, i, j)):
                raise ValueError(f"gamma key {key!r} out of range for dim {d}")
            out[(k, i, j)] = parse_series(text, self.profile)
        return out

    @model_validator(mode="after")
    def _validate_payload(self) -> "FedosovScenario":
        if (self.fixture is None) == (self.pi is None):
            raise ValueError("give exactly one of 'fixture' and 'pi'")
        if self.fixture is not None:
            if self.gamma:
                raise ValueError("a fixture scenario takes no 'gamma'")
            if self.profile.dim != 2:
                raise ValueError("the built-in fixtures live on the plane")
            return self
        self.poisson_matrix()
        self.christoffels()
        return self


class OdeScenario(BaseScenario):
    """``dv/dt = w + D v`` with ``D`` a multiplication operator.

    ``w`` and ``d`` map powers of ``t`` to series. ``d0`` adds the
    exponential-prefactor problem ``df/dt = (d0 + D) f, f(0) = v0``;
    ``exponent`` with ``pi`` adds the Moyal star exponential.
    """

    kind: Literal["ode"] = "ode"
    v0: Text
    w: dict[int, Text] = Field(default_factory=dict)
    d: dict[int, Text] = Field(default_factory=dict)
    d0: Text | None = None
    pi: MatrixRows | None = None
    exponent: Text | None = None

    def initial(self) -> HSeries:
        return parse_series(self.v0, self.profile)

    def _raising(self, entries: dict[int, str], what: str) -> dict[int, HSeries]:
        out = {}
        for n, text in entries.items():
            if n < 0:
                raise ValueError(f"{what} has a negative power of t")
            s = parse_series(text, self.profile)
            if s.truncate_hbar(0):
                raise ZerothOrderViolation(f"{what} has an hbar^0 part at t^{n}")
            out[n] = s
        return out

    def source(self) -> dict[int, HSeries]:
        return self._raising(self.w, "w")

    def multipliers(self) -> dict[int, HSeries]:
        return self._raising(self.d, "D")

    def scalar_d0(self) -> CRational | None:
        return None if self.d0 is None else parse_scalar(self.d0)

    def poisson_matrix(self) -> HMatrix | None:
        if self.pi is None:
            return None
        return constant_poisson_matrix(self.pi, self.profile)

    def star_exponent(self) -> HSeries | None:
        if self.exponent is None:
            return None
        return parse_series(self.exponent, self.profile)

    @model_validator(mode="after")
    def _validate_payload(self) -> "OdeScenario":
        self.initial()
        self.source()
        self.multipliers()
        self.scalar_d0()
        if (self.pi is None) != (self.exponent is None):
            raise ValueError("'exponent' and 'pi' go together")
        self.poisson_matrix()
        self.star_exponent()
        return self


class DglaSuiteScenario(BaseScenario):
    """Maurer-Cartan checks in the polyvector DGLA."""

    kind: Literal["dgla-suite"] = "dgla-suite"
    alpha: Text
    xi: Text
    eta: Text | None = None

    def _field(self, text: str, degree: int, what: str) -> PolyVectorField:
        v = parse_polyvector(text, self.profile)
        if v.degrees() - {degree}:
            raise ValueError(f"{what} must have arity {degree}")
        f = v.hbar_valuation()
        if f is not None and f < 1:
            raise FiltrationViolation(f"{what} has filtration degree {f} < 1")
        return v

    def mc_element(self) -> PolyVectorField:
        return self._field(self.alpha, 2, "alpha")

    def gauges(self) -> list[PolyVectorField]:
        texts = [self.xi] if self.eta is None else [self.xi, self.eta]
        return [self._field(t, 1, "gauge element") for t in texts]

    @model_validator(mode="after")
    def _validate_payload(self) -> "DglaSuiteScenario":
        self.mc_element()
        self.gauges()
        return self


Scenario = Annotated[
    Union[
        MoyalScenario,
        NormalizerScenario,
        BFieldScenario,
        TransitionScenario,
        GaugeScenario,
        FedosovScenario,
        OdeScenario,
        DglaSuiteScenario,
    ],
    Field(discriminator="kind"),
]

SCENARIO_KINDS = (
    "moyal",
    "normalizer",
    "bfield-equivalence",
    "transition-demo",
    "gauge",
    "fedosov",
    "ode",
    "dgla-suite",
)
