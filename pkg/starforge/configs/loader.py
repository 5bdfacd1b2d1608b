"""Scenario files: ``[kind]`` headers, each followed by a YAML mapping.

    # comment lines and blank lines before the first header are ignored
    [bfield-equivalence]
    profile: 6,4,6,2
    pi: [[0, h], [-h, 0]]
    b: 1/2 dx(1,2)

Errors carry the 1-based line of the offending header, YAML token or
payload key.
"""

import re
from dataclasses import dataclass
from pathlib import Path

import yaml
from pydantic import TypeAdapter, ValidationError

from starforge.configs.scenarios import SCENARIO_KINDS, Scenario
from starforge.core import GrammarError, StarForgeError, TruncationProfile

_HEADER = re.compile(r"^\[(?P<kind>[^\]]*)\]\s*$")

_ADAPTER: TypeAdapter[Scenario] = TypeAdapter(Scenario)


class ScenarioValidationError(StarForgeError):
    """A section parsed but its payload failed validation."""

    def __init__(self, message: str, *, line: int, field: str | None = None):
        super().__init__(message)
        self.line = line
        self.field = field


@dataclass(frozen=True, slots=True)
class Section:
    kind: str
    line: int
    body: list[str]

    def key_line(self, key: str) -> int:
        """Line of ``key:`` inside the body, else the header line."""
        pattern = re.compile(rf"^{re.escape(key)}\s*:")
        for offset, text in enumerate(self.body, start=1):
            if pattern.match(text):
                return self.line + offset
        return self.line


def split_sections(text: str) -> list[Section]:
    """Raises GrammarError on content before the first header."""
    sections: list[Section] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        m = _HEADER.match(raw.strip())
        if m is not None:
            sections.append(Section(m["kind"].strip(), n, []))
        elif sections:
            sections[-1].body.append(raw)
        elif raw.strip() and not raw.lstrip().startswith("#"):
            raise GrammarError(f"line {n}: expected a [kind] header, got {raw!r}")
    return sections


def _load_body(section: Section) -> dict:
    try:
        body = yaml.safe_load("\n".join(section.body))
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = section.line + 1 + mark.line if mark is not None else section.line
        problem = getattr(exc, "problem", None) or str(exc)
        raise GrammarError(f"line {line}: {problem}") from exc
    if body is None:
        return {}
    if not isinstance(body, dict):
        raise GrammarError(
            f"line {section.line}: [{section.kind}] body is not a mapping"
        )
    if "kind" in body:
        line = section.key_line("kind")
        raise GrammarError(f"line {line}: 'kind' comes from the header")
    return body


def _validate(section: Section, data: dict) -> Scenario:
    try:
        return _ADAPTER.validate_python(data)
    except ValidationError as exc:
        err = exc.errors()[0]
        # loc[0] is the discriminator tag
        loc = [str(p) for p in err["loc"][1:]]
        field = ".".join(loc) or None
        line = section.key_line(loc[0]) if loc else section.line
        where = f"[{section.kind}] {field}" if field else f"[{section.kind}]"
        raise ScenarioValidationError(
            f"line {line}: {where}: {err['msg']}", line=line, field=field
        ) from exc


def load_scenarios(
    text: str, profile: TruncationProfile | None = None
) -> list[Scenario]:
    """Parse and validate every section; ``profile`` overrides the file's.

    Raises:
        GrammarError: on a bad header, unknown kind or malformed YAML.
        ScenarioValidationError: on a payload that fails validation.
    """
    scenarios = []
    for section in split_sections(text):
        if section.kind not in SCENARIO_KINDS:
            raise GrammarError(
                f"line {section.line}: unknown scenario kind [{section.kind}]"
            )
        data = {**_load_body(section), "kind": section.kind}
        if profile is not None:
            data["profile"] = profile
        scenarios.append(_validate(section, data))
    if not scenarios:
        raise GrammarError("scenario file has no [kind] sections")
    return scenarios


def load_scenario_file(
    path: str | Path, profile: TruncationProfile | None = None
) -> list[Scenario]:
    """Read a UTF-8 scenario file and hand it to :func:`load_scenarios`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise GrammarError(f"{path}: not UTF-8 text") from exc
    return load_scenarios(text, profile)


def dump_scenarios(scenarios: list[Scenario]) -> str:
    """Canonical text of validated scenarios; loading it gives them back."""
    blocks = []
    for s in scenarios:
        data = s.model_dump(mode="json", exclude={"kind"}, exclude_none=True)
        data["profile"] = str(s.profile)
        body = yaml.safe_dump(data, sort_keys=True, allow_unicode=True)
        blocks.append(f"[{s.kind}]\n{body}")
    return "\n".join(blocks)
