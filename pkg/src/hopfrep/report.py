"""Structured verification output and its JSON / markdown rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "unknown", "unsupported")


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples into JSON-friendly values."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class Check:
    name: str
    status: str
    observed: Any = None
    expected: Any = None
    citation: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "observed": _plain(self.observed),
            "expected": _plain(self.expected),
            "citation": self.citation,
        }


@dataclass
class Report:
    family: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name, ok, observed=None, expected=None, citation="") -> Check:
        if isinstance(ok, str):
            status = ok
        else:
            status = "pass" if ok else "fail"
        c = Check(name, status, observed, expected, citation)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        self.data.update(other.data)
        return self

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def __iter__(self):
        return iter(self.checks)


def emit_json(instance: dict, families: list[Report], summary: dict | None = None) -> str:
    doc = {
        "instance": _plain(instance),
        "checks": [dict(c.as_dict(), family=r.family) for r in families for c in r.checks],
    }
    if summary is not None:
        doc["summary"] = _plain(summary)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if not isinstance(value, str):
        value = json.dumps(_plain(value), sort_keys=True)
    return value.replace("|", "\\|").replace("\n", " ")


def emit_markdown(instance: dict, families: list[Report], summary: dict | None = None) -> str:
    lines = ["# Instance", ""]
    lines.append("| parameter | value |")
    lines.append("|---|---|")
    for k in sorted(instance):
        lines.append(f"| {k} | {_cell(instance[k])} |")
    if summary:
        lines += ["", "## Summary", "", "| key | value |", "|---|---|"]
        for k in sorted(summary):
            lines.append(f"| {k} | {_cell(summary[k])} |")
    for r in families:
        lines += ["", f"## {r.family}", ""]
        lines.append("| check | status | observed | expected | claim |")
        lines.append("|---|---|---|---|---|")
        for c in r.checks:
            lines.append(
                f"| {_cell(c.name)} | {c.status} | {_cell(c.observed)} | {_cell(c.expected)} | {_cell(c.citation)} |"
            )
    return "\n".join(lines) + "\n"


def emit_report(instance: dict, families: list[Report], fmt: str = "json", summary: dict | None = None) -> str:
    if fmt == "json":
        return emit_json(instance, families, summary)
    if fmt == "md":
        return emit_markdown(instance, families, summary)
    raise ValueError(f"unknown format {fmt!r}")
