"""``report-v1`` documents and their JSON / DOT renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedFormat

SCHEMA = "report-v1"
FIELDS = ("schema", "command", "algebra", "result", "certificate", "timing_ms", "warnings")


def jsonable(x):
    """Plain JSON data: Fractions become strings, tuple keys are joined."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    return str(x)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


@dataclass
class Report:
    command: dict
    algebra: str | None
    result: object
    certificate: list = field(default_factory=list)
    timing_ms: float | None = None
    warnings: list = field(default_factory=list)
    dot: str | None = None  # Hasse rendering, when the command produced one

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": jsonable(self.command),
            "algebra": self.algebra,
            "result": jsonable(self.result),
            "certificate": jsonable(self.certificate),
            "timing_ms": self.timing_ms,
            "warnings": list(self.warnings),
        }


def to_json(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> dict:
    """Parse and check the top-level shape of a report."""
    data = json.loads(text)
    if data.get("schema") != SCHEMA or tuple(data) != FIELDS:
        raise ValueError("not a report-v1 document")
    return data


def export(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "dot":
        if report.dot is None:
            raise UnsupportedFormat("dot output is only available for Hasse diagrams (enumerate)")
        return report.dot
    raise UnsupportedFormat(f"unknown output format {fmt!r}")
