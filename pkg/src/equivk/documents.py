"""Group input documents and report documents (JSON).

Matrix entries may be JSON numbers or short exact strings:

    "3", "-1/2", "sqrt(3)/2", "-sqrt(2)/2", "cos(2pi/5)", "sin(2pi/5)"

Any of the forms may carry a leading minus sign, and ``sqrt(k)`` may omit
the denominator.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import numpy as np

SCHEMA_VERSION = 1

_SQRT = re.compile(r"^sqrt\((\d+)\)(?:/(\d+))?$")
_TRIG = re.compile(r"^(cos|sin)\(2pi/(\d+)\)$")
_RATIONAL = re.compile(r"^\d+(?:/\d+)?$")


class DocumentError(ValueError):
    pass


def parse_entry(entry) -> float:
    if isinstance(entry, bool):
        raise DocumentError(f"boolean is not a matrix entry: {entry!r}")
    if isinstance(entry, (int, float)):
        return float(entry)
    if not isinstance(entry, str):
        raise DocumentError(f"unsupported entry {entry!r}")
    text = entry.replace(" ", "")
    sign = 1.0
    if text.startswith("-"):
        sign, text = -1.0, text[1:]
    if _RATIONAL.match(text):
        try:
            return sign * float(Fraction(text))
        except ZeroDivisionError:
            raise DocumentError(f"zero denominator in {entry!r}") from None
    m = _SQRT.match(text)
    if m:
        den = int(m.group(2) or 1)
        if den == 0:
            raise DocumentError(f"zero denominator in {entry!r}")
        return sign * math.sqrt(int(m.group(1))) / den
    m = _TRIG.match(text)
    if m:
        k = int(m.group(2))
        if k == 0:
            raise DocumentError(f"zero denominator in {entry!r}")
        fn = math.cos if m.group(1) == "cos" else math.sin
        return sign * fn(2 * math.pi / k)
    try:
        return sign * float(text)
    except ValueError:
        raise DocumentError(f"cannot parse matrix entry {entry!r}") from None


@dataclass
class GroupInputDocument:
    dimension: int
    generators: list  # raw entries, kept verbatim for round-tripping
    tolerance: Optional[float] = None
    pinc_assertion: Optional[bool] = None
    label: Optional[str] = None

    @classmethod
    def from_dict(cls, d: dict) -> GroupInputDocument:
        if not isinstance(d, dict):
            raise DocumentError("input document must be a JSON object")
        unknown = set(d) - {"dimension", "generators", "tolerance", "pinc_assertion", "label"}
        if unknown:
            raise DocumentError(f"unknown keys: {sorted(unknown)}")
        try:
            dim = d["dimension"]
            gens = d["generators"]
        except KeyError as e:
            raise DocumentError(f"missing key {e.args[0]!r}") from None
        if not isinstance(dim, int) or dim < 1:
            raise DocumentError("dimension must be a positive integer")
        if not isinstance(gens, list) or not gens:
            raise DocumentError("generators must be a non-empty list of matrices")
        for g in gens:
            if (not isinstance(g, list) or len(g) != dim
                    or any(not isinstance(r, list) or len(r) != dim for r in g)):
                raise DocumentError(f"every generator must be a {dim}x{dim} matrix")
        return cls(dim, gens, d.get("tolerance"), d.get("pinc_assertion"), d.get("label"))

    @classmethod
    def loads(cls, text: str) -> GroupInputDocument:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise DocumentError(f"invalid JSON: {e}") from None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"dimension": self.dimension, "generators": self.generators}
        for key in ("tolerance", "pinc_assertion", "label"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def matrices(self) -> list[np.ndarray]:
        return [np.array([[parse_entry(x) for x in row] for row in g]) for g in self.generators]


@dataclass
class ReportDocument:
    input_echo: dict
    report: dict
    subreports: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self, with_timing: bool = True) -> dict:
        report = dict(self.report)
        if self.subreports:
            report["verification"] = self.subreports
        if with_timing and self.timing:
            report["timing"] = self.timing
        return {"schema_version": self.schema_version, "input_echo": self.input_echo,
                "report": report}

    def dumps(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> ReportDocument:
        report = dict(d["report"])
        subs = report.pop("verification", {})
        timing = report.pop("timing", {})
        return cls(d["input_echo"], report, subs, timing, d["schema_version"])

    @classmethod
    def loads(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))
