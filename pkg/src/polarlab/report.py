"""Pass/fail records of property checks and their serializations."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field


def _enc(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _dec(x):
    if x in ("inf", "-inf", "nan"):
        return float(x)
    return x


@dataclass(frozen=True)
class Check:
    """One property check. ``passed`` is always ``residual <= tolerance``."""

    check_id: str
    anchor: str
    residual: float
    tolerance: float
    detail: str = ""

    def __post_init__(self):
        object.__setattr__(self, "residual", float(self.residual))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "residual": _enc(self.residual),
            "tolerance": _enc(self.tolerance),
            "pass": self.passed,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["check_id"], d["anchor"], _dec(d["residual"]), _dec(d["tolerance"]), d.get("detail", ""))


@dataclass
class Report:
    scenario: str
    checks: list = field(default_factory=list)
    runtime_ms: float | None = None
    config: dict = field(default_factory=dict)

    def add(self, check_id, anchor, residual, tolerance, detail="") -> Check:
        c = Check(check_id, anchor, residual, tolerance, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id, c.anchor, c.residual, c.tolerance, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, check_id) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self):
        return {
            "scenario": self.scenario,
            "passed": self.passed,
            "runtime_ms": self.runtime_ms,
            "config": {k: _enc(v) for k, v in self.config.items()},
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["scenario"],
            [Check.from_dict(c) for c in d["checks"]],
            d.get("runtime_ms"),
            {k: _dec(v) for k, v in d.get("config", {}).items()},
        )

    def __eq__(self, other):
        return isinstance(other, Report) and self.to_dict() == other.to_dict()


def to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=False, allow_nan=False)


def from_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def _fmt(x: float) -> str:
    return repr(float(x)) if math.isfinite(x) else _enc(float(x))


def emit(report: Report, fmt: str = "json") -> str:
    """Deterministic text form of a report: ``json``, ``csv`` or ``human``."""
    if fmt == "json":
        return to_json(report) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "anchor", "residual", "tolerance", "pass"])
        for c in report.checks:
            w.writerow([c.check_id, c.anchor, _fmt(c.residual), _fmt(c.tolerance), int(c.passed)])
        return buf.getvalue()
    if fmt == "human":
        lines = []
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark} {c.check_id}: residual {c.residual:.3e} <= {c.tolerance:.3e} [{c.anchor}]")
        n_fail = len(report.failures())
        lines.append(f"{report.scenario}: {len(report.checks) - n_fail}/{len(report.checks)} checks passed")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def trace_csv(header, rows) -> str:
    """CSV text with a fixed header, e.g. ``("m", "gap")``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
