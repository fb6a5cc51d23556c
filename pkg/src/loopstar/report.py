"""Deterministic verification reports.

A report is a list of check records plus the config echo and version
stamps.  Its canonical JSON rendering (sorted keys, fixed float format)
is a pure function of the run configuration: wall-clock timings are kept
out of the canonical body and shown only in the text summary, so repeated
runs of the same config produce byte-identical JSON.
"""

from __future__ import annotations

import json
import platform
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

CONVENTION_NOTES = (
    "covariance kernel: positive-definite hyperbolic branch; the sign-flipped "
    "exponential coefficient pair is the rejected alternative convention",
    "perturbation and deformed-channel sums run over primal (coord, freq) pairs "
    "for every retained frequency, pairing dual slots explicitly",
    "transform expansion keeps the minus sign inside the generator, which makes "
    "the alternating-sign series display and the exponential definition coincide",
)


@dataclass
class CheckRecord:
    """One verified property: residual vs tolerance plus instance bookkeeping."""

    suite: str
    check_id: str
    claim: str
    residual: float
    tolerance: float
    passed: bool
    n_instances: int
    seed: int
    observed: float = 0.0       # headline quantity (slope, ratio, ...) when not the residual
    wall_time: float = 0.0      # text summary only; never in canonical bytes


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    versions: dict = field(default_factory=dict)
    notes: tuple = CONVENTION_NOTES

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def total_time(self) -> float:
        return sum(r.wall_time for r in self.records)


def package_versions() -> dict:
    from . import __version__
    return {"loopstar": __version__, "numpy": np.__version__,
            "python": platform.python_version()}


def format_float(x: float) -> str:
    """17 significant digits: parses back to the identical double."""
    if isinstance(x, bool):
        raise TypeError("bool is not a float")
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite float {x!r} cannot enter a canonical report")
    return "%.17g" % x


def canonical_json(value, indent: int = 0) -> str:
    """Deterministic JSON: sorted object keys, fixed float formatting."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        keys = sorted(value)
        if any(not isinstance(k, str) for k in keys):
            raise TypeError("canonical JSON object keys must be strings")
        body = ",\n".join(f"{inner}{json.dumps(k)}: {canonical_json(value[k], indent + 1)}"
                          for k in keys)
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        body = ",\n".join(f"{inner}{canonical_json(v, indent + 1)}" for v in value)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if value is None:
        return "null"
    raise TypeError(f"cannot render {type(value).__name__} canonically")


def record_to_dict(record: CheckRecord) -> dict:
    return {
        "suite": record.suite,
        "check_id": record.check_id,
        "claim": record.claim,
        "residual": float(record.residual),
        "tolerance": float(record.tolerance),
        "passed": record.passed,
        "n_instances": record.n_instances,
        "seed": record.seed,
        "observed": float(record.observed),
    }


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "records": [record_to_dict(r) for r in report.records],
        "config": report.config,
        "versions": report.versions,
        "notes": list(report.notes),
        "all_passed": report.all_passed,
    }


def report_from_dict(doc: dict) -> VerificationReport:
    records = [CheckRecord(suite=r["suite"], check_id=r["check_id"], claim=r["claim"],
                           residual=r["residual"], tolerance=r["tolerance"],
                           passed=r["passed"], n_instances=r["n_instances"],
                           seed=r["seed"], observed=r.get("observed", 0.0))
               for r in doc.get("records", [])]
    return VerificationReport(records=records, config=doc.get("config", {}),
                              versions=doc.get("versions", {}),
                              notes=tuple(doc.get("notes", ())))


def text_summary(report: VerificationReport) -> str:
    lines = ["verification summary", "===================="]
    for r in report.records:
        verdict = "PASS" if r.passed else "FAIL"
        lines.append(f"[{verdict}] {r.suite}/{r.check_id}: residual {r.residual:.3e} "
                     f"(tol {r.tolerance:.1e}, n={r.n_instances}, {r.wall_time:.2f}s) - {r.claim}")
    n_pass = sum(r.passed for r in report.records)
    lines.append("")
    lines.append(f"{n_pass}/{len(report.records)} checks passed "
                 f"in {report.total_time():.1f}s total")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, path: Union[str, Path]) -> Path:
    """Write canonical JSON at `path` and the text summary alongside (.txt)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(report_to_dict(report)) + "\n", encoding="utf-8")
    txt = path.with_suffix(".txt")
    txt.write_text(text_summary(report), encoding="utf-8")
    return path


def load_report(path: Union[str, Path]) -> VerificationReport:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return report_from_dict(doc)
