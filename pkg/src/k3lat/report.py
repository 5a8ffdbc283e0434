"""Reports for scenario runs: per-assertion records, text and JSON output.

The JSON layout is versioned (``schema`` field) and emitted with sorted
keys so two runs of the same scenario are byte-identical once timing is
omitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cones import Exhausted, ReflectionChain, Witness, WitnessClass

ENGINE_NAME = "k3lat"
ENGINE_VERSION = "0.1.0"
SCHEMA = "k3lat-report/1"


def describe_certificate(certificate) -> str | None:
    """Flatten any oracle certificate into one printable line."""
    if certificate is None:
        return None
    if isinstance(certificate, str):
        return certificate
    if isinstance(certificate, Witness):
        terms = " + ".join(
            (f"{mult}*" if mult != 1 else "") + str(list(cls.coords))
            for cls, mult in certificate.parts)
        return f"effective sum {terms}" if terms else "empty sum"
    if isinstance(certificate, WitnessClass):
        base = f"class {list(certificate.cls.coords)}"
        return f"{base}: {certificate.reason}" if certificate.reason else base
    if isinstance(certificate, Exhausted):
        out = certificate.description
        if certificate.candidates_examined:
            out += f" ({certificate.candidates_examined} candidates examined)"
        return out
    if isinstance(certificate, ReflectionChain):
        out = f"chain of {len(certificate.roots)} root reflections"
        if certificate.sign_flipped:
            out += ", sign flipped"
        return out
    return str(certificate)


@dataclass(frozen=True)
class AssertionRecord:
    index: int
    line: int
    operation: str
    mode: str           # "assert" | "flag"
    status: str         # "pass" | "fail" | "flagged"
    expected: object
    actual: object
    certificate: str | None
    wall_ms: float
    text: str


@dataclass(frozen=True)
class Report:
    source: str
    max_degree: int | None
    records: tuple[AssertionRecord, ...]
    passed: int
    failed: int
    flagged: int
    total_wall_ms: float

    @classmethod
    def collect(cls, source: str, max_degree: int | None,
                records: list[AssertionRecord]) -> Report:
        return cls(
            source=source,
            max_degree=max_degree,
            records=tuple(records),
            passed=sum(1 for r in records if r.status == "pass"),
            failed=sum(1 for r in records if r.status == "fail"),
            flagged=sum(1 for r in records if r.status == "flagged"),
            total_wall_ms=sum(r.wall_ms for r in records),
        )

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def warnings(self) -> list[str]:
        return [
            f"flagged: line {r.line}: {r.text} -- computed "
            f"{json.dumps(r.actual)}, stated {json.dumps(r.expected)}"
            for r in self.records if r.status == "flagged"
        ]


def emit_text(report: Report, include_timing: bool = True) -> str:
    lines = [f"scenario: {report.source}"]
    bound = "none" if report.max_degree is None else str(report.max_degree)
    lines.append(f"engine: {ENGINE_NAME} {ENGINE_VERSION}  max-degree bound: {bound}")
    width = len(str(len(report.records))) if report.records else 1
    for record in report.records:
        shown = {"pass": "pass   ", "fail": "FAIL   ", "flagged": "FLAGGED"}[record.status]
        line = f"[{record.index + 1:>{width}}] line {record.line:>4}  {shown}  {record.text}"
        if record.status != "pass":
            line += f"  -- computed {json.dumps(record.actual)}"
        if record.certificate and record.status != "pass":
            line += f"; {record.certificate}"
        if include_timing:
            line += f"  ({record.wall_ms:.1f} ms)"
        lines.append(line)
    lines.append(
        f"summary: {report.passed} passed, {report.failed} failed, "
        f"{report.flagged} flagged")
    if include_timing:
        lines.append(f"wall time: {report.total_wall_ms:.1f} ms")
    return "\n".join(lines) + "\n"


def json_payload(report: Report, include_timing: bool = True) -> dict:
    assertions = []
    for record in report.records:
        entry = {
            "index": record.index,
            "line": record.line,
            "operation": record.operation,
            "mode": record.mode,
            "status": record.status,
            "expected": record.expected,
            "actual": record.actual,
            "certificate": record.certificate,
            "text": record.text,
        }
        if include_timing:
            entry["wall_ms"] = round(record.wall_ms, 3)
        assertions.append(entry)
    payload = {
        "schema": SCHEMA,
        "engine": {"name": ENGINE_NAME, "version": ENGINE_VERSION},
        "source": report.source,
        "max_degree": report.max_degree,
        "assertions": assertions,
        "summary": {
            "total": len(report.records),
            "passed": report.passed,
            "failed": report.failed,
            "flagged": report.flagged,
        },
    }
    if include_timing:
        payload["summary"]["wall_ms"] = round(report.total_wall_ms, 3)
    return payload


def emit_json(report: Report, include_timing: bool = True) -> str:
    return json.dumps(json_payload(report, include_timing),
                      sort_keys=True, indent=2) + "\n"


def emit(report: Report, format: str = "text", include_timing: bool = True) -> str:
    if format == "json":
        return emit_json(report, include_timing)
    if format == "text":
        return emit_text(report, include_timing)
    raise ValueError(f"unknown report format {format!r}")
