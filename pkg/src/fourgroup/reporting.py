"""Structured verification reports.

Reports are deterministic: entries appear in the order they were added and
serialization preserves construction order, so two runs over the same
input produce byte-identical JSON apart from the timing field.  The status
``finding`` is reserved for a falsified theoretical statement on a
validated input; ``fail`` means a bug or an invalid fixture.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

STATUSES = ("pass", "fail", "skipped", "finding")


@dataclass
class CheckEntry:
    name: str
    status: str
    details: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")


@dataclass
class VerificationReport:
    subject: str
    entries: list[CheckEntry] = field(default_factory=list)
    measured: dict = field(default_factory=dict)
    version: str = ""
    timing_seconds: float | None = None

    def __post_init__(self):
        if not self.version:
            from . import __version__

            self.version = __version__

    def add(self, name: str, status: str, details: str = "") -> CheckEntry:
        entry = CheckEntry(name, status, details)
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.name, e.status, e.details))
        for k, v in other.measured.items():
            self.measured.setdefault(k, v)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for e in self.entries:
            out[e.status] += 1
        return out

    def passed(self) -> bool:
        return all(e.status in ("pass", "skipped") for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "version": self.version,
            "entries": [
                {"name": e.name, "status": e.status, "details": e.details} for e in self.entries
            ],
            "measured": self.measured,
            "timing_seconds": self.timing_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    def render_text(self) -> str:
        lines = [f"# {self.subject}"]
        for e in self.entries:
            lines.append(f"[{e.status.upper():7s}] {e.name}: {e.details}")
        if self.measured:
            lines.append("measured:")
            for k, v in self.measured.items():
                lines.append(f"  {k} = {v}")
        c = self.counts()
        lines.append(
            f"summary: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped, {c['finding']} finding"
        )
        return "\n".join(lines) + "\n"


def report_dict_without_timing(data: dict) -> dict:
    out = dict(data)
    out.pop("timing_seconds", None)
    return out


def rows_to_csv(fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def rows_to_text(fieldnames: list[str], rows: list[dict]) -> str:
    widths = {f: max(len(f), *(len(str(r.get(f, ""))) for r in rows)) if rows else len(f) for f in fieldnames}
    lines = ["  ".join(f.ljust(widths[f]) for f in fieldnames)]
    for row in rows:
        lines.append("  ".join(str(row.get(f, "")).ljust(widths[f]) for f in fieldnames))
    return "\n".join(lines) + "\n"
