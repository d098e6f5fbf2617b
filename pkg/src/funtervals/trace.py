"""Per-iteration solver telemetry and its CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable

TRACE_HEADER = "# funtervals-trace v1"
FIELDS = ("iteration", "max_characteristic", "worklist_size", "record_value", "cumulative_ms")


@dataclass(frozen=True, slots=True)
class TraceRecord:
    iteration: int
    max_characteristic: float
    worklist_size: int
    record_value: float | None
    cumulative_ms: float


class Stopwatch:
    """Milliseconds since construction; always 0.0 when disabled."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self._t0 = time.perf_counter()

    def ms(self) -> float:
        if not self.enabled:
            return 0.0
        return (time.perf_counter() - self._t0) * 1000.0


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_float(s: str) -> float | None:
    return None if s == "" else float(s)


def to_csv(records: Iterable[TraceRecord]) -> str:
    buf = io.StringIO()
    buf.write(TRACE_HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([_fmt(getattr(r, f)) for f in FIELDS])
    return buf.getvalue()


def from_csv(text: str) -> list[TraceRecord]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TRACE_HEADER:
        raise ValueError(f"missing trace header {TRACE_HEADER!r}")
    rows = list(csv.reader(lines[1:]))
    if not rows or tuple(rows[0]) != FIELDS:
        raise ValueError(f"unexpected trace columns {rows[0] if rows else None}")
    out = []
    for row in rows[1:]:
        if not row:
            continue
        it, mc, ws, rv, ms = row
        out.append(TraceRecord(int(it), float(mc), int(ws), _parse_float(rv), float(ms)))
    return out


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def _json_float(v):
    if isinstance(v, str):
        return float(v)
    return None if v is None else float(v)


def to_json(records: Iterable[TraceRecord]) -> str:
    data = [{k: _json_safe(v) for k, v in asdict(r).items()} for r in records]
    return json.dumps(data, indent=1) + "\n"


def from_json(text: str) -> list[TraceRecord]:
    return [
        TraceRecord(
            int(d["iteration"]),
            _json_float(d["max_characteristic"]),
            int(d["worklist_size"]),
            _json_float(d["record_value"]),
            _json_float(d["cumulative_ms"]),
        )
        for d in json.loads(text)
    ]


def write_trace(path: str | Path, records: Iterable[TraceRecord]) -> None:
    """Write to ``path``; the suffix (.csv or .json) selects the format."""
    path = Path(path)
    text = to_json(records) if path.suffix.lower() == ".json" else to_csv(records)
    path.write_text(text, encoding="utf-8")


def read_trace(path: str | Path) -> list[TraceRecord]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return from_json(text) if path.suffix.lower() == ".json" else from_csv(text)
