from __future__ import annotations

import csv
import json
from io import StringIO
from typing import Any, Optional

from tabulate import tabulate

from diarscore.enums import ReportFormat
from diarscore.metrics import CorpusScore, RecordingScore

from .errors import EmptyReport

COLUMNS = (
    "recording_id",
    "der",
    "miss",
    "fa",
    "error",
    "total",
    "cder",
    "n_error",
    "n_total",
)


def _ratio(value: Optional[float]) -> Optional[float]:
    return None if value is None else round(value, 4)


def _seconds(ms: Optional[int]) -> Optional[float]:
    return None if ms is None else round(ms / 1000, 3)


def _row(score: RecordingScore) -> dict[str, Any]:
    der, cder = score.der, score.cder

    return {
        "recording_id": score.recording_id,
        "der": _ratio(der.der) if der and der.defined else None,
        "miss": _seconds(der.miss_ms) if der else None,
        "fa": _seconds(der.fa_ms) if der else None,
        "error": _seconds(der.error_ms) if der else None,
        "total": _seconds(der.total_ms) if der else None,
        "cder": _ratio(cder.cder) if cder and cder.defined else None,
        "n_error": cder.n_error if cder else None,
        "n_total": cder.n_total if cder else None,
    }


def _rows(scores: CorpusScore, per_file: bool) -> list[dict[str, Any]]:
    recordings = sorted(scores.recordings, key=lambda score: score.recording_id)
    rows = [_row(score) for score in recordings] if per_file else []
    overall = _row(scores.overall)

    if scores.overall.cder is not None:
        overall["cder_macro"] = _ratio(scores.overall.cder.macro_cder)

    rows.append(overall)
    return rows


def _cell(key: str, value: Any) -> str:
    if value is None:
        return ""
    if key in ("der", "cder", "cder_macro"):
        return f"{value:.4f}"
    if key in ("miss", "fa", "error", "total"):
        return f"{value:.3f}"
    return str(value)


def _write_csv(rows: list[dict[str, Any]]) -> str:
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")

    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(_cell(key, row[key]) for key in COLUMNS)

    return buffer.getvalue()


def _text_cell(row: dict[str, Any], key: str) -> str:
    if key not in row:
        return ""
    return _cell(key, row[key]) or "n/a"


def _write_text(rows: list[dict[str, Any]]) -> str:
    headers = list(COLUMNS) + ["cder_macro"]
    table = [[_text_cell(row, key) for key in headers] for row in rows]

    return tabulate(table, headers=headers, disable_numparse=True) + "\n"


def write_report(
    scores: CorpusScore, fmt: ReportFormat = ReportFormat.TEXT, per_file: bool = True
) -> bytes:
    """Render per-recording rows sorted by id, then the OVERALL row."""

    if not scores.recordings:
        raise EmptyReport()

    rows = _rows(scores, per_file)

    if fmt is ReportFormat.JSON:
        text = json.dumps(rows, indent=2) + "\n"
    elif fmt is ReportFormat.CSV:
        text = _write_csv(rows)
    else:
        text = _write_text(rows)

    return text.encode("utf-8")
