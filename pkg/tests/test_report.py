import csv
import json
from io import StringIO

import pytest

from diarscore.enums import ReportFormat
from diarscore.metrics import CderReport, CorpusScore, DerReport, RecordingScore
from diarscore.rttm import COLUMNS, EmptyReport, write_report


def recording(recording_id, der=(2000, 0, 0, 10_000), cder=(0, 0, 0, 3)):
    return RecordingScore(
        recording_id,
        DerReport(*der, recording_id=recording_id) if der else None,
        CderReport(*cder, recording_id=recording_id) if cder else None,
    )


def corpus(*recordings, overall=None):
    return CorpusScore(tuple(recordings), overall or recording("OVERALL"))


def read_csv(data: bytes):
    return list(csv.reader(StringIO(data.decode())))


def test_csv_single_recording():
    scores = corpus(recording("rec1"))

    rows = read_csv(write_report(scores, ReportFormat.CSV))

    assert rows[0] == list(COLUMNS)
    assert rows[1] == [
        "rec1", "0.2000", "2.000", "0.000", "0.000", "10.000", "0.0000", "0", "3"
    ]
    assert rows[2][0] == "OVERALL"


def test_rows_sorted_with_overall_last():
    scores = corpus(recording("b"), recording("a"), recording("c"))

    rows = read_csv(write_report(scores, ReportFormat.CSV))

    assert [row[0] for row in rows[1:]] == ["a", "b", "c", "OVERALL"]


def test_per_file_off_keeps_only_overall():
    scores = corpus(recording("b"), recording("a"))

    rows = read_csv(write_report(scores, ReportFormat.CSV, per_file=False))

    assert [row[0] for row in rows[1:]] == ["OVERALL"]


def test_undefined_values_are_empty_cells():
    scores = corpus(recording("rec1", der=(0, 0, 0, 0), cder=None))

    row = read_csv(write_report(scores, ReportFormat.CSV))[1]

    assert row[COLUMNS.index("der")] == ""
    assert row[COLUMNS.index("total")] == "0.000"
    assert row[COLUMNS.index("cder")] == ""
    assert row[COLUMNS.index("n_total")] == ""


def test_json_mirrors_csv_schema():
    overall = RecordingScore(
        "OVERALL",
        DerReport(1000, 0, 0, 20_000, "OVERALL"),
        CderReport(1, 0, 0, 8, "OVERALL", macro_cder=0.125),
    )
    scores = corpus(recording("rec1", cder=(1, 0, 0, 4)), overall=overall)

    rows = json.loads(write_report(scores, ReportFormat.JSON))

    assert list(rows[0]) == list(COLUMNS)
    assert rows[0]["der"] == 0.2
    assert rows[0]["cder"] == 0.25
    assert rows[1]["recording_id"] == "OVERALL"
    assert rows[1]["der"] == 0.05
    assert rows[1]["cder_macro"] == 0.125


def test_text_table():
    scores = corpus(recording("rec1", cder=None))

    text = write_report(scores).decode()

    assert text.splitlines()[0].split() == list(COLUMNS) + ["cder_macro"]
    assert "rec1" in text and "OVERALL" in text
    assert "n/a" in text
    assert "0.2000" in text


def test_report_is_deterministic():
    scores = corpus(recording("b"), recording("a"))

    for fmt in ReportFormat:
        assert write_report(scores, fmt) == write_report(scores, fmt)


def test_empty_report():
    with pytest.raises(EmptyReport):
        write_report(corpus())
