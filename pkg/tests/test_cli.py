import csv
import json
from io import StringIO
from pathlib import Path

import pytest
from click.testing import CliRunner

from diarscore import cli, fixtures
from diarscore.cli import EXIT_IO, EXIT_OK, EXIT_UNDEFINED, EXIT_USAGE, main
from diarscore.constants import VERSION
from diarscore.error import InvalidConfig
from diarscore.rttm import write_rttm
from diarscore.simulator import DialogProfile, ErrorProfile, corrupt, generate_dialog

DATA = Path(fixtures.__file__).parent / "data"


@pytest.fixture
def runner():
    return CliRunner()


def fixture_paths(name):
    return ["--ref", str(DATA / name / "ref.rttm"), "--hyp", str(DATA / name / "hyp.rttm")]


def csv_rows(output):
    return {row["recording_id"]: row for row in csv.DictReader(StringIO(output))}


def test_version(runner):
    result = runner.invoke(main, ["--version"])

    assert result.exit_code == EXIT_OK
    assert VERSION in result.output


def test_identity_scores_zero(runner):
    result = runner.invoke(main, ["score", *fixture_paths("identity"), "--format", "json"])

    assert result.exit_code == EXIT_OK
    overall = json.loads(result.stdout)[-1]
    assert overall["recording_id"] == "OVERALL"
    assert (overall["der"], overall["cder"]) == (0.0, 0.0)


def test_identity_text_report(runner):
    result = runner.invoke(main, ["score", *fixture_paths("identity")])

    assert result.exit_code == EXIT_OK
    assert "0.0000" in result.stdout
    assert "OVERALL" in result.stdout


def test_one_third(runner):
    args = ["score", *fixture_paths("cder_one_third"), "--eta", "0.5", "--collar", "0"]

    result = runner.invoke(main, [*args, "--format", "csv", "--per-file"])

    assert result.exit_code == EXIT_OK
    rows = csv_rows(result.stdout)
    assert rows["trace"]["cder"] == "0.3333"
    assert rows["trace"]["der"] == "0.2500"
    assert rows["OVERALL"]["cder"] == "0.3333"


def test_single_metric(runner):
    args = ["score", *fixture_paths("der_miss"), "--collar", "0", "--format", "csv"]

    result = runner.invoke(main, [*args, "--metric", "der"])

    assert result.exit_code == EXIT_OK
    overall = csv_rows(result.stdout)["OVERALL"]
    assert overall["der"] == "0.2000"
    assert overall["cder"] == ""


def test_collar_forgives_jitter(runner, tmp_path):
    ref = generate_dialog(DialogProfile(duration_min=3.0, rng_seed=2), "jitter")
    hyp = corrupt(ref, ErrorProfile(boundary_jitter_std_ms=100, rng_seed=2))
    (tmp_path / "ref.rttm").write_bytes(write_rttm([ref]))
    (tmp_path / "hyp.rttm").write_bytes(write_rttm([hyp]))

    def der(collar):
        result = runner.invoke(
            main,
            [
                "score",
                "--ref", str(tmp_path / "ref.rttm"),
                "--hyp", str(tmp_path / "hyp.rttm"),
                "--metric", "der",
                "--collar", collar,
                "--format", "json",
            ],
        )
        assert result.exit_code == EXIT_OK
        return json.loads(result.stdout)[-1]["der"]

    assert der("0.25") <= der("0")


def test_directories_of_rttm(runner, tmp_path):
    (tmp_path / "ref").mkdir()
    (tmp_path / "hyp").mkdir()
    for name in ("der_miss", "der_confusion"):
        for side in ("ref", "hyp"):
            source = DATA / name / f"{side}.rttm"
            (tmp_path / side / f"{name}.rttm").write_bytes(source.read_bytes())

    result = runner.invoke(
        main,
        [
            "score",
            "--ref", str(tmp_path / "ref"),
            "--hyp", str(tmp_path / "hyp"),
            "--collar", "0",
            "--format", "csv",
            "--per-file",
        ],
    )

    assert result.exit_code == EXIT_OK
    assert list(csv_rows(result.stdout)) == ["single", "swap", "OVERALL"]


def test_malformed_input(runner, tmp_path):
    bad = tmp_path / "bad.rttm"
    bad.write_text("SPEAKER rec 1 0.000 1.000 <NA> <NA> A <NA> <NA>\nSPEAKER rec 1 oops\n")

    result = runner.invoke(main, ["score", "--ref", str(bad), "--hyp", str(bad)])

    assert result.exit_code == EXIT_USAGE
    assert f"{bad}:2:" in result.output


def test_same_speaker_overlap(runner, tmp_path):
    bad = tmp_path / "overlap.rttm"
    bad.write_text(
        "SPEAKER rec 1 0.000 2.000 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER rec 1 1.000 2.000 <NA> <NA> A <NA> <NA>\n"
    )

    rejected = runner.invoke(main, ["score", "--ref", str(bad), "--hyp", str(bad)])
    normalized = runner.invoke(
        main, ["score", "--ref", str(bad), "--hyp", str(bad), "--normalize"]
    )

    assert rejected.exit_code == EXIT_USAGE
    assert normalized.exit_code == EXIT_OK


def test_empty_hypothesis_is_undefined(runner, tmp_path):
    empty = tmp_path / "empty.rttm"
    empty.write_bytes(b"")
    ref = str(DATA / "undefined_cder" / "ref.rttm")

    result = runner.invoke(main, ["score", "--ref", ref, "--hyp", str(empty)])

    assert result.exit_code == EXIT_UNDEFINED
    assert "OVERALL" in result.output
    assert "n/a" in result.output


def test_missing_path(runner, tmp_path):
    result = runner.invoke(
        main, ["score", "--ref", str(tmp_path / "nope.rttm"), "--hyp", str(tmp_path)]
    )

    assert result.exit_code == EXIT_USAGE


@pytest.mark.parametrize("eta", ["0", "1", "1.5", "-0.2"])
def test_eta_out_of_range(runner, eta):
    result = runner.invoke(main, ["score", *fixture_paths("identity"), "--eta", eta])

    assert result.exit_code == EXIT_USAGE


def test_negative_collar(runner):
    result = runner.invoke(main, ["score", *fixture_paths("identity"), "--collar", "-1"])

    assert result.exit_code == EXIT_USAGE


def test_simulate_needs_two_systems(runner, tmp_path):
    result = runner.invoke(
        main, ["simulate", "--n-systems", "1", "--out", str(tmp_path / "r.csv")]
    )

    assert result.exit_code == EXIT_USAGE


def test_simulate_is_reproducible(runner, tmp_path):
    args = ["simulate", "--n-systems", "2", "--seed", "7", "--n-dialogs", "1"]
    args += ["--duration-min", "2"]

    first = runner.invoke(main, [*args, "--out", str(tmp_path / "a.csv")])
    second = runner.invoke(main, [*args, "--out", str(tmp_path / "b.csv")])

    assert first.exit_code == second.exit_code == EXIT_OK
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert "pearson_r " in first.output

    lines = (tmp_path / "a.csv").read_text().splitlines()
    assert lines[0] == "system_id,der_collar025,der_collar0,cder"
    assert [line.split(",")[0] for line in lines[1:]] == ["sys000", "sys001"]


def test_simulate_unwritable_output(runner, tmp_path):
    out = tmp_path / "missing" / "r.csv"

    result = runner.invoke(
        main, ["simulate", "--n-systems", "2", "--duration-min", "1", "--out", str(out)]
    )

    assert result.exit_code == EXIT_IO
    assert "error:" in result.output


def test_simulate_failure_leaves_no_output(runner, tmp_path, monkeypatch):
    def failing_study(*args, **kwargs):
        raise InvalidConfig("study failed")

    monkeypatch.setattr(cli, "correlation_study", failing_study)
    out = tmp_path / "r.csv"

    result = runner.invoke(main, ["simulate", "--n-systems", "2", "--out", str(out)])

    assert result.exit_code == EXIT_USAGE
    assert "error: study failed" in result.output
    assert not out.exists()


def test_inspect_merge(runner):
    path = DATA / "interleaved_merge" / "ref.rttm"

    result = runner.invoke(main, ["inspect-merge", str(path)])

    assert result.exit_code == EXIT_OK
    lines = result.output.splitlines()
    assert lines[0] == "# meeting"
    assert [line.split()[0] for line in lines[1:]] == ["A", "B", "A", "B", "A", "C"]
    assert lines[1] == "A 0.000 3.000 2"


def test_inspect_merge_single_turn(runner, tmp_path):
    one = tmp_path / "one.rttm"
    one.write_text("SPEAKER rec 1 1.500 2.000 <NA> <NA> A <NA> <NA>\n")

    result = runner.invoke(main, ["inspect-merge", str(one)])

    assert result.exit_code == EXIT_OK
    assert result.output.splitlines() == ["# rec", "A 1.500 3.500 1"]


def test_inspect_merge_empty(runner, tmp_path):
    empty = tmp_path / "empty.rttm"
    empty.write_bytes(b"")

    result = runner.invoke(main, ["inspect-merge", str(empty)])

    assert result.exit_code == EXIT_OK
    assert result.output.strip() == "no recordings"
