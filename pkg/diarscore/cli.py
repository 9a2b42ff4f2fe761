from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import BinaryIO, Mapping, Type

import click
from loguru import logger

from diarscore.constants import (
    DEFAULT_COLLAR_S,
    DEFAULT_ETA,
    DIALOG_DURATION_MIN,
    VERSION,
)
from diarscore.enums import Metric, ReportFormat
from diarscore.error import DiarScoreError, InvalidConfig
from diarscore.metrics import CderConfig, DerConfig, merge_utterances, score_corpus
from diarscore.rttm import EmptyReport, MalformedLine, load_rttm, write_report
from diarscore.simulator import DialogProfile, correlation_study
from diarscore.timeline import (
    InvalidSegment,
    SameSpeakerOverlap,
    TimelineError,
    format_seconds,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3

_exit_codes: Mapping[Type[Exception], int] = defaultdict(
    lambda: EXIT_IO,
    {
        MalformedLine: EXIT_USAGE,
        SameSpeakerOverlap: EXIT_USAGE,
        InvalidSegment: EXIT_USAGE,
        TimelineError: EXIT_USAGE,
        InvalidConfig: EXIT_USAGE,
        EmptyReport: EXIT_USAGE,
    },
)

_eta_range = click.FloatRange(0, 1, min_open=True, max_open=True)
_input_path = click.Path(exists=True, path_type=Path)


def _fail(error: Exception) -> int:
    click.echo(f"error: {error}", err=True)
    return _exit_codes[type(error)]


def _configure_logging(verbose: bool) -> None:
    logger.enable("diarscore")
    logger.remove()
    logger.add(
        lambda message: click.echo(message, err=True, nl=False),
        level="DEBUG" if verbose else "WARNING",
        format="{level}: {message}",
    )


def run_score(
    ref_path: Path,
    hyp_path: Path,
    metric: Metric,
    collar_s: float,
    eta: float,
    fmt: ReportFormat,
    per_file: bool,
    out: BinaryIO,
    count_unmatched_hyp_speakers: bool = False,
    score_overlap: bool = True,
    normalize: bool = False,
    workers: int = 1,
) -> int:
    """Score hypothesis RTTM against reference RTTM and write the report to ``out``.

    Returns 0 on success, 3 when some recording has an undefined metric (the
    report is still written) and the ``_exit_codes`` entry of any error.
    """

    try:
        der_cfg = DerConfig(collar_s, score_overlap)
        cder_cfg = CderConfig(eta, count_unmatched_hyp_speakers)

        refs = load_rttm(ref_path, normalize)
        hyps = load_rttm(hyp_path, normalize)

        scores = score_corpus(refs, hyps, metric, der_cfg, cder_cfg, workers)
        report = write_report(scores, fmt, per_file)
    except (DiarScoreError, OSError) as e:
        return _fail(e)

    out.write(report)
    out.flush()

    return EXIT_UNDEFINED if scores.undefined else EXIT_OK


def run_simulate(
    n_systems: int,
    seed: int,
    out_path: Path,
    n_dialogs: int = 3,
    duration_min: float = DIALOG_DURATION_MIN,
    overlap_prob: float = 0.1,
    eta: float = DEFAULT_ETA,
    workers: int = 1,
) -> int:
    """Run the correlation study and write its CSV to ``out_path``."""

    try:
        profile = DialogProfile(
            duration_min=duration_min, overlap_prob=overlap_prob, rng_seed=seed
        )
        cder_cfg = CderConfig(eta)

        result = correlation_study(
            n_systems, profile, n_dialogs=n_dialogs, cder_cfg=cder_cfg, workers=workers
        )
        out_path.write_bytes(result.to_csv())
    except (DiarScoreError, OSError) as e:
        return _fail(e)

    click.echo(f"pearson_r {result.pearson_r:.4f}")
    click.echo(f"pearson_r_collar025 {result.pearson_r_collar025:.4f}")

    return EXIT_OK


def run_inspect_merge(path: Path, normalize: bool = False) -> int:
    """Print the merged utterances of every recording in chronological order."""

    try:
        annotations = load_rttm(path, normalize)
    except (DiarScoreError, OSError) as e:
        return _fail(e)

    if not annotations:
        click.echo("no recordings")
        return EXIT_OK

    for ann in annotations:
        utterances = sorted(
            (utterance for run in merge_utterances(ann).values() for utterance in run),
            key=lambda utterance: (utterance.start, utterance.speaker, utterance.end),
        )

        click.echo(f"# {ann.recording_id}")
        for utterance in utterances:
            click.echo(
                f"{utterance.speaker} {format_seconds(utterance.start)}"
                f" {format_seconds(utterance.end)} {utterance.source_count}"
            )

    return EXIT_OK


@click.group()
@click.version_option(VERSION, prog_name="diarscore")
@click.option("-v", "--verbose", is_flag=True, help="Log debug messages to stderr.")
def main(verbose: bool) -> None:
    """Diarization scoring with DER and conversational DER."""

    _configure_logging(verbose)


@main.command()
@click.option("--ref", "ref_path", required=True, type=_input_path)
@click.option("--hyp", "hyp_path", required=True, type=_input_path)
@click.option(
    "--metric",
    type=click.Choice([metric.value for metric in Metric]),
    default=Metric.ALL.value,
    show_default=True,
)
@click.option(
    "--collar",
    "collar_s",
    type=click.FloatRange(min=0),
    default=DEFAULT_COLLAR_S,
    show_default=True,
    help="Collar in seconds around each reference boundary.",
)
@click.option("--eta", type=_eta_range, default=DEFAULT_ETA, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice([fmt.value for fmt in ReportFormat]),
    default=ReportFormat.TEXT.value,
    show_default=True,
)
@click.option("--per-file", is_flag=True, help="Emit one row per recording.")
@click.option("--count-unmatched-hyp-speakers", is_flag=True)
@click.option("--skip-overlap", is_flag=True, help="Exclude overlapped speech from DER.")
@click.option("--normalize", is_flag=True, help="Fuse overlapping same-speaker turns.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_context
def score(
    ctx: click.Context,
    ref_path: Path,
    hyp_path: Path,
    metric: str,
    collar_s: float,
    eta: float,
    fmt: str,
    per_file: bool,
    count_unmatched_hyp_speakers: bool,
    skip_overlap: bool,
    normalize: bool,
    workers: int,
) -> None:
    """Score a hypothesis against a reference (files or directories of RTTM)."""

    ctx.exit(
        run_score(
            ref_path,
            hyp_path,
            Metric(metric),
            collar_s,
            eta,
            ReportFormat(fmt),
            per_file,
            click.get_binary_stream("stdout"),
            count_unmatched_hyp_speakers=count_unmatched_hyp_speakers,
            score_overlap=not skip_overlap,
            normalize=normalize,
            workers=workers,
        )
    )


@main.command()
@click.option("--n-systems", type=click.IntRange(min=2), default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path)
)
@click.option("--n-dialogs", type=click.IntRange(min=1), default=3, show_default=True)
@click.option(
    "--duration-min",
    type=click.FloatRange(min=0, min_open=True),
    default=DIALOG_DURATION_MIN,
    show_default=True,
)
@click.option("--overlap-prob", type=click.FloatRange(0, 1), default=0.1, show_default=True)
@click.option("--eta", type=_eta_range, default=DEFAULT_ETA, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_context
def simulate(
    ctx: click.Context,
    n_systems: int,
    seed: int,
    out_path: Path,
    n_dialogs: int,
    duration_min: float,
    overlap_prob: float,
    eta: float,
    workers: int,
) -> None:
    """Correlate CDER with DER over synthetic systems of rising error severity."""

    ctx.exit(
        run_simulate(
            n_systems, seed, out_path, n_dialogs, duration_min, overlap_prob, eta, workers
        )
    )


@main.command("inspect-merge")
@click.argument("path", type=_input_path)
@click.option("--normalize", is_flag=True, help="Fuse overlapping same-speaker turns.")
@click.pass_context
def inspect_merge(ctx: click.Context, path: Path, normalize: bool) -> None:
    """List the merged utterances CDER scores, per recording."""

    ctx.exit(run_inspect_merge(path, normalize))


if __name__ == "__main__":
    main()
