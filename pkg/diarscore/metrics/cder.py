from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from statistics import fmean
from typing import Optional, Sequence

from loguru import logger

from diarscore.constants import OVERALL_ID
from diarscore.timeline import Annotation, Segment, TimeMs, Turn, intersect, union_duration

from .config import CderConfig
from .errors import EmptyInput, UndefinedMetric
from .mapping import SpeakerMap, tied_speaker_maps

UtteranceMatch = tuple[int, Optional[int]]


@dataclass(frozen=True)
class MergedUtterance:
    speaker: str
    segment: Segment
    source_count: int = 1

    @property
    def start(self) -> TimeMs:
        return self.segment.start

    @property
    def end(self) -> TimeMs:
        return self.segment.end


@dataclass(frozen=True)
class CderReport:
    errors_unmatched_ref_speaker: int
    errors_iou_below_eta: int
    errors_unmatched_hyp_utterance: int
    n_total: int
    recording_id: Optional[str] = None
    macro_cder: Optional[float] = None

    @property
    def n_error(self) -> int:
        return (
            self.errors_unmatched_ref_speaker
            + self.errors_iou_below_eta
            + self.errors_unmatched_hyp_utterance
        )

    @property
    def defined(self) -> bool:
        return self.n_total > 0

    @property
    def cder(self) -> float:
        if not self.defined:
            raise UndefinedMetric(
                self, f"No reference utterance was scored in {self.recording_id!r}"
            )
        return self.n_error / self.n_total


def merge_utterances(ann: Annotation) -> dict[str, list[MergedUtterance]]:
    """Merge each speaker's consecutive turns while nobody else talks in between.

    A run starting at turn j absorbs turn j+k as long as no other speaker is
    active anywhere in [start of turn j, end of turn j+k).
    """

    merged: dict[str, list[MergedUtterance]] = {}

    for speaker, segments in ann.by_speaker.items():
        others = ann.activity(speaker)
        utterances: list[MergedUtterance] = []
        j = 0

        while j < len(segments):
            step = 1
            while j + step < len(segments) and not others.active(
                segments[j].start, segments[j + step].end
            ):
                step += 1

            utterances.append(
                MergedUtterance(
                    speaker, Segment(segments[j].start, segments[j + step - 1].end), step
                )
            )
            j += step

        merged[speaker] = utterances

    return merged


def merged_annotation(
    recording_id: str, merged: dict[str, list[MergedUtterance]]
) -> Annotation:
    return Annotation(
        recording_id,
        (
            Turn(utterance.speaker, utterance.segment)
            for utterances in merged.values()
            for utterance in utterances
        ),
    )


def match_utterances(
    ref_utts: Sequence[MergedUtterance], hyp_utts: Sequence[MergedUtterance]
) -> list[UtteranceMatch]:
    """Greedy one-to-one matching in reference order.

    Each reference utterance takes the free hypothesis utterance it overlaps
    most, the earlier one on ties. Both inputs must be sorted by start;
    hypothesis utterances may overlap or nest.
    """

    hyp_starts = [utterance.start for utterance in hyp_utts]
    # Running max of ends: everything before the first entry past ref.start ends too early.
    hyp_max_ends = list(accumulate((utterance.end for utterance in hyp_utts), max))
    taken = [False] * len(hyp_utts)
    matches: list[UtteranceMatch] = []

    for i, ref_utt in enumerate(ref_utts):
        best: Optional[int] = None
        best_overlap = 0

        for j in range(
            bisect_right(hyp_max_ends, ref_utt.start), bisect_left(hyp_starts, ref_utt.end)
        ):
            if taken[j]:
                continue

            overlap = intersect(ref_utt.segment, hyp_utts[j].segment)
            if overlap > best_overlap:
                best, best_overlap = j, overlap

        if best is not None:
            taken[best] = True
        matches.append((i, best))

    return matches


def iou(a: Segment, b: Segment) -> Fraction:
    return Fraction(intersect(a, b), union_duration(a, b))


def _count(
    ref_merged: dict[str, list[MergedUtterance]],
    hyp_merged: dict[str, list[MergedUtterance]],
    speaker_map: SpeakerMap,
    cfg: CderConfig,
    recording_id: str,
) -> CderReport:
    unmatched_ref = sum(len(ref_merged[label]) for label in speaker_map.unmatched_ref)
    below_eta = 0
    unmatched_hyp = 0
    n_total = 0

    for ref_label, hyp_label in speaker_map.pairs:
        ref_utts, hyp_utts = ref_merged[ref_label], hyp_merged[hyp_label]
        matches = match_utterances(ref_utts, hyp_utts)

        for i, j in matches:
            n_total += 1
            if j is None or iou(ref_utts[i].segment, hyp_utts[j].segment) < cfg.eta_ratio:
                below_eta += 1

        unmatched_hyp += len(hyp_utts) - sum(1 for _, j in matches if j is not None)

    if cfg.count_unmatched_hyp_speakers:
        unmatched_hyp += sum(len(hyp_merged[label]) for label in speaker_map.unmatched_hyp)

    return CderReport(unmatched_ref, below_eta, unmatched_hyp, n_total, recording_id)


def _rank(report: CderReport) -> tuple[int, ...]:
    # Label-free; equal keys mean equal reports.
    return (
        report.n_error,
        report.errors_unmatched_ref_speaker,
        report.errors_iou_below_eta,
        report.errors_unmatched_hyp_utterance,
        report.n_total,
    )


def compute_cder(
    ref: Annotation,
    hyp: Annotation,
    cfg: CderConfig = CderConfig(),
    speaker_map: Optional[SpeakerMap] = None,
) -> CderReport:
    """Conversational DER: utterance-level mistakes over scored reference utterances.

    Without an explicit ``speaker_map``, every mapping tied on total overlap
    is scored and the one with the fewest errors is kept, so renaming hypothesis
    speakers never changes the result.

    Raises ``UndefinedMetric`` (carrying the counts) when no reference speaker
    could be matched.
    """

    ref_merged = merge_utterances(ref)
    hyp_merged = merge_utterances(hyp)
    candidates = [speaker_map] if speaker_map is not None else tied_speaker_maps(ref, hyp)

    report = min(
        (
            _count(ref_merged, hyp_merged, candidate, cfg, ref.recording_id)
            for candidate in candidates
        ),
        key=_rank,
    )

    if not report.defined:
        raise UndefinedMetric(
            report, f"No reference speaker of {ref.recording_id!r} was matched"
        )

    logger.debug(
        "{}: CDER {:.4f} ({} of {} utterances)",
        ref.recording_id,
        report.cder,
        report.n_error,
        report.n_total,
    )
    return report


def aggregate_cder(
    reports: Sequence[CderReport], recording_id: str = OVERALL_ID
) -> CderReport:
    """Pool counts over recordings; recordings with an undefined CDER are skipped."""

    if not reports:
        raise EmptyInput("Cannot aggregate an empty list of CDER reports")

    defined: list[CderReport] = []
    for report in reports:
        if report.defined:
            defined.append(report)
        else:
            logger.warning(
                "Skipping {} in CDER aggregation: metric is undefined",
                report.recording_id,
            )

    if not defined:
        raise EmptyInput("No recording has a defined CDER")

    return CderReport(
        errors_unmatched_ref_speaker=sum(r.errors_unmatched_ref_speaker for r in defined),
        errors_iou_below_eta=sum(r.errors_iou_below_eta for r in defined),
        errors_unmatched_hyp_utterance=sum(
            r.errors_unmatched_hyp_utterance for r in defined
        ),
        n_total=sum(r.n_total for r in defined),
        recording_id=recording_id,
        macro_cder=fmean(r.cder for r in defined),
    )
