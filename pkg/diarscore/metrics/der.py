from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from loguru import logger

from diarscore.constants import OVERALL_ID
from diarscore.timeline import (
    Annotation,
    Segment,
    TimeMs,
    complement,
    crop,
    overlap_regions,
)

from .config import DerConfig
from .errors import EmptyInput, EmptyReference
from .mapping import SpeakerMap, match_speakers

_REF, _HYP = 0, 1


@dataclass(frozen=True)
class DerReport:
    miss_ms: TimeMs
    fa_ms: TimeMs
    error_ms: TimeMs
    total_ms: TimeMs
    recording_id: Optional[str] = None

    @property
    def defined(self) -> bool:
        return self.total_ms > 0

    @property
    def der(self) -> float:
        if not self.defined:
            raise EmptyReference(self)
        return (self.miss_ms + self.fa_ms + self.error_ms) / self.total_ms


def _collar_zones(ref: Annotation, collar: TimeMs) -> list[Segment]:
    if collar <= 0:
        return []

    zones: list[Segment] = []
    for turn in ref.turns:
        for boundary in (turn.start, turn.end):
            zones.append(Segment(max(0, boundary - collar), boundary + collar))

    return zones


def scoring_regions(
    ref: Annotation, collar: TimeMs, extent: Optional[Segment] = None
) -> list[Segment]:
    """The extent minus a +/- ``collar`` zone around every reference boundary."""

    extent = extent or ref.extent
    if extent is None:
        return []

    return complement(_collar_zones(ref, collar), extent)


def joint_extent(ref: Annotation, hyp: Annotation) -> Optional[Segment]:
    end = max(ref.end, hyp.end)
    return Segment(0, end) if end else None


def restrict(
    ref: Annotation, hyp: Annotation, cfg: DerConfig
) -> tuple[Annotation, Annotation]:
    """Crop both sides to the time DER scores under ``cfg``."""

    extent = joint_extent(ref, hyp)
    if extent is None:
        return ref, hyp

    excluded = _collar_zones(ref, cfg.collar_ms)
    if not cfg.score_overlap:
        excluded.extend(overlap_regions(ref))

    regions = complement(excluded, extent)

    return crop(ref, regions), crop(hyp, regions)


def _integrate(
    ref: Annotation, hyp: Annotation, mapping: dict[str, str]
) -> tuple[TimeMs, TimeMs, TimeMs, TimeMs]:
    events: list[tuple[TimeMs, int, int, str]] = []

    for side, ann in ((_REF, ref), (_HYP, hyp)):
        for turn in ann.turns:
            events.append((turn.start, 1, side, turn.speaker))
            events.append((turn.end, -1, side, turn.speaker))

    # Ends sort before starts at the same instant.
    events.sort()

    active: tuple[set[str], set[str]] = (set(), set())
    miss = fa = error = total = 0
    previous = 0

    for time, delta, side, label in events:
        span = time - previous
        active_ref, active_hyp = active

        if span and (active_ref or active_hyp):
            n_ref, n_hyp = len(active_ref), len(active_hyp)
            correct = sum(1 for r in active_ref if mapping.get(r) in active_hyp)

            miss += span * max(0, n_ref - n_hyp)
            fa += span * max(0, n_hyp - n_ref)
            error += span * (min(n_ref, n_hyp) - correct)
            total += span * n_ref

        if delta > 0:
            active[side].add(label)
        else:
            active[side].discard(label)
        previous = time

    return miss, fa, error, total


def der_speaker_map(ref: Annotation, hyp: Annotation, cfg: DerConfig) -> SpeakerMap:
    """The speaker mapping DER uses: optimal assignment over scored time only."""

    return match_speakers(*restrict(ref, hyp, cfg))


def compute_der(
    ref: Annotation, hyp: Annotation, cfg: DerConfig = DerConfig()
) -> DerReport:
    """Diarization error rate of ``hyp`` against ``ref``.

    Raises ``EmptyReference`` when no reference speech survives the collar.
    """

    scored_ref, scored_hyp = restrict(ref, hyp, cfg)
    speaker_map = match_speakers(scored_ref, scored_hyp)

    miss, fa, error, total = _integrate(scored_ref, scored_hyp, speaker_map.as_dict())
    report = DerReport(miss, fa, error, total, ref.recording_id)

    if not report.defined:
        raise EmptyReference(report)

    logger.debug(
        "{}: DER {:.4f} (miss={} fa={} error={} total={})",
        ref.recording_id,
        report.der,
        miss,
        fa,
        error,
        total,
    )
    return report


def aggregate_der(
    reports: Sequence[DerReport], recording_id: str = OVERALL_ID
) -> DerReport:
    """Pool durations over recordings and recompute the ratio."""

    if not reports:
        raise EmptyInput("Cannot aggregate an empty list of DER reports")

    return DerReport(
        miss_ms=sum(report.miss_ms for report in reports),
        fa_ms=sum(report.fa_ms for report in reports),
        error_ms=sum(report.error_ms for report in reports),
        total_ms=sum(report.total_ms for report in reports),
        recording_id=recording_id,
    )
