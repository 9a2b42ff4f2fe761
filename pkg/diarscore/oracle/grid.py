from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from diarscore.metrics import (
    DerConfig,
    DerReport,
    EmptyReference,
    der_speaker_map,
    joint_extent,
)
from diarscore.timeline import Annotation

from .errors import ExtentTooLarge

MAX_EXTENT_MS = 4 * 60 * 60 * 1000


@dataclass(frozen=True, eq=False)
class GridTimeline:
    """Per-millisecond speaker activity: instant t is active iff a segment holds t."""

    extent_ms: int
    active: dict[str, np.ndarray] = field(default_factory=dict)
    step_ms: int = 1

    @classmethod
    def from_annotation(cls, ann: Annotation, extent_ms: int) -> GridTimeline:
        active: dict[str, np.ndarray] = {}

        for speaker, segments in ann.by_speaker.items():
            mask = np.zeros(extent_ms, dtype=bool)
            for segment in segments:
                mask[segment.start : segment.end] = True
            active[speaker] = mask

        return cls(extent_ms, active)

    @property
    def count(self) -> np.ndarray:
        counts = np.zeros(self.extent_ms, dtype=np.int64)
        for mask in self.active.values():
            counts += mask
        return counts


def grid_der(ref: Annotation, hyp: Annotation, cfg: DerConfig = DerConfig()) -> DerReport:
    """DER by counting 1 ms instants, with the same speaker map as ``compute_der``."""

    extent = joint_extent(ref, hyp)
    if extent is None:
        raise EmptyReference(DerReport(0, 0, 0, 0, ref.recording_id))
    if extent.end > MAX_EXTENT_MS:
        raise ExtentTooLarge(extent.end, MAX_EXTENT_MS)

    ref_grid = GridTimeline.from_annotation(ref, extent.end)
    hyp_grid = GridTimeline.from_annotation(hyp, extent.end)
    n_ref, n_hyp = ref_grid.count, hyp_grid.count

    scored = np.ones(extent.end, dtype=bool)
    collar = cfg.collar_ms
    if collar:
        for turn in ref.turns:
            for boundary in (turn.start, turn.end):
                scored[max(0, boundary - collar) : boundary + collar] = False
    if not cfg.score_overlap:
        scored &= n_ref <= 1

    n_correct = np.zeros(extent.end, dtype=np.int64)
    for ref_label, hyp_label in der_speaker_map(ref, hyp, cfg).pairs:
        n_correct += ref_grid.active[ref_label] & hyp_grid.active[hyp_label]

    report = DerReport(
        miss_ms=int(np.maximum(0, n_ref - n_hyp)[scored].sum()),
        fa_ms=int(np.maximum(0, n_hyp - n_ref)[scored].sum()),
        error_ms=int((np.minimum(n_ref, n_hyp) - n_correct)[scored].sum()),
        total_ms=int(n_ref[scored].sum()),
        recording_id=ref.recording_id,
    )

    if not report.defined:
        raise EmptyReference(report)
    return report
