from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from typing import Iterable, Optional, Sequence

from .models import Annotation, Segment, TimeMs, Turn


def intersect(a: Segment, b: Segment) -> TimeMs:
    """Duration shared by two segments; touching segments share nothing."""

    return max(0, min(a.end, b.end) - max(a.start, b.start))


def union_duration(a: Segment, b: Segment) -> TimeMs:
    return a.duration + b.duration - intersect(a, b)


def speaker_timeline(ann: Annotation, speaker: str) -> list[Segment]:
    return list(ann.by_speaker.get(speaker, ()))


def any_other_speaker_active(ann: Annotation, speaker: str, window: Segment) -> bool:
    """True when a turn of another speaker has positive overlap with ``window``."""

    return ann.activity(speaker).active(window.start, window.end)


def total_intersection(a: Sequence[Segment], b: Sequence[Segment]) -> TimeMs:
    """Shared duration of two start-sorted, internally disjoint segment lists."""

    total = 0
    i = j = 0

    while i < len(a) and j < len(b):
        total += intersect(a[i], b[j])

        if a[i].end <= b[j].end:
            i += 1
        else:
            j += 1

    return total


def coalesce(segments: Iterable[Segment]) -> list[Segment]:
    """Union of segments as a sorted list; overlapping or touching pieces fuse."""

    merged: list[Segment] = []

    for segment in sorted(segments):
        if merged and segment.start <= merged[-1].end:
            if segment.end > merged[-1].end:
                merged[-1] = Segment(merged[-1].start, segment.end)
        else:
            merged.append(segment)

    return merged


def complement(segments: Iterable[Segment], extent: Segment) -> list[Segment]:
    """The parts of ``extent`` not covered by ``segments``."""

    gaps: list[Segment] = []
    cursor = extent.start

    for segment in coalesce(segments):
        if segment.end <= cursor:
            continue
        if segment.start >= extent.end:
            break
        if segment.start > cursor:
            gaps.append(Segment(cursor, segment.start))
        cursor = max(cursor, segment.end)

    if cursor < extent.end:
        gaps.append(Segment(cursor, extent.end))

    return gaps


def crop(ann: Annotation, regions: Sequence[Segment]) -> Annotation:
    """Restrict every turn of ``ann`` to ``regions`` (sorted, disjoint)."""

    ends = [region.end for region in regions]
    turns: list[Turn] = []

    for turn in ann.turns:
        index = bisect_right(ends, turn.start)

        for region in regions[index:]:
            if region.start >= turn.end:
                break
            start, end = max(region.start, turn.start), min(region.end, turn.end)
            if start < end:
                turns.append(Turn(turn.speaker, Segment(start, end)))

    return ann.with_turns(turns)


def overlap_regions(ann: Annotation) -> list[Segment]:
    """Regions where two or more speakers of ``ann`` are active at once."""

    deltas: Counter[TimeMs] = Counter()

    for turn in ann.turns:
        deltas[turn.start] += 1
        deltas[turn.end] -= 1

    regions: list[Segment] = []
    active = 0
    opened: Optional[TimeMs] = None

    for time in sorted(deltas):
        active += deltas[time]

        if active >= 2 and opened is None:
            opened = time
        elif active < 2 and opened is not None:
            regions.append(Segment(opened, time))
            opened = None

    return coalesce(regions)
