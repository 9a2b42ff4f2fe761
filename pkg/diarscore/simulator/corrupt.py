from __future__ import annotations

from typing import Sequence

import numpy as np

from diarscore.constants import SHORT_SEGMENT_MS
from diarscore.timeline import Annotation, Segment, Turn

from .profiles import ErrorProfile

# Working representation: [speaker, start, end], possibly degenerate until repair.
_Item = list


def _other(speaker: str, labels: Sequence[str], rng: np.random.Generator) -> str:
    candidates = [label for label in labels if label != speaker]
    if not candidates:
        return f"{speaker}_x"
    return candidates[int(rng.integers(len(candidates)))]


def _jitter(items: list[_Item], std_ms: float, rng: np.random.Generator) -> list[_Item]:
    if not std_ms or not items:
        return items

    noise = np.rint(rng.normal(0.0, std_ms, size=(len(items), 2))).astype(np.int64)
    return [
        [speaker, max(0, start + int(d_start)), max(0, end + int(d_end))]
        for (speaker, start, end), (d_start, d_end) in zip(items, noise)
    ]


def _drop(items: list[_Item], prob: float, rng: np.random.Generator) -> list[_Item]:
    draws = rng.random(len(items))
    return [
        item
        for item, u in zip(items, draws)
        if not (item[2] - item[1] < SHORT_SEGMENT_MS and u < prob)
    ]


def _split(
    items: list[_Item], prob: float, labels: Sequence[str], rng: np.random.Generator
) -> list[_Item]:
    """Hand the tail of a segment to another speaker."""

    result: list[_Item] = []

    for speaker, start, end in items:
        u, fraction = rng.random(), rng.uniform(0.3, 0.7)
        cut = start + int(fraction * (end - start))

        if u < prob and start < cut < end:
            result.append([speaker, start, cut])
            result.append([_other(speaker, labels, rng), cut, end])
        else:
            result.append([speaker, start, end])

    return result


def _merge(items: list[_Item], prob: float, rng: np.random.Generator) -> list[_Item]:
    """Absorb the next segment when it belongs to a different speaker."""

    result: list[_Item] = []
    draws = rng.random(len(items))
    i = 0

    while i < len(items):
        speaker, start, end = items[i]
        following = items[i + 1] if i + 1 < len(items) else None

        if following is not None and following[0] != speaker and draws[i] < prob:
            result.append([speaker, start, max(end, following[2])])
            i += 2
        else:
            result.append([speaker, start, end])
            i += 1

    return result


def _confuse(
    items: list[_Item], prob: float, labels: Sequence[str], rng: np.random.Generator
) -> list[_Item]:
    draws = rng.random(len(items))
    return [
        [_other(speaker, labels, rng) if u < prob else speaker, start, end]
        for (speaker, start, end), u in zip(items, draws)
    ]


def _repair(items: list[_Item]) -> list[Turn]:
    """Truncate same-speaker overlaps and drop empty segments."""

    turns: list[Turn] = []
    last_end: dict[str, int] = {}

    for speaker, start, end in sorted(items, key=lambda item: (item[1], item[2], item[0])):
        start = max(start, last_end.get(speaker, 0))
        if start >= end:
            continue

        turns.append(Turn(speaker, Segment(start, end)))
        last_end[speaker] = end

    return turns


def corrupt(ref: Annotation, profile: ErrorProfile, stream: int = 0) -> Annotation:
    """Inject diarization errors: jitter, drop, split, merge, confuse, in that order.

    ``stream`` selects an independent random stream for the same profile seed,
    so one profile can corrupt several recordings of a corpus.
    """

    rng = np.random.default_rng((profile.rng_seed, stream))
    labels = ref.speakers
    items: list[_Item] = [[turn.speaker, turn.start, turn.end] for turn in ref.turns]

    items = _jitter(items, profile.boundary_jitter_std_ms, rng)
    items = _drop(items, profile.short_segment_drop_prob, rng)
    items = _split(items, profile.split_prob, labels, rng)
    items = _merge(items, profile.merge_prob, rng)
    items = _confuse(items, profile.confusion_prob, labels, rng)

    return ref.with_turns(_repair(items))
