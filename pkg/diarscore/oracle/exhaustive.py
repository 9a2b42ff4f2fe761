from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from loguru import logger

from diarscore.metrics import (
    MergedUtterance,
    match_speakers,
    match_utterances,
    merge_utterances,
)
from diarscore.timeline import Annotation, TimeMs, intersect

from .errors import TooManyUtterances

MAX_UTTERANCES = 8

UtteranceMatch = tuple[int, Optional[int]]


def exhaustive_cder_match(
    ref_utts: Sequence[MergedUtterance], hyp_utts: Sequence[MergedUtterance]
) -> list[UtteranceMatch]:
    """Best one-to-one utterance assignment by total intersection, by enumeration.

    Ties go to the lexicographically smallest tuple of hypothesis indices in
    reference order, where "unmatched" sorts after every index.
    """

    for utts in (ref_utts, hyp_utts):
        if len(utts) > MAX_UTTERANCES:
            raise TooManyUtterances(len(utts), MAX_UTTERANCES)

    overlaps = [[intersect(r.segment, h.segment) for h in hyp_utts] for r in ref_utts]
    unmatched = len(hyp_utts)

    best_total = -1
    best_key: tuple[int, ...] = ()
    best: list[Optional[int]] = []

    def search(i: int, used: frozenset[int], chosen: list[Optional[int]], total: int) -> None:
        nonlocal best_total, best_key, best

        if i == len(ref_utts):
            key = tuple(unmatched if j is None else j for j in chosen)
            if total > best_total or (total == best_total and key < best_key):
                best_total, best_key, best = total, key, list(chosen)
            return

        for j, overlap in enumerate(overlaps[i]):
            if overlap > 0 and j not in used:
                search(i + 1, used | {j}, chosen + [j], total + overlap)
        search(i + 1, used, chosen + [None], total)

    search(0, frozenset(), [], 0)

    return list(enumerate(best))


def matching_total(
    ref_utts: Sequence[MergedUtterance],
    hyp_utts: Sequence[MergedUtterance],
    matches: Sequence[UtteranceMatch],
) -> TimeMs:
    return sum(
        intersect(ref_utts[i].segment, hyp_utts[j].segment)
        for i, j in matches
        if j is not None
    )


@dataclass(frozen=True)
class MatchingDivergence:
    recording_id: str
    ref_speaker: str
    hyp_speaker: str
    greedy: tuple[UtteranceMatch, ...]
    exhaustive: tuple[UtteranceMatch, ...]
    greedy_total: TimeMs
    exhaustive_total: TimeMs


def matching_divergences(ref: Annotation, hyp: Annotation) -> list[MatchingDivergence]:
    """Matched speaker pairs where greedy utterance matching loses intersection.

    Pairs with more utterances than the exhaustive search allows are skipped.
    """

    ref_merged = merge_utterances(ref)
    hyp_merged = merge_utterances(hyp)
    divergences: list[MatchingDivergence] = []

    for ref_label, hyp_label in match_speakers(ref, hyp).pairs:
        ref_utts, hyp_utts = ref_merged[ref_label], hyp_merged[hyp_label]
        if max(len(ref_utts), len(hyp_utts)) > MAX_UTTERANCES:
            logger.debug(
                "{}: {}/{} too large for exhaustive matching",
                ref.recording_id,
                ref_label,
                hyp_label,
            )
            continue

        greedy = match_utterances(ref_utts, hyp_utts)
        exhaustive = exhaustive_cder_match(ref_utts, hyp_utts)
        greedy_total = matching_total(ref_utts, hyp_utts, greedy)
        exhaustive_total = matching_total(ref_utts, hyp_utts, exhaustive)

        if greedy_total < exhaustive_total:
            divergence = MatchingDivergence(
                ref.recording_id,
                ref_label,
                hyp_label,
                tuple(greedy),
                tuple(exhaustive),
                greedy_total,
                exhaustive_total,
            )
            logger.warning("Greedy utterance matching diverges: {}", divergence)
            divergences.append(divergence)

    return divergences
