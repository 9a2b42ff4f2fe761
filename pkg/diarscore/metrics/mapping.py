from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from loguru import logger
import numpy as np
from scipy.optimize import linear_sum_assignment

from diarscore.timeline import Annotation, TimeMs, total_intersection

MAX_TIED_MAPS = 256


@dataclass(frozen=True, eq=False)
class OverlapMatrix:
    """Entry (i, j) is the time ref speaker i and hyp speaker j talk together."""

    ref_labels: tuple[str, ...]
    hyp_labels: tuple[str, ...]
    values: np.ndarray


@dataclass(frozen=True)
class SpeakerMap:
    pairs: tuple[tuple[str, str], ...]
    unmatched_ref: tuple[str, ...]
    unmatched_hyp: tuple[str, ...]
    total_overlap: TimeMs = 0

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def hyp_for(self, ref_label: str) -> Optional[str]:
        return self.as_dict().get(ref_label)


def overlap_matrix(ref: Annotation, hyp: Annotation) -> OverlapMatrix:
    values = np.zeros((len(ref.speakers), len(hyp.speakers)), dtype=np.int64)

    for i, ref_label in enumerate(ref.speakers):
        for j, hyp_label in enumerate(hyp.speakers):
            values[i, j] = total_intersection(
                ref.by_speaker[ref_label], hyp.by_speaker[hyp_label]
            )

    return OverlapMatrix(ref.speakers, hyp.speakers, values)


def _optimum(values: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> int:
    if not rows or not cols:
        return 0

    sub = values[np.ix_(rows, cols)]
    row_ind, col_ind = linear_sum_assignment(sub, maximize=True)

    return int(sub[row_ind, col_ind].sum())


def _optimal_assignments(values: np.ndarray, limit: int) -> list[list[tuple[int, int]]]:
    """Every maximum-total assignment, in lexicographic order, up to ``limit`` of them.

    Rows are walked in order; a row takes any column that still lets the
    remaining rows reach the optimum (lowest first) or is left unmatched when
    that is optimal too. Zero entries are never taken.
    """

    n_rows, n_cols = values.shape
    best = _optimum(values, list(range(n_rows)), list(range(n_cols)))
    found: list[list[tuple[int, int]]] = []

    def search(row: int, free_cols: list[int], fixed: int, pairs: list[tuple[int, int]]):
        if len(found) >= limit:
            return
        if row == n_rows:
            found.append(pairs)
            return

        rest = list(range(row + 1, n_rows))

        for col in free_cols:
            gain = int(values[row, col])
            if gain <= 0:
                continue

            others = [c for c in free_cols if c != col]
            if fixed + gain + _optimum(values, rest, others) == best:
                search(row + 1, others, fixed + gain, pairs + [(row, col)])

        if fixed + _optimum(values, rest, free_cols) == best:
            search(row + 1, free_cols, fixed, pairs)

    search(0, list(range(n_cols)), 0, [])
    return found


def _lexicographic_assignment(values: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-total assignment, lexicographically smallest among ties."""

    return _optimal_assignments(values, limit=1)[0]


def _speaker_map(matrix: OverlapMatrix, assignment: list[tuple[int, int]]) -> SpeakerMap:
    pairs = tuple(
        (matrix.ref_labels[row], matrix.hyp_labels[col]) for row, col in assignment
    )
    matched_ref = {ref_label for ref_label, _ in pairs}
    matched_hyp = {hyp_label for _, hyp_label in pairs}

    return SpeakerMap(
        pairs=pairs,
        unmatched_ref=tuple(label for label in matrix.ref_labels if label not in matched_ref),
        unmatched_hyp=tuple(label for label in matrix.hyp_labels if label not in matched_hyp),
        total_overlap=sum(int(matrix.values[row, col]) for row, col in assignment),
    )


def match_speakers(ref: Annotation, hyp: Annotation) -> SpeakerMap:
    """One-to-one speaker mapping maximizing total overlapped time."""

    matrix = overlap_matrix(ref, hyp)
    return _speaker_map(matrix, _lexicographic_assignment(matrix.values))


def tied_speaker_maps(
    ref: Annotation, hyp: Annotation, limit: int = MAX_TIED_MAPS
) -> list[SpeakerMap]:
    """All mappings reaching the maximum total overlap, ``match_speakers``'s one first.

    Past ``limit`` ties only the lexicographic mapping is returned.
    """

    matrix = overlap_matrix(ref, hyp)
    assignments = _optimal_assignments(matrix.values, limit + 1)

    if len(assignments) > limit:
        logger.debug(
            "{}: more than {} tied speaker maps; keeping the first",
            ref.recording_id,
            limit,
        )
        assignments = assignments[:1]

    return [_speaker_map(matrix, assignment) for assignment in assignments]
