from __future__ import annotations

from bisect import bisect_left
from itertools import accumulate
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .models import Segment


class ActivityIndex:
    """Answers "does any indexed segment intersect this window" in O(log n).

    Segments must be sorted by start. A running maximum of end times over that
    order means the segments starting before ``window.end`` intersect the window
    exactly when the largest of their ends lies after ``window.start``.
    """

    __slots__ = ("_starts", "_max_ends")

    def __init__(self, segments: Sequence[Segment]) -> None:
        self._starts = [segment.start for segment in segments]
        self._max_ends = list(accumulate((segment.end for segment in segments), max))

    def __len__(self) -> int:
        return len(self._starts)

    def active(self, start: int, end: int) -> bool:
        count = bisect_left(self._starts, end)
        return count > 0 and self._max_ends[count - 1] > start
