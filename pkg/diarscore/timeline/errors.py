from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from diarscore.error import DiarScoreError

if TYPE_CHECKING:
    from .models import Turn


class TimelineError(DiarScoreError):
    pass


class InvalidSegment(TimelineError):
    def __init__(self, start: int, end: int) -> None:
        self.start = start
        self.end = end

        super().__init__(f"Invalid segment [{start}, {end}): need 0 <= start < end")


class SameSpeakerOverlap(TimelineError):
    def __init__(
        self,
        recording_id: str,
        speaker: str,
        turn: Turn,
        line_no: Optional[int] = None,
    ) -> None:
        self.recording_id = recording_id
        self.speaker = speaker
        self.turn = turn
        self.line_no = line_no

        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(
            f"Speaker {speaker!r} has overlapping turns in {recording_id!r}"
            f" at [{turn.start}, {turn.end}) ms{where}"
        )
