from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from functools import cached_property
from typing import Iterable, Optional, Union

from .activity import ActivityIndex
from .errors import InvalidSegment, SameSpeakerOverlap, TimelineError

TimeMs = int

_MS = Decimal(1000)


def to_ms(seconds: Union[str, float, int, Decimal]) -> TimeMs:
    """Convert decimal seconds to integer milliseconds, rounding half away from zero."""

    try:
        value = seconds if isinstance(seconds, Decimal) else Decimal(str(seconds))
        if not value.is_finite():
            raise InvalidOperation
        return int((value * _MS).quantize(Decimal(1), rounding=ROUND_HALF_UP))
    except InvalidOperation:
        raise TimelineError(f"Not a finite decimal time: {seconds!r}") from None


def format_seconds(ms: TimeMs) -> str:
    return f"{ms // 1000}.{ms % 1000:03d}"


@dataclass(frozen=True, order=True)
class Segment:
    """A half-open time interval [start, end) in milliseconds."""

    start: TimeMs
    end: TimeMs

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise InvalidSegment(self.start, self.end)

    @property
    def duration(self) -> TimeMs:
        return self.end - self.start

    def __repr__(self) -> str:
        return f"[{self.start}, {self.end})"


@dataclass(frozen=True)
class Turn:
    speaker: str
    segment: Segment

    def __post_init__(self) -> None:
        if not self.speaker:
            raise TimelineError("Speaker label must be non-empty")

    @property
    def start(self) -> TimeMs:
        return self.segment.start

    @property
    def end(self) -> TimeMs:
        return self.segment.end

    @property
    def sort_key(self) -> tuple[TimeMs, TimeMs, str]:
        return (self.segment.start, self.segment.end, self.speaker)


@dataclass(frozen=True, init=False)
class Annotation:
    """Every speaker turn of one recording, in canonical (start, end, speaker) order.

    Turns of one speaker never overlap; turns of different speakers may.
    """

    recording_id: str
    turns: tuple[Turn, ...] = ()
    channel: str = field(default="1", compare=False)

    def __init__(
        self, recording_id: str, turns: Iterable[Turn] = (), channel: str = "1"
    ) -> None:
        object.__setattr__(self, "recording_id", recording_id)
        object.__setattr__(self, "turns", tuple(sorted(turns, key=_turn_key)))
        object.__setattr__(self, "channel", channel)

        self._check_speaker_overlap()

    def _check_speaker_overlap(self) -> None:
        last_end: dict[str, TimeMs] = {}

        for turn in self.turns:
            if last_end.get(turn.speaker, 0) > turn.start:
                raise SameSpeakerOverlap(self.recording_id, turn.speaker, turn)
            last_end[turn.speaker] = turn.end

    def __len__(self) -> int:
        return len(self.turns)

    @cached_property
    def speakers(self) -> tuple[str, ...]:
        return tuple(sorted({turn.speaker for turn in self.turns}))

    @cached_property
    def by_speaker(self) -> dict[str, tuple[Segment, ...]]:
        grouped: dict[str, list[Segment]] = {speaker: [] for speaker in self.speakers}

        for turn in self.turns:
            grouped[turn.speaker].append(turn.segment)

        return {speaker: tuple(segments) for speaker, segments in grouped.items()}

    @property
    def end(self) -> TimeMs:
        return max((turn.end for turn in self.turns), default=0)

    @property
    def extent(self) -> Optional[Segment]:
        """The recording extent [0, last turn end), or None when there is no speech."""

        end = self.end
        return Segment(0, end) if end else None

    @property
    def total_speech(self) -> TimeMs:
        return sum(turn.segment.duration for turn in self.turns)

    def activity(self, speaker: str) -> ActivityIndex:
        """Index over the turns of every speaker except ``speaker``."""

        cache = self.__dict__.setdefault("_activity", {})
        if speaker not in cache:
            cache[speaker] = ActivityIndex(
                [turn.segment for turn in self.turns if turn.speaker != speaker]
            )
        return cache[speaker]

    def with_turns(self, turns: Iterable[Turn]) -> Annotation:
        return Annotation(self.recording_id, turns, self.channel)


def _turn_key(turn: Turn) -> tuple[TimeMs, TimeMs, str]:
    return turn.sort_key
