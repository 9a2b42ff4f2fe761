from __future__ import annotations

from typing import Iterable

from diarscore.timeline import Annotation, format_seconds

_PLACEHOLDER = "<NA>"


def format_line(ann: Annotation, turn_index: int) -> str:
    turn = ann.turns[turn_index]

    return " ".join(
        (
            "SPEAKER",
            ann.recording_id,
            ann.channel,
            format_seconds(turn.start),
            format_seconds(turn.segment.duration),
            _PLACEHOLDER,
            _PLACEHOLDER,
            turn.speaker,
            _PLACEHOLDER,
            _PLACEHOLDER,
        )
    )


def write_rttm(anns: Iterable[Annotation]) -> bytes:
    """Serialize annotations as RTTM, ordered by (file id, start, speaker)."""

    lines: list[str] = []

    for ann in sorted(anns, key=lambda ann: ann.recording_id):
        order = sorted(
            range(len(ann.turns)),
            key=lambda i: (ann.turns[i].start, ann.turns[i].speaker, ann.turns[i].end),
        )
        lines.extend(format_line(ann, i) for i in order)

    return "".join(f"{line}\n" for line in lines).encode("utf-8")
