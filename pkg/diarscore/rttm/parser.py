from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from decimal import Decimal
from os import PathLike
from pathlib import Path
from typing import Iterable, Union

from loguru import logger

from diarscore.timeline import (
    Annotation,
    SameSpeakerOverlap,
    Segment,
    Turn,
    to_ms,
)

from .errors import MalformedLine

FIELD_COUNT = 10
RECORD_TYPE = "SPEAKER"
COMMENT_PREFIXES = (";", "#")
# ASCII digits and an optional decimal point only.
PLAIN_DECIMAL = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)")


@dataclass(frozen=True)
class RttmRecord:
    file_id: str
    channel: str
    onset_s: Decimal
    duration_s: Decimal
    speaker: str
    line_no: int

    @property
    def turn(self) -> Turn:
        start = to_ms(self.onset_s)
        return Turn(self.speaker, Segment(start, to_ms(self.onset_s + self.duration_s)))


def _decimal(text: str, name: str, source: str, line_no: int) -> Decimal:
    if not PLAIN_DECIMAL.fullmatch(text):
        raise MalformedLine(source, line_no, f"{name} {text!r} is not a plain decimal")

    return Decimal(text)


def _lines(data: Union[bytes, str]) -> Iterable[tuple[int, bytes]]:
    raw = data.encode("utf-8") if isinstance(data, str) else data
    return enumerate(raw.split(b"\n"), start=1)


def parse_records(data: Union[bytes, str], source: str = "<rttm>") -> list[RttmRecord]:
    """Parse the SPEAKER records of an RTTM document in file order."""

    records: list[RttmRecord] = []

    for line_no, raw in _lines(data):
        try:
            line = raw.decode("utf-8").rstrip("\r")
        except UnicodeDecodeError:
            raise MalformedLine(source, line_no, "line is not valid UTF-8") from None

        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue

        fields = stripped.split()
        if len(fields) != FIELD_COUNT:
            raise MalformedLine(
                source, line_no, f"expected {FIELD_COUNT} fields, got {len(fields)}"
            )

        if fields[0] != RECORD_TYPE:
            logger.debug("{}:{}: skipping {} record", source, line_no, fields[0])
            continue

        onset = _decimal(fields[3], "onset", source, line_no)
        duration = _decimal(fields[4], "duration", source, line_no)

        if onset < 0:
            raise MalformedLine(source, line_no, f"negative onset {fields[3]}")
        if duration <= 0:
            raise MalformedLine(source, line_no, f"non-positive duration {fields[4]}")
        if to_ms(onset + duration) <= to_ms(onset):
            raise MalformedLine(
                source, line_no, f"duration {fields[4]} rounds to zero milliseconds"
            )

        records.append(
            RttmRecord(fields[1], fields[2], onset, duration, fields[7], line_no)
        )

    return records


def normalize_turns(turns: Iterable[Turn]) -> list[Turn]:
    """Fuse overlapping turns of the same speaker into one turn each."""

    fused: list[Turn] = []
    last: dict[str, int] = {}

    for turn in sorted(turns, key=lambda turn: turn.sort_key):
        index = last.get(turn.speaker)

        if index is not None and fused[index].end > turn.start:
            previous = fused[index]
            if turn.end > previous.end:
                fused[index] = Turn(turn.speaker, Segment(previous.start, turn.end))
            continue

        last[turn.speaker] = len(fused)
        fused.append(turn)

    return fused


def annotations_from_records(
    records: Iterable[RttmRecord], source: str = "<rttm>", normalize: bool = False
) -> list[Annotation]:
    """Group records by file id into canonical annotations, sorted by file id."""

    grouped: dict[str, list[RttmRecord]] = defaultdict(list)
    for record in records:
        grouped[record.file_id].append(record)

    annotations: list[Annotation] = []

    for file_id in sorted(grouped):
        group = grouped[file_id]
        channels = sorted({record.channel for record in group})
        if len(channels) > 1:
            logger.warning(
                "{}: recording {} mixes channels {}; keeping {}",
                source,
                file_id,
                channels,
                group[0].channel,
            )

        turns = [record.turn for record in group]

        if normalize:
            turns = normalize_turns(turns)

        try:
            annotations.append(Annotation(file_id, turns, group[0].channel))
        except SameSpeakerOverlap as e:
            line_no = next(
                (
                    record.line_no
                    for record in group
                    if record.speaker == e.speaker and record.turn == e.turn
                ),
                None,
            )
            raise SameSpeakerOverlap(file_id, e.speaker, e.turn, line_no) from None

    return annotations


def parse_rttm(
    data: Union[bytes, str], source: str = "<rttm>", normalize: bool = False
) -> list[Annotation]:
    """Parse an RTTM document into one canonical annotation per file id."""

    return annotations_from_records(parse_records(data, source), source, normalize)


def rttm_files(path: Union[str, PathLike]) -> list[Path]:
    path = Path(path)
    return sorted(path.glob("*.rttm")) if path.is_dir() else [path]


def load_rttm(path: Union[str, PathLike], normalize: bool = False) -> list[Annotation]:
    """Load an RTTM file, or every ``*.rttm`` file of a directory.

    Records are paired by the file id they carry, not by file name, so one
    recording may be spread over several files.
    """

    records: list[RttmRecord] = []
    for file in rttm_files(path):
        records.extend(parse_records(file.read_bytes(), str(file)))

    return annotations_from_records(records, str(path), normalize)
