from .errors import EmptyReport, MalformedLine, RttmError
from .parser import (
    RttmRecord,
    annotations_from_records,
    load_rttm,
    normalize_turns,
    parse_records,
    parse_rttm,
    rttm_files,
)
from .report import COLUMNS, write_report
from .writer import write_rttm

__all__ = (
    "COLUMNS",
    "EmptyReport",
    "MalformedLine",
    "RttmError",
    "RttmRecord",
    "annotations_from_records",
    "load_rttm",
    "normalize_turns",
    "parse_records",
    "parse_rttm",
    "rttm_files",
    "write_report",
    "write_rttm",
)
