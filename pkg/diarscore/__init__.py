from loguru import logger

from .constants import DEFAULT_COLLAR_S, DEFAULT_ETA, OVERALL_ID, VERSION
from .enums import Metric, ReportFormat
from .error import DiarScoreError, InvalidConfig
from .metrics import (
    CderConfig,
    CderReport,
    CorpusScore,
    DerConfig,
    DerReport,
    EmptyInput,
    EmptyReference,
    MergedUtterance,
    MetricError,
    RecordingScore,
    SpeakerMap,
    UndefinedMetric,
    aggregate_cder,
    aggregate_der,
    compute_cder,
    compute_der,
    match_speakers,
    merge_utterances,
    score_corpus,
)
from .rttm import (
    EmptyReport,
    MalformedLine,
    RttmError,
    load_rttm,
    parse_rttm,
    write_report,
    write_rttm,
)
from .timeline import (
    Annotation,
    InvalidSegment,
    SameSpeakerOverlap,
    Segment,
    TimelineError,
    Turn,
)

logger.disable("diarscore")

__all__ = (
    "DEFAULT_COLLAR_S",
    "DEFAULT_ETA",
    "OVERALL_ID",
    "VERSION",
    "Annotation",
    "CderConfig",
    "CderReport",
    "CorpusScore",
    "DerConfig",
    "DerReport",
    "DiarScoreError",
    "EmptyInput",
    "EmptyReference",
    "EmptyReport",
    "InvalidConfig",
    "InvalidSegment",
    "MalformedLine",
    "MergedUtterance",
    "Metric",
    "MetricError",
    "RecordingScore",
    "ReportFormat",
    "RttmError",
    "SameSpeakerOverlap",
    "Segment",
    "SpeakerMap",
    "TimelineError",
    "Turn",
    "UndefinedMetric",
    "aggregate_cder",
    "aggregate_der",
    "compute_cder",
    "compute_der",
    "load_rttm",
    "match_speakers",
    "merge_utterances",
    "parse_rttm",
    "score_corpus",
    "write_report",
    "write_rttm",
)
