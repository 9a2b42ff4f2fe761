from .cder import (
    CderReport,
    MergedUtterance,
    aggregate_cder,
    compute_cder,
    iou,
    match_utterances,
    merge_utterances,
    merged_annotation,
)
from .config import CderConfig, DerConfig
from .corpus import (
    CorpusScore,
    RecordingScore,
    pair_recordings,
    score_corpus,
    score_recording,
)
from .der import (
    DerReport,
    aggregate_der,
    compute_der,
    der_speaker_map,
    joint_extent,
    restrict,
    scoring_regions,
)
from .errors import EmptyInput, EmptyReference, MetricError, UndefinedMetric
from .mapping import (
    OverlapMatrix,
    SpeakerMap,
    match_speakers,
    overlap_matrix,
    tied_speaker_maps,
)

__all__ = (
    "CderConfig",
    "CderReport",
    "CorpusScore",
    "DerConfig",
    "DerReport",
    "EmptyInput",
    "EmptyReference",
    "MergedUtterance",
    "MetricError",
    "OverlapMatrix",
    "RecordingScore",
    "SpeakerMap",
    "UndefinedMetric",
    "aggregate_cder",
    "aggregate_der",
    "compute_cder",
    "compute_der",
    "der_speaker_map",
    "iou",
    "joint_extent",
    "match_speakers",
    "match_utterances",
    "merge_utterances",
    "merged_annotation",
    "overlap_matrix",
    "pair_recordings",
    "restrict",
    "score_corpus",
    "score_recording",
    "tied_speaker_maps",
)
