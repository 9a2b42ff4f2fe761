from .activity import ActivityIndex
from .errors import InvalidSegment, SameSpeakerOverlap, TimelineError
from .models import Annotation, Segment, TimeMs, Turn, format_seconds, to_ms
from .ops import (
    any_other_speaker_active,
    coalesce,
    complement,
    crop,
    intersect,
    overlap_regions,
    speaker_timeline,
    total_intersection,
    union_duration,
)

__all__ = (
    "ActivityIndex",
    "Annotation",
    "InvalidSegment",
    "SameSpeakerOverlap",
    "Segment",
    "TimeMs",
    "TimelineError",
    "Turn",
    "any_other_speaker_active",
    "coalesce",
    "complement",
    "crop",
    "format_seconds",
    "intersect",
    "overlap_regions",
    "speaker_timeline",
    "to_ms",
    "total_intersection",
    "union_duration",
)
