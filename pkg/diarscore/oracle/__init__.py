from .errors import ExtentTooLarge, OracleError, TooManyUtterances
from .exhaustive import (
    MAX_UTTERANCES,
    MatchingDivergence,
    exhaustive_cder_match,
    matching_divergences,
    matching_total,
)
from .grid import MAX_EXTENT_MS, GridTimeline, grid_der

__all__ = (
    "MAX_EXTENT_MS",
    "MAX_UTTERANCES",
    "ExtentTooLarge",
    "GridTimeline",
    "MatchingDivergence",
    "OracleError",
    "TooManyUtterances",
    "exhaustive_cder_match",
    "grid_der",
    "matching_divergences",
    "matching_total",
)
