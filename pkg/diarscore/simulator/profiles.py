from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from diarscore.constants import (
    DIALOG_DURATION_MIN,
    SEGMENT_MAX_S,
    SEGMENT_MEAN_S,
    SEGMENT_MIN_S,
)
from diarscore.error import InvalidConfig


def _check_probability(name: str, value: float) -> None:
    if not 0 <= value <= 1:
        raise InvalidConfig(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class DialogProfile:
    duration_min: float = DIALOG_DURATION_MIN
    mean_segment_s: float = SEGMENT_MEAN_S
    segment_s_range: tuple[float, float] = (SEGMENT_MIN_S, SEGMENT_MAX_S)
    turn_taking_rate: float = 0.75
    overlap_prob: float = 0.1
    rng_seed: int = 0
    duration_sigma: float = 0.8
    mean_gap_s: float = 0.4
    speakers: tuple[str, str] = ("A", "B")

    def __post_init__(self) -> None:
        low, high = self.segment_s_range

        if self.duration_min <= 0 or self.mean_segment_s <= 0:
            raise InvalidConfig("Dialog and segment durations must be positive")
        if not 0 < low <= self.mean_segment_s <= high:
            raise InvalidConfig(
                f"segment_s_range {self.segment_s_range} must bracket the mean"
                f" {self.mean_segment_s}"
            )
        if self.duration_sigma <= 0 or self.mean_gap_s < 0:
            raise InvalidConfig("duration_sigma must be positive and mean_gap_s >= 0")
        if len(set(self.speakers)) != 2:
            raise InvalidConfig(f"Need two distinct speakers, got {self.speakers}")

        _check_probability("turn_taking_rate", self.turn_taking_rate)
        _check_probability("overlap_prob", self.overlap_prob)


@dataclass(frozen=True)
class ErrorProfile:
    boundary_jitter_std_ms: float = 0.0
    short_segment_drop_prob: float = 0.0
    split_prob: float = 0.0
    merge_prob: float = 0.0
    confusion_prob: float = 0.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.boundary_jitter_std_ms < 0:
            raise InvalidConfig("boundary_jitter_std_ms must be >= 0")

        _check_probability("short_segment_drop_prob", self.short_segment_drop_prob)
        _check_probability("split_prob", self.split_prob)
        _check_probability("merge_prob", self.merge_prob)
        _check_probability("confusion_prob", self.confusion_prob)

    @property
    def is_identity(self) -> bool:
        return not any(
            (
                self.boundary_jitter_std_ms,
                self.short_segment_drop_prob,
                self.split_prob,
                self.merge_prob,
                self.confusion_prob,
            )
        )


def severity_grid(
    n_systems: int,
    seed: int = 0,
    max_jitter_ms: float = 400.0,
    max_drop: float = 0.6,
    max_split: float = 0.25,
    max_merge: float = 0.25,
    max_confusion: float = 0.3,
) -> list[ErrorProfile]:
    """Error profiles ramping linearly from error-free to ``max_*`` severity."""

    return [
        ErrorProfile(
            boundary_jitter_std_ms=float(max_jitter_ms * severity),
            short_segment_drop_prob=float(max_drop * severity),
            split_prob=float(max_split * severity),
            merge_prob=float(max_merge * severity),
            confusion_prob=float(max_confusion * severity),
            rng_seed=seed + i,
        )
        for i, severity in enumerate(np.linspace(0.0, 1.0, n_systems))
    ]
