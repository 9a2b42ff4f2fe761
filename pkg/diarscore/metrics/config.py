from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isfinite

from diarscore.constants import DEFAULT_COLLAR_S, DEFAULT_ETA
from diarscore.error import InvalidConfig
from diarscore.timeline import TimeMs, to_ms


@dataclass(frozen=True)
class DerConfig:
    collar_s: float = DEFAULT_COLLAR_S
    score_overlap: bool = True

    def __post_init__(self) -> None:
        if not (isfinite(self.collar_s) and self.collar_s >= 0):
            raise InvalidConfig(f"collar_s must be >= 0, got {self.collar_s}")

    @property
    def collar_ms(self) -> TimeMs:
        return to_ms(self.collar_s)


@dataclass(frozen=True)
class CderConfig:
    eta: float = DEFAULT_ETA
    count_unmatched_hyp_speakers: bool = False

    def __post_init__(self) -> None:
        if not 0 < self.eta < 1:
            raise InvalidConfig(f"eta must lie in (0, 1), got {self.eta}")

    @property
    def eta_ratio(self) -> Fraction:
        # Exact decimal value of eta, so IoU comparisons stay in integers.
        return Fraction(str(self.eta))
