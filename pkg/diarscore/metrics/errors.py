from __future__ import annotations

from typing import Any, Optional

from diarscore.error import DiarScoreError


class MetricError(DiarScoreError):
    pass


class UndefinedMetric(MetricError):
    """The metric has a zero denominator; ``report`` still holds the raw counts."""

    def __init__(self, report: Any, reason: Optional[str] = None) -> None:
        self.report = report

        recording = getattr(report, "recording_id", None)
        super().__init__(
            reason or f"Metric is undefined for recording {recording!r}"
        )


class EmptyReference(UndefinedMetric):
    def __init__(self, report: Any) -> None:
        super().__init__(
            report,
            f"Reference of {report.recording_id!r} has no scored speech",
        )


class EmptyInput(MetricError):
    pass
