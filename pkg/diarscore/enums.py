from enum import Enum


class Metric(Enum):
    DER = "der"
    CDER = "cder"
    ALL = "all"

    @property
    def wants_der(self) -> bool:
        return self in (Metric.DER, Metric.ALL)

    @property
    def wants_cder(self) -> bool:
        return self in (Metric.CDER, Metric.ALL)


class ReportFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"
