class DiarScoreError(Exception):
    """Base class for diarscore errors."""

    pass


class InvalidConfig(DiarScoreError, ValueError):
    """Raised when a configuration or profile value is out of range."""

    pass
