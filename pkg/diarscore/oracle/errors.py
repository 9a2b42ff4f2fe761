from diarscore.error import DiarScoreError


class OracleError(DiarScoreError):
    pass


class ExtentTooLarge(OracleError):
    def __init__(self, extent_ms: int, limit_ms: int) -> None:
        self.extent_ms = extent_ms
        self.limit_ms = limit_ms

        super().__init__(
            f"Recording extent of {extent_ms} ms exceeds the grid limit of {limit_ms} ms"
        )


class TooManyUtterances(OracleError):
    def __init__(self, count: int, limit: int) -> None:
        self.count = count
        self.limit = limit

        super().__init__(f"Exhaustive matching takes at most {limit} utterances, got {count}")
