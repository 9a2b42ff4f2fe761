from diarscore.error import DiarScoreError


class RttmError(DiarScoreError):
    pass


class MalformedLine(RttmError):
    def __init__(self, source: str, line_no: int, reason: str) -> None:
        self.source = source
        self.line_no = line_no
        self.reason = reason

        super().__init__(f"{source}:{line_no}: {reason}")


class EmptyReport(RttmError):
    def __init__(self) -> None:
        super().__init__("Cannot write a report without any recordings")
