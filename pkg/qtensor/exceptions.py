# qtensor/exceptions.py


class TCPError(Exception):
    """Root of every error raised by qtensor operations."""

    def __init__(self, detail: str, exit_code: int = 1):
        self.detail = detail
        self.exit_code = exit_code
        super().__init__(detail)


class TensorValidationError(TCPError):
    pass


class DimensionMismatchError(TCPError):
    def __init__(self, expected: int, got: int, what: str = "vector"):
        super().__init__(
            detail=f"Dimension mismatch: {what} has length {got}, expected {expected}"
        )
        self.expected = expected
        self.got = got


class PreconditionError(TCPError):
    pass


class SolverRefusalError(TCPError):
    pass


class SubproblemUnsolvedError(TCPError):
    pass


class InputParseError(TCPError):
    def __init__(self, detail: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(detail=f"{prefix}{detail}")
        self.line = line


class UsageError(TCPError):
    pass
