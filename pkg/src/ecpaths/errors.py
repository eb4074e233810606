"""Exception types shared across the package."""


class SolverError(Exception):
    """Base class for every error raised by this package."""


class GraphError(SolverError):
    """Invalid vertex/color identifiers or malformed graph construction."""


class ParseError(SolverError):
    """Malformed ECG (or companion format) input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(SolverError):
    """A solver was invoked on an instance outside its structural class."""


class EnumerationOverflow(SolverError):
    """Path enumeration exceeded the configured cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"path enumeration exceeded cap of {cap}")


class SizeLimitError(SolverError):
    """A brute-force solver was handed an instance above its size limit."""


class ReductionError(SolverError):
    """Invalid input to a reduction or to one of its solution mappers."""
