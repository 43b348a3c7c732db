"""Exception types shared across the engine.

Every error carries a stable machine ``code`` so the API and CLI can map
failures without string matching.
"""


class IcarusError(Exception):
    """Base class for all engine errors."""

    code = "error"


class DataError(IcarusError):
    """A bundled or user-supplied data document is malformed."""

    code = "invalid-data"


class MatrixError(DataError):
    code = "invalid-matrix"


class CorpusError(DataError):
    code = "invalid-corpus"


class BatteryError(DataError):
    code = "invalid-questions"


class RuleError(DataError):
    """Rule document rejected; message includes line and column."""

    code = "invalid-rules"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownCellError(IcarusError):
    """A cell token does not resolve against the active matrix."""

    code = "unknown-cell"

    def __init__(self, token: str, detail: str = ""):
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"unknown cell reference {token!r}{suffix}")
        self.token = token


class PromptError(IcarusError):
    """A prompt is structurally invalid for the active space."""

    code = "invalid-prompt"


class RangeError(IcarusError):
    """An index or k-range falls outside the space."""

    code = "out-of-range"


class SampleError(IcarusError):
    """Sampling request cannot be satisfied (infeasible locks, n too large)."""

    code = "sample-infeasible"


class SessionError(IcarusError):
    code = "session-error"


class SeqConflictError(SessionError):
    """An append used a sequence number that is not last seq + 1."""

    code = "seq-conflict"


class NotFoundError(IcarusError):
    """A referenced entity (rank, scenario, session, ruleset) does not exist."""

    code = "not-found"
