"""Exception hierarchy shared by the engine modules.

The HTTP layer maps these onto status codes (parse -> 400, unknown item
-> 404, invalid parameter -> 422, stale artifact -> 409), so raising the
right subtype matters more than the message wording.
"""


class EngineError(Exception):
    """Base class for all errors raised by rankproj modules."""


class ParseError(EngineError):
    """Malformed input data. Carries 1-based row/column when known."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        if row is not None and column is not None:
            message = f"{message} (row {row}, column {column})"
        elif row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)


class UnknownItemError(EngineError):
    """An item id (or scheme name) does not exist."""


class InvalidParameterError(EngineError):
    """A request or argument violates a precondition."""


class InsufficientTrainingDataError(InvalidParameterError):
    """Fewer marked items than the training minimum."""


class DegenerateTrainingSetError(EngineError):
    """Every constraint has a zero difference vector; nothing to learn."""


class StaleArtifactError(EngineError):
    """A derived artifact no longer matches its upstream inputs."""


class OperationCancelledError(EngineError):
    """A cooperative cancellation checkpoint fired."""
