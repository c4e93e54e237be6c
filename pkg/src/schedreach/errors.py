"""Analyzer exceptions."""


class SchedReachError(Exception):
    """Base exception for the analyzer."""


class TaskSetError(SchedReachError):
    """Base exception for invalid task-set input."""


class TaskSetSyntaxError(TaskSetError):
    """A task-set file could not be parsed."""

    def __init__(self, message: str, line: int, column: int) -> None:
        """Initialize the error.

        Args:
            message: What was wrong.
            line: The 1-based line number of the offending token.
            column: The 1-based column number of the offending token.
        """
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class TaskConstraintError(TaskSetError):
    """A task violates one of the task model constraints."""


class ManifestError(TaskSetError):
    """A corpus manifest could not be read."""


class PreconditionError(SchedReachError, ValueError):
    """An operation was called outside of its documented domain."""


class ResourceLimitError(SchedReachError):
    """An explicit construction exceeded its configured limit."""


class GenerationExhaustedError(SchedReachError):
    """The generator gave up before accepting enough task sets."""

    def __init__(self, attempts: int, accepted: int, requested: int) -> None:
        """Initialize the error."""
        super().__init__(
            f"Generation exhausted after {attempts} attempts "
            f"({accepted} of {requested} sets accepted)"
        )
        self.attempts = attempts
        self.accepted = accepted


class ConsistencyError(SchedReachError):
    """Two engines disagreed on a verdict."""
