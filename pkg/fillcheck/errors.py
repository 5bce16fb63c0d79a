"""
Exception types raised by fillcheck operations.
The CLI maps them onto exit statuses (validation -> 2, precondition -> 3).
"""


class FillcheckError(ValueError):
    """Base class for every error raised on purpose by fillcheck."""


class PreconditionError(FillcheckError):
    """An operation was called outside its stated hypotheses."""


class InputValidationError(FillcheckError):
    """A request payload is malformed or names an unknown field/command."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
