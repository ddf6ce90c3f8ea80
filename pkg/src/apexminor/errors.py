"""Exception types shared across the toolkit."""

from __future__ import annotations


class MinorToolkitError(Exception):
    """Base class for every error raised by apexminor."""


class InvalidArgument(MinorToolkitError, ValueError):
    pass


class PreconditionError(MinorToolkitError):
    """An input violates a documented precondition.

    ``witness`` names the offending object (usually a vertex) when there is one.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidModel(MinorToolkitError):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ExtractionFailure(MinorToolkitError):
    """A randomized extractor gave up.

    ``code`` is one of ``"trials-exhausted"`` or ``"guarantee-zero"``.
    """

    def __init__(self, code: str, message: str, trials: int = 0):
        super().__init__(message)
        self.code = code
        self.trials = trials


class OracleLimitError(MinorToolkitError):
    pass
