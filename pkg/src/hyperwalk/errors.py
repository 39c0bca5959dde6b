"""Exception taxonomy shared by every module.

The command line maps these onto exit codes: usage problems exit 2 (click's
own convention), ValidationError and ParseError exit 3, anything else exit 4.
Exit 1 is reserved for commands whose verdict is "fail".
"""


class HyperwalkError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HyperwalkError):
    """Input violates a documented precondition or structural invariant."""


class ParseError(HyperwalkError):
    """A file or string could not be decoded into the requested object."""


class IsolatedVertexError(ValidationError):
    """A pattern vertex belongs to no triple, so no complete schedule exists."""


class InvalidScheduleError(ValidationError):
    """A loading schedule violates one of the well-formedness clauses."""

    def __init__(self, message, clause=None, position=None):
        super().__init__(message)
        self.clause = clause
        self.position = position


class KeyMismatchError(ValidationError):
    """Parameter exponents are keyed by a different pattern than supplied."""


class VacuousBoundWarning(UserWarning):
    """A theoretical success bound is non-positive, so the check is vacuous."""
