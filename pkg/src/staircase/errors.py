"""Exception hierarchy shared by the library and the command line tool."""


class StaircaseError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParameterError(StaircaseError, ValueError):
    exit_code = 2


class SingularMatrixError(StaircaseError, ArithmeticError):
    """Raised when a square system has no unique solution."""

    exit_code = 4

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


class InsufficientPartiesError(StaircaseError):
    exit_code = 3


class DecodabilityError(StaircaseError):
    """The read symbols do not pin down every secret coordinate."""

    exit_code = 3


class CorruptionError(StaircaseError):
    exit_code = 4


class FormatError(StaircaseError):
    exit_code = 4


class BudgetExceededError(StaircaseError):
    exit_code = 2
