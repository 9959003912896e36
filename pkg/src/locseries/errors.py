"""Exception types shared across the package."""


class LocseriesError(Exception):
    """Base class for all errors raised by this package."""


class PresentationSyntaxError(LocseriesError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CapExceeded(LocseriesError):
    """An enumeration did not close within its cap.

    Signals possibly-infinite index or order; never a wrong answer.
    """

    def __init__(self, cap: int, context: str = "enumeration"):
        super().__init__(f"{context} exceeded cap of {cap}")
        self.cap = cap


class NotInSubgroup(LocseriesError):
    pass


class NotSurjective(LocseriesError):
    pass


class UnsupportedCoefficients(LocseriesError):
    pass


class UnsupportedAction(LocseriesError):
    pass


class UnsupportedQuotient(LocseriesError):
    pass


class BaseHasZeroRho(LocseriesError):
    pass


class InvalidSeifertMatrix(LocseriesError):
    pass
