class IntrinsicMetricsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(IntrinsicMetricsError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class DimensionMismatchError(IntrinsicMetricsError, ValueError):
    pass


class PointOutsideDomainError(DomainError):
    pass


class ConvergenceError(IntrinsicMetricsError, RuntimeError):
    """An iteration did not reach its tolerance; indicates a numerics bug."""


class SearchFailure(IntrinsicMetricsError):
    """A witness search exhausted its range without success.

    ``trace`` holds the scan history so callers can report how far it got.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])
