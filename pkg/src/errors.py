"""Exception hierarchy shared by every module of the laboratory."""


class SharpFrontError(Exception):
    """Base exception for laboratory errors."""

    exit_code = 1


class UsageError(SharpFrontError):
    """Exception raised when the command line is used incorrectly."""

    exit_code = 1


class ConfigError(SharpFrontError):
    """Exception raised when a run configuration cannot be parsed or validated."""

    exit_code = 2


class DomainError(SharpFrontError):
    """Exception raised when an argument lies outside its mathematical domain."""

    exit_code = 3


class UnsupportedKindError(SharpFrontError):
    """Exception raised when an operation does not apply to a nonlinearity kind."""

    exit_code = 3


class SignPatternError(SharpFrontError):
    """Exception raised when a reaction term does not have its declared sign pattern."""

    exit_code = 3


class NumericalFaultError(SharpFrontError):
    """Exception raised when a computation produces non-finite values."""

    exit_code = 3


class ResolutionError(SharpFrontError):
    """Exception raised when a tabulated object is too coarse for a check."""

    exit_code = 3


class DegenerateBalanceError(SharpFrontError):
    """Exception raised when f vanishes at the balance temperature."""

    exit_code = 3


class InsufficientDataError(SharpFrontError):
    """Exception raised when a trajectory is too short to classify."""

    exit_code = 3


class PreconditionError(SharpFrontError):
    """Exception raised when the hypotheses of a check are not met."""

    exit_code = 3


class BracketError(SharpFrontError):
    """Exception raised when a bisection bracket does not enclose a transition."""

    exit_code = 4


class ConvergenceError(SharpFrontError):
    """Exception raised when an iteration fails to converge."""

    exit_code = 4
