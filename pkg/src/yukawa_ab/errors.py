"""Exception hierarchy shared by every module in the package."""


class YukawaABError(Exception):
    """Base class for all package-specific errors."""


class DomainError(YukawaABError):
    """An input lies outside the mathematical domain of an operation."""


class QuadratureError(YukawaABError):
    """Normalization quadrature failed to converge (unbound or near-threshold state)."""


class IterationLimit(YukawaABError):
    """An eigenvalue bracket failed to shrink; usually signals NaN contamination."""


class SingularShift(YukawaABError):
    """Inverse iteration hit an exactly singular shifted system."""


class UsageError(YukawaABError):
    """Invalid command-line input; maps to exit code 2."""
