"""Exception and warning types shared across the package."""


class TubeError(Exception):
    """Base class for numerical errors raised by tubeformula."""


class DomainError(TubeError, ValueError):
    """An argument lies outside the domain of an operation."""


class SingularPointError(TubeError):
    """The manifold vector vanishes (or the variance is non-positive) at a point."""

    def __init__(self, message, point=None):
        if point is not None:
            message = f"{message} at x = {_fmt(point)}"
        super().__init__(message)
        self.point = point


class DegenerateMetricError(SingularPointError):
    """The induced metric is not positive definite at a point."""


class InvalidCovarianceError(SingularPointError):
    """A covariance jet is asymmetric or not positive semidefinite."""


class RankDeficientError(TubeError):
    """A design matrix does not have full column rank."""

    def __init__(self, column):
        super().__init__(f"design matrix is rank deficient at column {column}")
        self.column = column


class UnattainableLevelError(TubeError):
    """No critical value on the decreasing branch of the tail curve gives alpha."""


class TubeWarning(UserWarning):
    """Numerical warning: clamping, grid rounding, truncated series."""


def _fmt(point):
    try:
        return "(" + ", ".join(f"{float(v):.6g}" for v in point) + ")"
    except TypeError:
        return f"{float(point):.6g}"
