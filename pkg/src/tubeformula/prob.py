"""Tail probabilities and critical values for suprema of random processes.

For a process ``Z(x) = <T(x), e>`` the tube series gives

    P(sup Z >= c) ~ sum_k kap[k] / A_{d+1-k} * tail_{d+1-k}(c)

with ``tail_j(c) = P(chi^2_j >= c^2)`` for a Gaussian ``e``,
``P(F_{j,nu} >= c^2/j)`` when the variance is estimated with ``nu`` degrees
of freedom, and ``P(B_{j/2,(n-j)/2} >= w^2)`` when ``e`` is uniform on the
unit sphere in R^n (``c`` is then the inner-product cutoff ``w``).
"""

import enum
import math
import warnings
from dataclasses import dataclass

from scipy import optimize

from . import specfun
from .errors import DomainError, TubeWarning, UnattainableLevelError


class Process(enum.Enum):
    GAUSS = "gauss"
    TPROC = "tproc"
    UNIF = "unif"


class Side(enum.Enum):
    ONE_SIDED = 1
    TWO_SIDED = 2


GAUSS, TPROC, UNIF = Process.GAUSS, Process.TPROC, Process.UNIF
ONE_SIDED, TWO_SIDED = Side.ONE_SIDED, Side.TWO_SIDED


@dataclass(frozen=True)
class ProcessSpec:
    kind: Process = GAUSS
    side: Side = ONE_SIDED
    df: float = None
    ambient_n: int = None

    def check(self, d):
        if self.kind is TPROC and not (self.df is not None and self.df > 0):
            raise DomainError("the t-process needs residual degrees of freedom df > 0")
        if self.kind is UNIF and not (self.ambient_n is not None and self.ambient_n > d + 1):
            raise DomainError(f"the uniform process needs ambient dimension n > d + 1 = {d + 1}")


def _term_tail(j, c, proc):
    if proc.kind is GAUSS:
        return specfun.chisq_tail(j, c * c)
    if proc.kind is TPROC:
        return specfun.f_tail(j, proc.df, c * c / j)
    return specfun.beta_tail(0.5 * j, 0.5 * (proc.ambient_n - j), min(1.0, c * c))


def tail_series(c, constants, proc):
    """Unclamped value of the tube series (doubled for two-sided processes)."""
    d = constants.d
    proc.check(d)
    if proc.kind is UNIF:
        if not 0 < c <= 1:
            raise DomainError(f"uniform-process cutoff w must lie in (0, 1], got {c}")
    elif not c > 0:
        raise DomainError(f"cutoff must be positive, got {c}")
    p = 0.0
    for k, kap in enumerate(constants.kap):
        j = d + 1 - k
        p += kap / specfun.sphere_area(j) * _term_tail(j, c, proc)
    return p * proc.side.value


def tailp(c, constants, proc=ProcessSpec()):
    """Tube approximation to ``P(sup Z >= c)``, clamped to [0, 1].

    A :class:`TubeWarning` is issued when clamping was needed.
    """
    p = tail_series(c, constants, proc)
    if p < 0.0 or p > 1.0:
        warnings.warn(f"tube series value {p:.6g} at c = {c:.6g} clamped to [0, 1]",
                      TubeWarning, stacklevel=2)
        p = min(1.0, max(0.0, p))
    return p


def critval(alpha, constants, proc=ProcessSpec()):
    """Cutoff ``c`` with ``tailp(c) = alpha`` on the decreasing branch of the tail curve."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    d = constants.d
    proc.check(d)

    def f(c):
        return tail_series(c, constants, proc) - alpha

    if proc.kind is UNIF:
        lo, hi = math.sqrt(d / proc.ambient_n), 1.0
    else:
        lo = math.sqrt(d)
        hi = math.sqrt(2.0 * math.log(1.0 / alpha)) + 5.0
        while f(hi) > 0:
            hi *= 2.0
            if hi > 1e8:
                raise UnattainableLevelError("tail curve does not fall below alpha")
    if f(lo) < 0:
        raise UnattainableLevelError(
            f"alpha = {alpha} exceeds the tube approximation at the start of its decreasing "
            f"branch (c = {lo:.4g}); use a smaller alpha or more terms")
    return optimize.bisect(f, lo, hi, xtol=1e-13, rtol=1e-15, maxiter=500)
