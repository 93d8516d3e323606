"""Significance of the nonlinear term in ``Y_i = a exp(gamma x_i) + e_i``.

Under ``H0: a = 0`` the parameter ``gamma`` is not identifiable, so the
likelihood-ratio statistic is the supremum over ``gamma`` of the absolute
correlation between ``Y`` and the curve ``l(gamma) = exp(gamma x)``.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..geometry import CovarianceJet, VectorJet
from ..prob import TWO_SIDED, UNIF, ProcessSpec, tailp
from ..quadrature import DomainRect
from ..tube import tube_constants
from ._search import grid_sup

EXP_LIMIT = 700.0


def _check_overflow(gamma, x):
    if np.max(np.abs(gamma * x)) > EXP_LIMIT:
        raise DomainError(f"exp(gamma * x) overflows at gamma = {gamma:.6g}; use tighter limits")


def nlreg_jet(gamma, x, order=1):
    """``l_i = exp(gamma x_i)`` with derivatives ``x_i l_i`` and ``x_i^2 l_i``."""
    x = np.asarray(x, dtype=float)
    _check_overflow(gamma, x)
    e = np.exp(gamma * x)
    dl = (x * e)[:, None] if order >= 1 else None
    ddl = (x * x * e)[:, None, None] if order >= 2 else None
    return VectorJet(e, dl, ddl)


def nlreg_cov_jet(gamma, x, order=1):
    """Covariance form: derivatives of ``sigma(g, g') = sum_i exp((g + g') x_i)`` at ``g' = g``."""
    x = np.asarray(x, dtype=float)
    _check_overflow(2 * gamma, x)
    e = np.exp(2 * gamma * x)
    k = order + 1
    m = np.array([[np.sum(x ** (a + b) * e) for b in range(k)] for a in range(k)])
    return CovarianceJet(m, 1)


@dataclass(frozen=True, eq=False)
class ExpRegression:
    """Manifold callback for the exponential regression curve."""

    x: np.ndarray
    covariance: bool = False

    def __call__(self, point, order):
        gamma = float(point[0])
        if self.covariance:
            return nlreg_cov_jet(gamma, self.x, order)
        return nlreg_jet(gamma, self.x, order)

    def points(self, gammas):
        """Unit vectors ``T(gamma)`` as rows."""
        gammas = np.asarray(gammas, dtype=float).reshape(-1)
        x = np.asarray(self.x, dtype=float)
        _check_overflow(np.max(np.abs(gammas)), x)
        L = np.exp(np.outer(gammas, x))
        return L / np.linalg.norm(L, axis=1, keepdims=True)


def nlreg_statistic(x, y, lo=-2.0, hi=2.0, mg=100, grid_mult=4):
    """``sup_gamma |<l(gamma)/||l(gamma)||, Y/||Y||>|`` and its maximizer."""
    y = np.asarray(y, dtype=float)
    ny = np.linalg.norm(y)
    if not ny > 0:
        raise DomainError("response vector must be nonzero")
    u = y / ny
    curve = ExpRegression(np.asarray(x, dtype=float))
    gamma, stat = grid_sup(lambda g: np.abs(curve.points(g) @ u), [(lo, hi, mg)], grid_mult)
    return stat, gamma


@dataclass(frozen=True)
class NlregResult:
    statistic: float
    lr_statistic: float
    gamma_hat: float
    constants: object
    p_value: float


def nlreg_test(x, y, lo=-2.0, hi=2.0, mg=100):
    """Test ``a = 0``; the p-value uses the uniform process on the sphere in R^n."""
    x = np.asarray(x, dtype=float)
    constants = tube_constants(ExpRegression(x), DomainRect([lo], [hi], [mg]), terms=2)
    stat, gamma = nlreg_statistic(x, y, lo, hi, mg)
    proc = ProcessSpec(UNIF, TWO_SIDED, ambient_n=x.size)
    p = tailp(min(stat, 1.0), constants, proc)
    return NlregResult(stat, 1.0 - stat * stat, gamma, constants, p)
