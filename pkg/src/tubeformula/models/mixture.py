"""Score test for a two-component normal location mixture.

For ``f(x) = (1 - a) phi(x) + a phi(x - mu)`` the score process
``S(mu) = sum_i phi(X_i - mu)/phi(X_i) - 1`` has null covariance
``n sigma(mu, nu)`` with ``sigma(mu, nu) = exp(mu nu) - 1``.  The normalized
process ``S(mu)/sqrt(n sigma(mu, mu))`` jumps to its negative across
``mu = 0``, which adds two boundary points to the manifold.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..geometry import CovarianceJet, VectorJet
from ..prob import GAUSS, ONE_SIDED, ProcessSpec, critval
from ..quadrature import DomainRect
from ..tube import tube_constants
from ._search import grid_sup

TAYLOR_SWITCH = 0.01
TAYLOR_TERMS = 5
SERIES_TERMS = 60


def _falling(m, a):
    return math.factorial(m) // math.factorial(m - a)


def mixture_cov_jet(mu, order=1):
    """Derivatives ``d^a/dmu d^b/dnu sigma(mu, nu)`` at ``nu = mu``, ``a, b <= order``.

    For ``|mu| < 0.01`` the jet of ``(exp(mu nu) - 1)/(mu nu)`` is returned
    instead, as a truncated Taylor series; it defines the same normalized
    process up to the sign of ``mu``.
    """
    k = order + 1
    m = np.empty((k, k))
    t = mu * mu
    if abs(mu) < TAYLOR_SWITCH:
        for a in range(k):
            for b in range(k):
                top = max(a, b)
                m[a, b] = sum(_falling(j, a) * _falling(j, b) * mu ** (2 * j - a - b)
                              / math.factorial(j + 1) for j in range(top, top + TAYLOR_TERMS))
        return CovarianceJet(m, 1)
    e = math.exp(t)
    # d^a/dmu d^b/dnu exp(mu nu) at nu = mu, for a, b <= 2
    table = {(0, 0): e - 1.0, (0, 1): mu * e, (1, 1): (1.0 + t) * e, (0, 2): t * e,
             (1, 2): mu * (2.0 + t) * e, (2, 2): (2.0 + 4.0 * t + t * t) * e}
    for a in range(k):
        for b in range(k):
            m[a, b] = table[(min(a, b), max(a, b))]
    return CovarianceJet(m, 1)


@dataclass(frozen=True)
class MixtureCovariance:
    """Covariance-form manifold callback for the normal mixture score process."""

    def __call__(self, point, order):
        return mixture_cov_jet(float(point[0]), order)

    def covariance_matrix(self, mus):
        """Correlation matrix of the normalized score process at the given points."""
        mus = np.asarray(mus, dtype=float).reshape(-1)
        if np.any(mus == 0):
            raise DomainError("the normalized score process is undefined at mu = 0")
        s = np.expm1(mus * mus)
        return np.expm1(np.outer(mus, mus)) / np.sqrt(np.outer(s, s))


@dataclass(frozen=True)
class MixtureVector:
    """Vector realization ``l_k(mu) = mu^k / sqrt(k!)``, ``k = 1..K``, of the same manifold.

    With ``regularize`` the vector is divided by ``mu`` for ``|mu| < 0.01`` so
    that it stays away from zero; the geometry is unchanged.
    """

    terms: int = SERIES_TERMS
    regularize: bool = True

    def __call__(self, point, order):
        mu = float(point[0])
        k = np.arange(1, self.terms + 1)
        if self.regularize and abs(mu) < TAYLOR_SWITCH:
            k = k - 1
        c = np.array([1.0 / math.sqrt(math.factorial(j)) for j in range(1, self.terms + 1)])

        def power(p):
            out = np.zeros(p.size)
            ok = p >= 0
            out[ok] = mu ** p[ok].astype(float)
            return out

        l = c * power(k)
        dl = (c * k * power(k - 1))[:, None] if order >= 1 else None
        ddl = (c * k * (k - 1) * power(k - 2))[:, None, None] if order >= 2 else None
        return VectorJet(l, dl, ddl)

    def points(self, mus):
        mus = np.asarray(mus, dtype=float).reshape(-1)
        L = np.array([MixtureVector(self.terms, False)((m,), 0).l for m in mus])
        return L / np.linalg.norm(L, axis=1, keepdims=True)


def normal_ratio(x, mu):
    """``phi(x - mu)/phi(x) - 1`` for the standard normal."""
    return np.expm1(mu * x - 0.5 * mu * mu)


def normal_variance(mu):
    return np.expm1(mu * mu)


def score_process(data, mu, ratio=normal_ratio, variance=normal_variance):
    """Normalized score process ``S(mu)/sqrt(n sigma(mu, mu))`` at an array of points.

    ``ratio(x, mu)`` must broadcast over a column of data and a row of points.
    At ``mu = 0`` the right-hand limit is returned for the normal family.
    """
    data = np.asarray(data, dtype=float).reshape(-1, 1)
    n = data.shape[0]
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    out = np.empty(mu.size)
    zero = mu == 0.0
    out[zero] = data.sum() / math.sqrt(n)
    m = mu[~zero]
    if m.size:
        out[~zero] = np.sum(ratio(data, m[None, :]), axis=0) / np.sqrt(n * variance(m))
    return out


def mixture_constants(lo=-3.0, hi=3.0, mg=200, boundary_increment=1.0, manifold=None):
    """Tube constants of the score-process manifold, integrating across ``mu = 0``."""
    manifold = MixtureCovariance() if manifold is None else manifold
    return tube_constants(manifold, DomainRect([lo], [hi], [mg]), terms=2,
                          boundary_increment=boundary_increment)


@dataclass(frozen=True)
class MixtureResult:
    statistic: float
    mu_hat: float
    critical_value: float
    constants: object
    alpha: float

    @property
    def reject(self):
        return self.statistic > self.critical_value


def mixture_test(data, lo=-3.0, hi=3.0, mg=200, alpha=0.05, boundary_increment=1.0,
                 ratio=normal_ratio, variance=normal_variance, constants=None):
    """Sup of the normalized score process against its tube critical value.

    Pass precomputed ``constants`` to skip the quadrature in repeated calls.
    """
    data = np.asarray(data, dtype=float)
    if data.size == 0:
        raise DomainError("mixture test needs at least one observation")
    if constants is None:
        constants = mixture_constants(lo, hi, mg, boundary_increment)
    c = critval(alpha, constants, ProcessSpec(GAUSS, ONE_SIDED))

    def f(mus):
        return score_process(data, mus, ratio, variance)

    pieces = [(lo, hi, mg)]
    mu_hat, stat = grid_sup(f, pieces)
    if lo < 0 < hi:
        # left-hand limit at the discontinuity
        left = -data.sum() / math.sqrt(data.size)
        if left > stat:
            mu_hat, stat = -0.0, left
    return MixtureResult(float(stat), float(mu_hat), c, constants, alpha)
