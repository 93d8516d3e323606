"""Simultaneous confidence bands for quadratic regression in ``dim`` predictors.

With ``X = QR`` the band manifold is ``l*(x) = R^{-T} f(x)`` where ``f`` is the
quadratic basis ``(1, x_i, x_i x_j for i <= j)``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..geometry import VectorJet
from ..linalg import qr_decompose, solve_r, solve_rt
from ..prob import TPROC, TWO_SIDED, ProcessSpec, critval
from ..tube import tube_constants


def basis_size(dim):
    return 1 + dim + dim * (dim + 1) // 2


def _pairs(dim):
    return [(i, j) for i in range(dim) for j in range(i, dim)]


def quadratic_basis(x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return np.concatenate([[1.0], x, [x[i] * x[j] for i, j in _pairs(x.size)]])


def quadratic_basis_d1(x, k):
    """Partial derivative of the basis with respect to ``x[k]``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    dim = x.size
    first = np.zeros(dim)
    first[k] = 1.0
    second = [(i == k) * x[j] + (j == k) * x[i] for i, j in _pairs(dim)]
    return np.concatenate([[0.0], first, second])


def quadratic_basis_d2(dim, k, m):
    """Second partial derivative with respect to ``x[k]`` and ``x[m]``."""
    second = [((i == k) and (j == m)) + ((i == m) and (j == k)) for i, j in _pairs(dim)]
    return np.concatenate([np.zeros(1 + dim), np.asarray(second, dtype=float)])


@dataclass(frozen=True, eq=False)
class ScbModel:
    """Design-dependent part of the band manifold."""

    dim: int
    q: np.ndarray
    r: np.ndarray

    @property
    def p(self):
        return basis_size(self.dim)

    @classmethod
    def from_design(cls, xdata):
        xdata = np.asarray(xdata, dtype=float)
        if xdata.ndim == 1:
            xdata = xdata[:, None]
        X = np.array([quadratic_basis(row) for row in xdata])
        qr = qr_decompose(X)
        return cls(xdata.shape[1], qr.q, qr.r)

    def __call__(self, x, order):
        return scb_jet(x, self, order)

    def points(self, xs):
        """Unit vectors ``l*(x)/||l*(x)||`` as rows for points given as rows of ``xs``."""
        xs = np.asarray(xs, dtype=float).reshape(-1, self.dim)
        F = np.array([quadratic_basis(row) for row in xs])
        L = solve_rt(self.r, F.T).T
        return L / np.linalg.norm(L, axis=1, keepdims=True)


def scb_jet(x, model, order=1):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    dim = model.dim
    l = solve_rt(model.r, quadratic_basis(x))
    dl = ddl = None
    if order >= 1:
        D = np.column_stack([quadratic_basis_d1(x, k) for k in range(dim)])
        dl = solve_rt(model.r, D)
    if order >= 2:
        ddl = np.empty((model.p, dim, dim))
        for k, m in itertools.product(range(dim), repeat=2):
            ddl[:, k, m] = solve_rt(model.r, quadratic_basis_d2(dim, k, m))
    return VectorJet(l, dl, ddl)


@dataclass(frozen=True)
class ScbBand:
    critical_value: float
    sigma: float
    df: int
    coef: np.ndarray
    constants: object
    grid: list
    center: np.ndarray
    halfwidth: np.ndarray

    @property
    def lower(self):
        return self.center - self.halfwidth

    @property
    def upper(self):
        return self.center + self.halfwidth


def scb_band(xdata, y, domain, alpha=0.05, grid_points=201, terms=None, euler_closure=False,
             threads=None):
    """Fit the quadratic model and return a simultaneous ``1 - alpha`` band over ``domain``."""
    xdata = np.asarray(xdata, dtype=float)
    if xdata.ndim == 1:
        xdata = xdata[:, None]
    y = np.asarray(y, dtype=float)
    n = xdata.shape[0]
    model = ScbModel.from_design(xdata)
    if y.shape != (n,):
        raise DomainError("response length must match the number of rows of x")
    if n <= model.p:
        raise DomainError(f"need more observations than parameters (n={n}, p={model.p})")
    qty = model.q.T @ y
    coef = solve_r(model.r, qty)
    resid = y - model.q @ qty
    df = n - model.p
    sigma = float(np.sqrt(resid @ resid / df))
    if terms is None:
        terms = min(model.dim + 1, 3)
    constants = tube_constants(model, domain, terms=terms, euler_closure=euler_closure,
                               threads=threads)
    c = critval(alpha, constants, ProcessSpec(TPROC, TWO_SIDED, df=df))
    axes = [np.linspace(domain.lo[i], domain.hi[i], grid_points) for i in range(model.dim)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, model.dim)
    F = np.array([quadratic_basis(row) for row in mesh])
    L = solve_rt(model.r, F.T)
    center = F @ coef
    half = c * sigma * np.linalg.norm(L, axis=0)
    shape = (grid_points,) * model.dim
    return ScbBand(c, sigma, df, coef, constants, axes, center.reshape(shape), half.reshape(shape))
