"""Closed-form manifolds used for testing and as CLI builtins."""

import math
from dataclasses import dataclass

import numpy as np

from ..geometry import CovarianceJet, VectorJet


def _pad(jet, ambient):
    if ambient is None or ambient <= jet.l.size:
        return jet
    extra = ambient - jet.l.size

    def pad(a):
        return None if a is None else np.concatenate([a, np.zeros((extra,) + a.shape[1:])])

    return VectorJet(pad(jet.l), pad(jet.dl), pad(jet.ddl))


@dataclass(frozen=True)
class GreatCircle:
    """``l(g) = (cos g, sin g)``, optionally padded with zeros to ``ambient`` coordinates."""

    ambient: int = None
    covariance: bool = False

    def __call__(self, x, order):
        g = float(x[0])
        if self.covariance:
            # sigma(g, g') = cos(g - g'), derivatives at g' = g
            k = order + 1
            m = np.empty((k, k))
            for a in range(k):
                for b in range(k):
                    # d^a/dg d^b/dg' cos(g - g') = cos(g - g' + (a - b) pi/2)
                    m[a, b] = round(math.cos((a - b) * math.pi / 2))
            return CovarianceJet(m, 1)
        c, s = math.cos(g), math.sin(g)
        jet = VectorJet(np.array([c, s]),
                        np.array([[-s], [c]]) if order >= 1 else None,
                        np.array([[[-c]], [[-s]]]) if order >= 2 else None)
        return _pad(jet, self.ambient)

    def points(self, xs):
        xs = np.asarray(xs, dtype=float).reshape(-1)
        T = np.column_stack([np.cos(xs), np.sin(xs)])
        if self.ambient and self.ambient > 2:
            T = np.hstack([T, np.zeros((xs.size, self.ambient - 2))])
        return T


@dataclass(frozen=True)
class Clifford:
    """Flat patch ``T(x, y) = (cos x, sin x, cos y, sin y)/sqrt(2)`` of the Clifford torus."""

    def __call__(self, x, order):
        a, b = float(x[0]), float(x[1])
        ca, sa, cb, sb = math.cos(a), math.sin(a), math.cos(b), math.sin(b)
        r = 1.0 / math.sqrt(2.0)
        l = r * np.array([ca, sa, cb, sb])
        dl = ddl = None
        if order >= 1:
            dl = r * np.array([[-sa, 0], [ca, 0], [0, -sb], [0, cb]])
        if order >= 2:
            ddl = np.zeros((4, 2, 2))
            ddl[:, 0, 0] = r * np.array([-ca, -sa, 0, 0])
            ddl[:, 1, 1] = r * np.array([0, 0, -cb, -sb])
        return VectorJet(l, dl, ddl)


@dataclass(frozen=True)
class SphereCap:
    """Polar coordinates ``(theta, phi)`` on the unit sphere in R^3."""

    def __call__(self, x, order):
        t, p = float(x[0]), float(x[1])
        st, ct, sp, cp = math.sin(t), math.cos(t), math.sin(p), math.cos(p)
        l = np.array([st * cp, st * sp, ct])
        dl = ddl = None
        if order >= 1:
            dl = np.array([[ct * cp, -st * sp], [ct * sp, st * cp], [-st, 0.0]])
        if order >= 2:
            ddl = np.empty((3, 2, 2))
            ddl[:, 0, 0] = [-st * cp, -st * sp, -ct]
            ddl[:, 0, 1] = ddl[:, 1, 0] = [-ct * sp, ct * cp, 0.0]
            ddl[:, 1, 1] = [-st * cp, -st * sp, 0.0]
        return VectorJet(l, dl, ddl)


@dataclass(frozen=True)
class Torus3:
    """Flat three-dimensional patch ``(cos x, sin x, cos y, sin y, cos z, sin z)/sqrt(3)``."""

    def __call__(self, x, order):
        r = 1.0 / math.sqrt(3.0)
        l = np.empty(6)
        dl = np.zeros((6, 3)) if order >= 1 else None
        ddl = np.zeros((6, 3, 3)) if order >= 2 else None
        for i, v in enumerate(np.asarray(x, dtype=float)):
            c, s = math.cos(v), math.sin(v)
            l[2 * i:2 * i + 2] = r * c, r * s
            if dl is not None:
                dl[2 * i:2 * i + 2, i] = -r * s, r * c
            if ddl is not None:
                ddl[2 * i:2 * i + 2, i, i] = -r * c, -r * s
        return VectorJet(l, dl, ddl)

    def points(self, xs):
        xs = np.asarray(xs, dtype=float).reshape(-1, 3)
        cols = [f(xs[:, i]) for i in range(3) for f in (np.cos, np.sin)]
        return np.column_stack(cols) / math.sqrt(3.0)
