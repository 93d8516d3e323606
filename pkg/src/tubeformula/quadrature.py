"""Composite Simpson product rules on rectangles, their faces and corner strata.

A :class:`DomainRect` is a box in parameter space.  Axes may be periodic
(no faces along that axis) and may carry exclusion slabs; each slab removes an
open interval from the axis and contributes two internal faces, so a single
axis becomes a disjoint union of closed pieces.
"""

import itertools
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, TubeError, TubeWarning


def simpson_rule(a, b, m):
    """Nodes and weights of the composite Simpson rule with ``m`` subintervals.

    Odd ``m`` is rounded up with a warning.
    """
    if not a < b:
        raise DomainError(f"simpson_rule requires a < b, got [{a}, {b}]")
    m = int(m)
    if m < 2:
        warnings.warn(f"Simpson rule needs at least 2 subintervals; using 2 instead of {m}",
                      TubeWarning, stacklevel=2)
        m = 2
    if m % 2:
        warnings.warn(f"odd Simpson subinterval count {m} rounded up to {m + 1}",
                      TubeWarning, stacklevel=2)
        m += 1
    h = (b - a) / m
    nodes = a + h * np.arange(m + 1)
    nodes[-1] = b
    weights = np.full(m + 1, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    return nodes, weights * (h / 3.0)


@dataclass(frozen=True)
class Face:
    """The hyperplane ``x[axis] == value``; ``side`` is +1 when the domain lies above."""

    axis: int
    value: float
    side: int


@dataclass(frozen=True)
class Corner:
    """Intersection of two faces on distinct axes."""

    faces: tuple

    @property
    def axes(self):
        return tuple(f.axis for f in self.faces)


@dataclass
class DomainRect:
    """Integration rectangle ``prod_i [lo_i, hi_i]`` with per-axis Simpson grids."""

    lo: tuple
    hi: tuple
    mg: tuple
    periodic: tuple = None
    exclusions: list = field(default_factory=list)

    def __post_init__(self):
        self.lo = tuple(float(v) for v in np.atleast_1d(self.lo))
        self.hi = tuple(float(v) for v in np.atleast_1d(self.hi))
        d = len(self.lo)
        mg = np.atleast_1d(self.mg).astype(int)
        if mg.size == 1 and d > 1:
            mg = np.repeat(mg, d)
        if len(self.hi) != d or mg.size != d:
            raise DomainError("lo, hi and mg must all have length d")
        fixed = []
        for i, m in enumerate(mg):
            m = int(m)
            if m < 2 or m % 2:
                new = max(2, m + (m % 2))
                warnings.warn(f"grid size {m} on axis {i} adjusted to {new}", TubeWarning,
                              stacklevel=3)
                m = new
            fixed.append(m)
        self.mg = tuple(fixed)
        if self.periodic is None:
            self.periodic = (False,) * d
        self.periodic = tuple(bool(p) for p in np.atleast_1d(self.periodic))
        if len(self.periodic) != d:
            raise DomainError("periodic flags must have length d")
        for i in range(d):
            if not self.lo[i] < self.hi[i]:
                raise DomainError(f"axis {i}: need lo < hi, got [{self.lo[i]}, {self.hi[i]}]")
        slabs = []
        for axis, (a, b) in self.exclusions:
            axis, a, b = int(axis), float(a), float(b)
            if not 0 <= axis < d:
                raise DomainError(f"exclusion axis {axis} out of range")
            if not self.lo[axis] < a < b < self.hi[axis]:
                raise DomainError(f"exclusion ({a}, {b}) must lie strictly inside axis {axis}")
            slabs.append((axis, (a, b)))
        for axis in range(d):
            ivs = sorted(iv for ax, iv in slabs if ax == axis)
            for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
                if a1 <= b0:
                    raise DomainError(f"exclusions on axis {axis} overlap")
        self.exclusions = slabs

    @property
    def d(self):
        return len(self.lo)

    def pieces(self, axis):
        """Closed sub-intervals of an axis as ``(a, b, m)`` with even ``m >= 2``."""
        cuts = sorted(iv for ax, iv in self.exclusions if ax == axis)
        bounds, start = [], self.lo[axis]
        for a, b in cuts:
            bounds.append((start, a))
            start = b
        bounds.append((start, self.hi[axis]))
        total = sum(b - a for a, b in bounds)
        out = []
        for a, b in bounds:
            m = self.mg[axis] * (b - a) / total
            m = max(2, 2 * math.ceil(m / 2 - 1e-9))
            out.append((a, b, m))
        return out

    def axis_rule(self, axis):
        nodes, weights = [], []
        for a, b, m in self.pieces(axis):
            x, w = simpson_rule(a, b, m)
            nodes.append(x)
            weights.append(w)
        return np.concatenate(nodes), np.concatenate(weights)

    def faces(self):
        """All boundary faces: outer faces of non-periodic axes plus slab faces."""
        out = []
        for axis in range(self.d):
            for k, (a, b, _) in enumerate(self.pieces(axis)):
                if k > 0 or not self.periodic[axis]:
                    out.append(Face(axis, a, +1))
                if k < len(self.pieces(axis)) - 1 or not self.periodic[axis]:
                    out.append(Face(axis, b, -1))
        return out

    def corners(self):
        """Codimension-two strata: pairs of faces on distinct axes."""
        faces = self.faces()
        return [Corner((f, g)) for f, g in itertools.combinations(faces, 2) if f.axis < g.axis]

    def euler_characteristic(self):
        """Euler characteristic of the parameter domain (product over axes)."""
        chi = 1
        for axis in range(self.d):
            npieces = len(self.pieces(axis))
            # on a circle the first and last pieces join up
            chi *= npieces - 1 if self.periodic[axis] else npieces
        return chi


def _product_rule(dom, axes):
    rules = [dom.axis_rule(a) for a in axes]
    for combo in itertools.product(*[range(len(r[0])) for r in rules]):
        w = 1.0
        x = []
        for (nodes, weights), k in zip(rules, combo):
            w *= weights[k]
            x.append(nodes[k])
        yield x, w


def _reduce(evaluate, points, weights, threads):
    if threads and threads > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(evaluate, points))
    else:
        values = [evaluate(p) for p in points]
    if not values:
        return 0.0
    total = 0.0
    # fixed summation order keeps results bitwise reproducible
    for w, v in zip(weights, values):
        total = total + w * np.asarray(v, dtype=float)
    return total


def _guarded(f, *head):
    def evaluate(x):
        try:
            return f(*head, x)
        except TubeError:
            raise
        except Exception as exc:
            raise TubeError(f"integrand failed at x = {tuple(float(v) for v in x)}: {exc}") from exc
    return evaluate


def integrate_rect(f, dom, threads=None):
    """Tensor-product Simpson integral of ``f(x)`` over ``dom`` (minus exclusions).

    ``f`` may return a scalar or an array; the result has the same shape.
    """
    points, weights = [], []
    for x, w in _product_rule(dom, range(dom.d)):
        points.append(np.array(x))
        weights.append(w)
    return _reduce(_guarded(f), points, weights, threads)


def integrate_faces(f, dom, threads=None):
    """Sum over boundary faces of the (d-1)-dimensional Simpson integral of ``f(face, x)``."""
    total = 0.0
    for face in dom.faces():
        others = [a for a in range(dom.d) if a != face.axis]
        points, weights = [], []
        for xs, w in _product_rule(dom, others):
            x = np.empty(dom.d)
            x[others] = xs
            x[face.axis] = face.value
            points.append(x)
            weights.append(w)
        total = total + _reduce(_guarded(f, face), points, weights, threads)
    return total


def integrate_corners(f, dom, threads=None):
    """Sum over codimension-two strata of the Simpson integral of ``f(corner, x)``."""
    if dom.d < 2:
        raise DomainError("corner strata need d >= 2")
    total = 0.0
    for corner in dom.corners():
        fixed = corner.axes
        others = [a for a in range(dom.d) if a not in fixed]
        points, weights = [], []
        for xs, w in _product_rule(dom, others):
            x = np.empty(dom.d)
            x[others] = xs
            for face in corner.faces:
                x[face.axis] = face.value
            points.append(x)
            weights.append(w)
        total = total + _reduce(_guarded(f, corner), points, weights, threads)
    return total
