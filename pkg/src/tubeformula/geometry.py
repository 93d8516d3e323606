"""Per-point differential geometry of a manifold ``T(x) = l(x)/||l(x)||`` on the unit sphere.

A manifold is described at a point either by a :class:`VectorJet` (``l`` and
its partial derivatives) or by a :class:`CovarianceJet` (the Gram matrix of
those same vectors, i.e. the partial derivatives of ``sigma(x, x')`` at
``x' = x``).  Both routes produce a :class:`Frame` holding the induced metric,
the Christoffel symbols of the first kind, the inner products of the second
fundamental form and the intrinsic scalar curvature.

Jet vectors are ordered ``[l, l_1, ..., l_d, l_11, l_12, ..., l_dd]`` with the
second-order block in row-major ``(i, j)`` order.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import DegenerateMetricError, InvalidCovarianceError, SingularPointError

NORM_TOL = 1e-12
DEG_TOL = 1e-10
ASYM_TOL = 1e-6
PSD_TOL = 1e-9


def jet_size(d, order):
    """Number of jet vectors needed for derivatives up to ``order``."""
    return (1, 1 + d, 1 + d + d * d)[order]


@dataclass
class VectorJet:
    """``l`` (n,), ``dl`` (n, d) and ``ddl`` (n, d, d) at one parameter point."""

    l: np.ndarray
    dl: np.ndarray = None
    ddl: np.ndarray = None

    def __post_init__(self):
        self.l = np.asarray(self.l, dtype=float)
        if self.dl is not None:
            self.dl = np.asarray(self.dl, dtype=float).reshape(self.l.size, -1)
        if self.ddl is not None:
            d = self.dl.shape[1]
            self.ddl = np.asarray(self.ddl, dtype=float).reshape(self.l.size, d, d)

    @property
    def order(self):
        if self.ddl is not None:
            return 2
        return 1 if self.dl is not None else 0

    @property
    def d(self):
        return None if self.dl is None else self.dl.shape[1]

    @classmethod
    def from_flat(cls, buf, n, d, order):
        """Unpack the flat layout: ``l``, then ``n*d`` first partials, then ``n*d*d`` second.

        Each derivative vector is stored contiguously, so the first partials are
        ``buf[n:2n]``, ``buf[2n:3n]``, ...
        """
        buf = np.asarray(buf, dtype=float)
        l = buf[:n]
        dl = ddl = None
        if order >= 1:
            dl = buf[n:n + n * d].reshape(d, n).T
        if order >= 2:
            ddl = buf[n + n * d:n + n * d + n * d * d].reshape(d, d, n).transpose(2, 0, 1)
        return cls(l, dl, ddl)

    def stacked(self):
        """All jet vectors as columns of an (n, k) matrix."""
        cols = [self.l[:, None]]
        if self.dl is not None:
            cols.append(self.dl)
        if self.ddl is not None:
            cols.append(self.ddl.reshape(self.l.size, -1))
        return np.hstack(cols)


@dataclass
class CovarianceJet:
    """Matrix of ``D_a D'_b sigma(x, x')`` at ``x' = x`` for a manifold of dimension ``d``."""

    matrix: np.ndarray
    d: int

    def __post_init__(self):
        self.matrix = np.atleast_2d(np.asarray(self.matrix, dtype=float))

    @property
    def order(self):
        k = self.matrix.shape[0]
        for order in (0, 1, 2):
            if k == jet_size(self.d, order):
                return order
        raise InvalidCovarianceError(f"covariance jet of size {k} does not match d = {self.d}")

    @classmethod
    def from_flat(cls, buf, d, order):
        """Unpack a matrix stored with its columns stacked atop each other."""
        k = jet_size(d, order)
        return cls(np.asarray(buf, dtype=float)[:k * k].reshape(k, k).T, d)

    @classmethod
    def from_vector_jet(cls, jet):
        """The Gram matrix ``L^T L`` of a vector jet."""
        L = jet.stacked()
        return cls(L.T @ L, jet.d if jet.d is not None else 0)


@dataclass
class Frame:
    """Derived geometry of ``T = l/||l||`` at one point.

    ``christoffel[i, j, k]`` is ``<T_ij, T_k>`` and ``sff[i, j, k, l]`` is
    ``<h_ij, h_kl>``, the second fundamental form of M inside the sphere.
    """

    d: int
    order: int
    g: np.ndarray = None
    sqrt_det_g: float = None
    christoffel: np.ndarray = None
    sff: np.ndarray = None
    scalar_curvature: float = None
    T: np.ndarray = None
    point: np.ndarray = None

    @property
    def g_inv(self):
        return np.linalg.inv(self.g)


@dataclass
class BoundaryFrame:
    """A face of M: volume element, inward unit normal and shape-operator trace."""

    sqrt_det_g: float
    normal: np.ndarray
    curvature_trace: float = None


def _check_metric(g, point):
    g = 0.5 * (g + g.T)
    scale = np.max(np.diag(g))
    if not scale > 0 or np.linalg.eigvalsh(g)[0] <= DEG_TOL * scale:
        raise DegenerateMetricError("degenerate metric", point)
    return g


def _assemble(d, order, g, christoffel, sff, point, T=None):
    if order == 0:
        return Frame(d, 0, T=T, point=point)
    g = _check_metric(g, point)
    frame = Frame(d, order, g=g, sqrt_det_g=float(np.sqrt(np.linalg.det(g))), T=T, point=point)
    if order >= 2:
        ginv = np.linalg.inv(g)
        # Gauss equation, unit-sphere ambient
        R = (np.einsum("ikjl->ijkl", sff) - np.einsum("iljk->ijkl", sff)
             + np.einsum("ik,jl->ijkl", g, g) - np.einsum("il,jk->ijkl", g, g))
        frame.christoffel = christoffel
        frame.sff = sff
        frame.scalar_curvature = float(np.einsum("ik,jl,ijkl->", ginv, ginv, R))
    return frame


def frame_from_vector(jet, order=None, point=None):
    """Frame from ``l`` and its derivatives, by explicit projections in R^n."""
    order = jet.order if order is None else order
    if order > jet.order:
        raise ValueError(f"frame of order {order} needs a jet of order {order}, got {jet.order}")
    l = jet.l
    n = l.size
    r = float(np.sqrt(l @ l))
    if r < NORM_TOL * np.sqrt(n):
        raise SingularPointError("manifold vector l(x) vanishes", point)
    T = l / r
    if order == 0:
        return _assemble(0, 0, None, None, None, point, T)
    L1 = jet.dl
    d = L1.shape[1]
    a = l @ L1
    s = 1.0 / r
    s1 = -a / r**3
    T1 = s * L1 + np.outer(l, s1)
    g = T1.T @ T1
    if order == 1:
        return _assemble(d, 1, g, None, None, point, T)
    L2 = jet.ddl
    tol = 1e-10 * max(1.0, np.max(np.abs(L2)))
    if np.max(np.abs(L2 - L2.transpose(0, 2, 1))) > tol:
        raise InvalidCovarianceError("second-derivative vectors are not symmetric", point)
    s2 = 3.0 * np.outer(a, a) / r**5 - (L1.T @ L1 + np.einsum("n,nij->ij", l, L2)) / r**3
    T2 = (s * L2 + np.einsum("ni,j->nij", L1, s1) + np.einsum("nj,i->nij", L1, s1)
          + np.einsum("n,ij->nij", l, s2))
    christoffel = np.einsum("nij,nk->ijk", T2, T1)
    chol = linalg.cho_factor(_check_metric(g, point))
    coef = linalg.cho_solve(chol, christoffel.reshape(d * d, d).T)
    h = T2 - np.einsum("n,ij->nij", T, np.einsum("n,nij->ij", T, T2)) \
        - np.einsum("nk,kij->nij", T1, coef.reshape(d, d, d))
    sff = np.einsum("nij,nkl->ijkl", h, h)
    return _assemble(d, 2, g, christoffel, sff, point, T)


def _normalizing_map(G, d, order):
    """Coefficients expressing the jet of ``T = l/||l||`` in terms of the jet of ``l``."""
    k = jet_size(d, order)
    M = np.zeros((k, k))
    s = G[0, 0] ** -0.5
    M[0, 0] = s
    if order == 0:
        return M
    a = G[0, 1:1 + d]
    s1 = -a * s**3
    for i in range(d):
        M[1 + i, 0] = s1[i]
        M[1 + i, 1 + i] = s
    if order == 1:
        return M
    for i in range(d):
        for j in range(d):
            row = 1 + d + i * d + j
            M[row, 0] = 3.0 * a[i] * a[j] * s**5 - (G[1 + i, 1 + j] + G[0, row]) * s**3
            M[row, 1 + i] += s1[j]
            M[row, 1 + j] += s1[i]
            M[row, row] = s
    return M


def frame_from_covariance(jet, order=None, point=None):
    """Frame from the covariance jet, using inner products only."""
    order = jet.order if order is None else order
    if order > jet.order:
        raise ValueError(f"frame of order {order} needs a jet of order {order}, got {jet.order}")
    d = jet.d
    k = jet_size(d, order)
    G = jet.matrix[:k, :k]
    scale = np.max(np.abs(G))
    if np.max(np.abs(G - G.T)) > ASYM_TOL * scale:
        raise InvalidCovarianceError("covariance jet is not symmetric", point)
    G = 0.5 * (G + G.T)
    if not G[0, 0] > 0:
        raise SingularPointError("variance sigma(x, x) is not positive", point)
    eig = np.linalg.eigvalsh(G)
    if eig[0] < -PSD_TOL * np.max(np.abs(eig)):
        raise InvalidCovarianceError("covariance jet is not positive semidefinite", point)
    if order == 0:
        return _assemble(d, 0, None, None, None, point)
    M = _normalizing_map(G, d, order)
    GT = M @ G @ M.T
    g = GT[1:1 + d, 1:1 + d]
    if order == 1:
        return _assemble(d, 1, g, None, None, point)
    S = slice(1 + d, k)
    christoffel = GT[S, 1:1 + d].reshape(d, d, d)
    B = GT[:1 + d, :1 + d]
    C = GT[:1 + d, S]
    schur = GT[S, S] - C.T @ np.linalg.solve(B, C)
    sff = schur.reshape(d, d, d, d)
    return _assemble(d, 2, g, christoffel, sff, point)


def frame_from_jet(jet, order=None, point=None):
    if isinstance(jet, CovarianceJet):
        return frame_from_covariance(jet, order, point)
    return frame_from_vector(jet, order, point)


def boundary_frame(frame, face_axis, side):
    """Geometry of the face ``x[face_axis] = const`` at a point of M.

    ``side`` is +1 when the domain lies at larger ``x[face_axis]``.  The
    curvature trace is ``tr II`` of the face with respect to the inward normal,
    the geodesic curvature of the boundary curve when ``d = 2``.
    """
    d = frame.d
    a = face_axis
    ginv = frame.g_inv
    keep = [i for i in range(d) if i != a]
    gF = frame.g[np.ix_(keep, keep)]
    sqrt_det = float(np.sqrt(np.linalg.det(gF))) if keep else 1.0
    normal = side * ginv[:, a] / np.sqrt(ginv[a, a])
    trace = None
    if frame.christoffel is not None:
        if keep:
            # Gamma^a_pq = g^{ab} Gamma_{pq,b}
            gamma_a = np.einsum("b,pqb->pq", ginv[a], frame.christoffel)[np.ix_(keep, keep)]
            trace = float(side * np.sum(np.linalg.inv(gF) * gamma_a) / np.sqrt(ginv[a, a]))
        else:
            trace = 0.0
    return BoundaryFrame(sqrt_det, normal, trace)


def wedge_angle(g, axes, sides):
    """Exterior angle between two faces meeting at a corner, in the metric ``g``.

    This is the angle between the inward unit normals of the two faces, i.e.
    ``pi`` minus the interior dihedral angle.
    """
    a, b = axes
    g = _check_metric(np.asarray(g, dtype=float), None)
    ginv = np.linalg.inv(g)
    cos = sides[0] * sides[1] * ginv[a, b] / np.sqrt(ginv[a, a] * ginv[b, b])
    return float(np.arccos(np.clip(cos, -1.0, 1.0)))


def corner_volume_element(g, axes):
    """Volume element of the stratum where the coordinates in ``axes`` are fixed."""
    keep = [i for i in range(g.shape[0]) if i not in axes]
    if not keep:
        return 1.0
    return float(np.sqrt(np.linalg.det(g[np.ix_(keep, keep)])))
