"""Tube-formula constants and closed-form tube volumes.

The constants are returned in the grouping used by the tail series::

    kap = [kappa0, l0/2, (kappa2 + l1 + m0)/(2 pi), (l2 + m1 + n0)/(4 pi)]

where ``kappa0`` is the volume of M, ``l0`` the volume of its boundary,
``kappa2 = 1/2 int (rho - d(d-1)) dV`` the integrated scalar curvature of M
relative to the unit sphere, ``l1`` the integrated trace of the second
fundamental form of the boundary and ``m0`` the integrated exterior angles of
the codimension-two corners.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import DomainError, TubeWarning
from .geometry import (CovarianceJet, boundary_frame, corner_volume_element, frame_from_jet,
                       wedge_angle)
from .quadrature import integrate_corners, integrate_faces, integrate_rect


@dataclass(frozen=True)
class TubeConstants:
    """Coefficient vector of the tube series for a manifold of dimension ``d``."""

    kap: tuple
    d: int
    breakdown: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kap", tuple(float(k) for k in self.kap))
        if not 1 <= len(self.kap) <= min(self.d + 1, 4):
            raise DomainError(f"{len(self.kap)} constants given for a manifold of dimension {self.d}")

    @property
    def terms(self):
        return len(self.kap)

    def __len__(self):
        return len(self.kap)

    def __getitem__(self, k):
        return self.kap[k]

    def __iter__(self):
        return iter(self.kap)


def _as_point(x):
    return np.atleast_1d(np.asarray(x, dtype=float))


def tube_constants(manifold, dom, terms=2, mode=None, boundary_increment=0.0,
                   euler_closure=False, threads=None):
    """Numerically evaluate the tube constants of ``manifold`` over ``dom``.

    ``manifold(x, order)`` returns a :class:`VectorJet` or :class:`CovarianceJet`
    with derivatives up to ``order``.  ``mode`` ("vector" or "covariance") is
    optional and only checked against what the callback returns.

    ``boundary_increment`` is added to ``l0/2`` to account for boundary points
    the quadrature cannot see (a jump of the manifold inside the domain).

    For ``d = 3`` the fourth coefficient is only produced when
    ``euler_closure`` is set: it is then chosen so that the Euler
    characteristic of the parameter domain is reproduced, and flagged as
    heuristic in ``breakdown``.
    """
    d = dom.d
    requested = terms
    terms = min(int(terms), d + 1, 4)
    if terms < requested:
        warnings.warn(f"terms={requested} clamped to {terms} for d={d}", TubeWarning, stacklevel=2)
    if terms < 1:
        raise DomainError("terms must be at least 1")
    closure = False
    if terms == 4:
        if d == 3 and euler_closure:
            closure = True
        else:
            warnings.warn("fourth tube coefficient is only available through the Euler "
                          "closure for d = 3; truncating at 3 terms", TubeWarning, stacklevel=2)
        terms = 3
    order = 1 if terms <= 2 else 2

    def frame_at(x):
        jet = manifold(x, order)
        if mode is not None:
            got = "covariance" if isinstance(jet, CovarianceJet) else "vector"
            if got != mode:
                raise DomainError(f"manifold returned a {got} jet but mode={mode!r}")
        return frame_from_jet(jet, order, point=x)

    def interior(x):
        fr = frame_at(_as_point(x))
        if order == 1:
            return np.array([fr.sqrt_det_g, 0.0])
        return np.array([fr.sqrt_det_g, 0.5 * (fr.scalar_curvature - d * (d - 1)) * fr.sqrt_det_g])

    def face(face, x):
        fr = frame_at(x)
        bf = boundary_frame(fr, face.axis, face.side)
        trace = bf.curvature_trace if order == 2 else 0.0
        return np.array([bf.sqrt_det_g, trace * bf.sqrt_det_g])

    def corner(corner, x):
        fr = frame_at(x)
        angle = wedge_angle(fr.g, corner.axes, [f.side for f in corner.faces])
        return angle * corner_volume_element(fr.g, corner.axes)

    kappa0, kappa2 = integrate_rect(interior, dom, threads)
    l0, l1 = integrate_faces(face, dom, threads) if dom.faces() else (0.0, 0.0)
    kap = [kappa0, 0.5 * l0 + boundary_increment]
    breakdown = {"kappa0": float(kappa0), "l0": float(l0),
                 "boundary_increment": float(boundary_increment), "heuristic": False}
    if terms >= 3:
        m0 = integrate_corners(corner, dom, threads) if dom.corners() else 0.0
        kap.append((kappa2 + l1 + m0) / (2.0 * math.pi))
        breakdown.update(kappa2=float(kappa2), l1=float(l1), m0=float(m0))
    if d == 2 and terms == 3:
        # Gauss-Bonnet: kappa2 + kappa0 = int K dA, so this is chi(M)
        breakdown["euler_characteristic"] = float(kap[2] + kap[0] / (2.0 * math.pi))
    if closure:
        chi = dom.euler_characteristic()
        kap.append(chi - kap[1] / (2.0 * math.pi))
        breakdown.update(heuristic=True, euler_characteristic=float(chi))
    return TubeConstants(tuple(kap[:terms + closure]), d, breakdown)


def euclidean_tube_volume(kappa0, l0, n, r):
    """Volume of the radius-``r`` tube around a curve of length ``kappa0`` in R^n."""
    if n < 2 or r <= 0 or kappa0 < 0 or l0 < 0:
        raise DomainError("need n >= 2, r > 0 and non-negative kappa0, l0")
    return (kappa0 * specfun.ball_volume(n - 1) * r ** (n - 1)
            + 0.5 * l0 * specfun.ball_volume(n) * r ** n)


def spherical_tube_volume(constants, n, w):
    """Spherical measure of the tube ``{u : sup <T, u> >= w}`` on the unit sphere in R^n."""
    d = constants.d
    if n <= d + 1:
        raise DomainError(f"need ambient dimension n > d + 1 = {d + 1}, got {n}")
    if not 0 < w <= 1:
        raise DomainError(f"w must lie in (0, 1], got {w}")
    area = specfun.sphere_area(n)
    total = 0.0
    for k, kap in enumerate(constants.kap):
        j = d + 1 - k
        total += kap * area / specfun.sphere_area(j) * specfun.beta_tail(0.5 * j, 0.5 * (n - j), w * w)
    return total
