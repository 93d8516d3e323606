"""Monte Carlo estimation of sup-process tail probabilities on a discretized manifold.

Replicates are drawn in fixed-size blocks; block ``b`` uses a Philox stream keyed
by ``(seed, b)``, so results are bitwise reproducible whatever the number of
worker threads.  The supremum over a finite grid is biased downward: check
stability by doubling ``grid_mult``.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError, InvalidCovarianceError
from .geometry import PSD_TOL, CovarianceJet, frame_from_vector
from .prob import TPROC, TWO_SIDED, UNIF, ProcessSpec, tailp

BLOCK = 1000


@dataclass
class McReport:
    estimate: float
    std_error: float
    reps: int
    grid: dict
    seed: int
    tube: float = None
    z: float = None

    def as_dict(self):
        return asdict(self)


def grid_points(dom, grid_mult=4):
    """Grid with ``grid_mult * mg`` cells per axis piece; periodic endpoints are not repeated."""
    axes = []
    for axis in range(dom.d):
        pts = [np.linspace(a, b, grid_mult * m + 1) for a, b, m in dom.pieces(axis)]
        if dom.periodic[axis] and len(pts) == 1:
            pts[0] = pts[0][:-1]
        axes.append(np.concatenate(pts))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, dom.d)


def directions(manifold, points):
    """Unit vectors ``T(x)`` (rows) of a manifold at the given points."""
    if hasattr(manifold, "points"):
        return np.asarray(manifold.points(points if points.shape[1] > 1 else points[:, 0]))
    if hasattr(manifold, "covariance_matrix"):
        C = manifold.covariance_matrix(points if points.shape[1] > 1 else points[:, 0])
        w, V = np.linalg.eigh(0.5 * (C + C.T))
        if w[0] < -PSD_TOL * max(1.0, abs(w[-1])) * C.shape[0]:
            raise InvalidCovarianceError("discretized covariance is not positive semidefinite")
        keep = w > 1e-12 * w[-1]
        return V[:, keep] * np.sqrt(w[keep])
    rows = []
    for x in points:
        jet = manifold(x, 0)
        if isinstance(jet, CovarianceJet):
            raise DomainError("covariance-mode manifolds need a covariance_matrix method for "
                              "simulation")
        rows.append(frame_from_vector(jet, 0, point=x).T)
    return np.array(rows)


def _block_exceedances(T, proc, c, seed, block, size):
    n = T.shape[1]
    rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), block]))
    eps = rng.standard_normal((size, n))
    if proc.kind is UNIF:
        eps /= np.linalg.norm(eps, axis=1, keepdims=True)
    Z = eps @ T.T
    if proc.side is TWO_SIDED:
        Z = np.abs(Z)
    sup = Z.max(axis=1)
    if proc.kind is TPROC:
        chi = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), 2**63 + block]))
        sup = sup / np.sqrt(chi.chisquare(proc.df, size) / proc.df)
    return int(np.count_nonzero(sup >= c))


def sup_tail_from_directions(T, proc, c, reps, seed=0, threads=None):
    """Fraction of replicates with ``sup_k <T_k, e> >= c`` over the rows of ``T``."""
    T = np.atleast_2d(np.asarray(T, dtype=float))
    reps = int(reps)
    if reps < 1:
        raise DomainError("need at least one replicate")
    if proc.kind is UNIF and proc.ambient_n is not None and T.shape[1] < proc.ambient_n:
        T = np.hstack([T, np.zeros((T.shape[0], proc.ambient_n - T.shape[1]))])
    sizes = [min(BLOCK, reps - b * BLOCK) for b in range(math.ceil(reps / BLOCK))]
    jobs = [(T, proc, c, seed, b, s) for b, s in enumerate(sizes)]
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(lambda j: _block_exceedances(*j), jobs))
    else:
        counts = [_block_exceedances(*j) for j in jobs]
    p = sum(counts) / reps
    return p, math.sqrt(p * (1.0 - p) / reps)


def simulate_sup_tail(manifold, dom, proc, c, reps=100_000, seed=0, grid_mult=4,
                      constants=None, threads=None):
    """Monte Carlo tail probability of the sup process, compared with the tube value.

    ``proc`` is a :class:`~tubeformula.prob.ProcessSpec`; for the uniform
    process ``c`` is the inner-product cutoff.  When ``constants`` is given, the
    report carries the tube approximation and the z-score of the difference.
    """
    if reps < 1000:
        raise DomainError("Monte Carlo validation needs at least 1000 replicates")
    if grid_mult < 2:
        raise DomainError("grid_mult must be at least 2")
    pts = grid_points(dom, grid_mult)
    T = directions(manifold, pts)
    p, se = sup_tail_from_directions(T, proc, c, reps, seed, threads)
    grid = {"grid_mult": grid_mult, "points": int(pts.shape[0]), "lo": list(dom.lo),
            "hi": list(dom.hi), "mg": list(dom.mg)}
    report = McReport(p, se, int(reps), grid, int(seed))
    if constants is not None:
        report.tube = tailp(c, constants, proc)
        report.z = (p - report.tube) / se if se > 0 else math.copysign(math.inf, p - report.tube)
    return report


__all__ = ["McReport", "ProcessSpec", "grid_points", "simulate_sup_tail", "sup_tail_from_directions"]
