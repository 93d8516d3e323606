"""QR factorization and the triangular solve used by the confidence-band manifold."""

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .errors import DomainError, RankDeficientError

RANK_TOL = 1e-12


@dataclass(frozen=True)
class QRFactor:
    """Reduced factorization ``A = Q R`` with ``diag(R) >= 0``."""

    q: np.ndarray
    r: np.ndarray


def qr_decompose(a):
    """Householder QR (LAPACK geqrf) of an n-by-p matrix with n >= p."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise DomainError("qr_decompose expects a matrix")
    n, p = a.shape
    if n < p:
        raise DomainError(f"need at least as many rows as columns, got {n} x {p}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    q, r = np.linalg.qr(a, mode="reduced")
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    q = q * signs
    r = r * signs[:, None]
    scale = np.linalg.norm(a, 2)
    small = np.flatnonzero(np.abs(np.diag(r)) < RANK_TOL * scale)
    if small.size:
        raise RankDeficientError(int(small[0]))
    return QRFactor(q, r)


def solve_rt(r, f):
    """Solve ``R^T z = f`` for upper-triangular ``R`` (forward substitution)."""
    r = np.asarray(r, dtype=float)
    if np.any(np.diag(r) == 0):
        raise DomainError("triangular factor is singular")
    return sla.solve_triangular(r, np.asarray(f, dtype=float), trans="T", lower=False)


def solve_r(r, b):
    """Solve ``R z = b`` (back substitution)."""
    r = np.asarray(r, dtype=float)
    if np.any(np.diag(r) == 0):
        raise DomainError("triangular factor is singular")
    return sla.solve_triangular(r, np.asarray(b, dtype=float), lower=False)
