import math

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, a, b, tol=1e-10):
    """Golden-section search for a maximum of a unimodal ``f`` on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def grid_sup(f, pieces, grid_mult=4, tol=1e-10):
    """Maximize a scalar function of one variable over a union of intervals.

    ``f`` must accept an array of points.  Each ``(a, b, m)`` piece is scanned on
    a grid of ``grid_mult * m`` cells, then the best cell pair is refined by
    golden-section search.
    """
    best_x, best_v, best_cell = None, -np.inf, None
    for a, b, m in pieces:
        xs = np.linspace(a, b, grid_mult * m + 1)
        vals = f(xs)
        k = int(np.argmax(vals))
        if vals[k] > best_v:
            best_x, best_v = xs[k], float(vals[k])
            best_cell = (xs[max(k - 1, 0)], xs[min(k + 1, xs.size - 1)])
    x, v = golden_max(lambda t: float(f(np.array([t]))[0]), *best_cell, tol=tol)
    if v > best_v:
        return x, v
    return best_x, best_v
