"""Simulated simultaneous coverage of tube-calibrated confidence bands for quadratic regression."""

import argparse
import time
from dataclasses import dataclass, field

import numpy as np

from tubeformula.linalg import solve_rt
from tubeformula.models import ScbModel, quadratic_basis, scb_band
from tubeformula.quadrature import DomainRect


@dataclass
class Config:
    n: int = 50
    lo: float = -2.0
    hi: float = 2.0
    alphas: list = field(default_factory=lambda: [0.01, 0.05, 0.10])
    reps: int = 10_000
    grid_points: int = 401
    seed: int = 99


def coverage(x, c, reps, grid, rng, block=1000):
    """Fraction of replicates whose band contains the true mean at every grid point."""
    model = ScbModel.from_design(x)
    L = solve_rt(model.r, np.array([quadratic_basis(g) for g in grid]).T)
    width = np.linalg.norm(L, axis=0)
    n, df = x.size, x.size - model.p
    hits = 0
    for start in range(0, reps, block):
        eps = rng.standard_normal((min(block, reps - start), n))
        z = eps @ model.q
        sigma = np.sqrt((np.sum(eps * eps, axis=1) - np.sum(z * z, axis=1)) / df)
        hits += int(np.count_nonzero((np.abs(z @ L) / width).max(axis=1) <= c * sigma))
    return hits / reps


def main(cfg):
    rng = np.random.default_rng(cfg.seed)
    x = np.linspace(cfg.lo, cfg.hi, cfg.n)
    dom = DomainRect([cfg.lo], [cfg.hi], [40])
    grid = np.linspace(cfg.lo, cfg.hi, cfg.grid_points)
    t0 = time.perf_counter()
    print("alpha   c        coverage  target")
    for alpha in cfg.alphas:
        band = scb_band(x, rng.standard_normal(cfg.n), dom, alpha, grid_points=11)
        cov = coverage(x, band.critical_value, cfg.reps, grid, rng)
        se = np.sqrt(cov * (1 - cov) / cfg.reps)
        print(f"{alpha:5.2f}  {band.critical_value:.5f}  {cov:.4f}    {1 - alpha:.2f} (se {se:.4f})")
    print(f"({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--reps", type=int, default=Config.reps)
    p.add_argument("--n", type=int, default=Config.n)
    a = p.parse_args()
    main(Config(n=a.n, reps=a.reps))
