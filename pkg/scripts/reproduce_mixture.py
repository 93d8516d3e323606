"""Tube constants and level-alpha critical value of the normal-mixture score test.

Optionally checks the critical value by simulating the sup of the score process.
"""

import argparse
import time
from dataclasses import dataclass

from tubeformula import ProcessSpec, critval, simulate_sup_tail
from tubeformula.models import MixtureCovariance, mixture_constants
from tubeformula.quadrature import DomainRect


@dataclass
class Config:
    lo: float = -3.0
    hi: float = 3.0
    mg: int = 200
    alpha: float = 0.05
    boundary_increment: float = 1.0
    reps: int = 0
    seed: int = 0


def main(cfg):
    t0 = time.perf_counter()
    k = mixture_constants(cfg.lo, cfg.hi, cfg.mg, cfg.boundary_increment)
    c = critval(cfg.alpha, k, ProcessSpec())
    print(f"kappa0 = {k[0]:.5f}")
    print(f"  l0/2 = {k[1]:.5f}")
    print(f"Level {cfg.alpha:g} critical value = {c:.5f}")
    print(f"({time.perf_counter() - t0:.3f} s)")
    if cfg.reps:
        dom = DomainRect([cfg.lo], [cfg.hi], [cfg.mg], exclusions=[(0, (-1e-9, 1e-9))])
        rep = simulate_sup_tail(MixtureCovariance(), dom, ProcessSpec(), c, cfg.reps, cfg.seed,
                                constants=k)
        print(f"simulated P(sup >= c) = {rep.estimate:.5f} +- {rep.std_error:.5f} "
              f"(tube {rep.tube:.5f}, z = {rep.z:.2f})")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(Config()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(val), default=val)
    main(Config(**vars(p.parse_args())))
