import math

import numpy as np
import pytest
from scipy import stats

from tubeformula import specfun
from tubeformula.errors import DomainError, InvalidCovarianceError
from tubeformula.mc import directions, grid_points, simulate_sup_tail, sup_tail_from_directions
from tubeformula.models import GreatCircle, MixtureCovariance, mixture_constants
from tubeformula.prob import GAUSS, ONE_SIDED, TPROC, TWO_SIDED, UNIF, ProcessSpec
from tubeformula.quadrature import DomainRect
from tubeformula.tube import tube_constants


def test_single_direction_gauss():
    p, se = sup_tail_from_directions([[0.0, 1.0, 0.0]], ProcessSpec(), 1.5, 50_000, seed=3)
    assert abs(p - specfun.normal_tail(1.5)) <= 3 * se


def test_single_direction_t():
    p, se = sup_tail_from_directions([[1.0]], ProcessSpec(TPROC, TWO_SIDED, df=5), 2.0, 50_000)
    assert abs(p - 2 * stats.t.sf(2.0, 5)) <= 3 * se


def test_full_circle_uniform():
    dom = DomainRect([0], [2 * math.pi], [50], [True])
    proc = ProcessSpec(UNIF, ONE_SIDED, ambient_n=3)
    k = tube_constants(GreatCircle(ambient=3), dom)
    rep = simulate_sup_tail(GreatCircle(ambient=3), dom, proc, math.cos(math.pi / 6), 100_000,
                            seed=11, constants=k)
    assert abs(rep.estimate - 0.5) <= 3 * rep.std_error
    assert rep.tube == pytest.approx(0.5, abs=1e-12)
    assert rep.grid["points"] == 200


def test_mixture_level():
    dom = DomainRect([-3], [3], [200], exclusions=[(0, (-1e-9, 1e-9))])
    rep = simulate_sup_tail(MixtureCovariance(), dom, ProcessSpec(GAUSS, ONE_SIDED), 2.49455,
                            200_000, seed=1, constants=mixture_constants())
    assert abs(rep.estimate - 0.05) <= max(3 * rep.std_error, 0.003)
    assert abs(rep.tube - 0.05) < 2e-4


def test_reproducible_and_thread_independent():
    T = GreatCircle(ambient=3).points(np.linspace(0, 1, 30))
    proc = ProcessSpec(GAUSS, TWO_SIDED)
    a = sup_tail_from_directions(T, proc, 2.0, 5500, seed=42)
    b = sup_tail_from_directions(T, proc, 2.0, 5500, seed=42, threads=4)
    c = sup_tail_from_directions(T, proc, 2.0, 5500, seed=43)
    assert a == b
    assert a != c


def test_grid_points():
    pts = grid_points(DomainRect([0], [1], [4]), 2)
    np.testing.assert_allclose(pts[:, 0], np.linspace(0, 1, 9))
    periodic = grid_points(DomainRect([0], [1], [4], [True]), 2)
    assert periodic.shape == (8, 1) and periodic[-1, 0] < 1
    slab = grid_points(DomainRect([-1], [1], [4], exclusions=[(0, (-0.1, 0.1))]), 2)
    assert not np.any(np.abs(slab) < 0.1)
    assert grid_points(DomainRect([0, 0], [1, 1], [2, 2]), 2).shape == (25, 2)


def test_directions_from_covariance_are_consistent():
    mus = np.array([[-1.0], [0.5], [2.0]])
    T = directions(MixtureCovariance(), mus)
    np.testing.assert_allclose(T @ T.T, MixtureCovariance().covariance_matrix(mus[:, 0]),
                               atol=1e-12)


def test_directions_errors():
    class Bad:
        def covariance_matrix(self, x):
            return np.array([[1.0, 2.0], [2.0, 1.0]])

    with pytest.raises(InvalidCovarianceError):
        directions(Bad(), np.zeros((2, 1)))
    with pytest.raises(DomainError):
        directions(lambda x, order: GreatCircle(covariance=True)(x, order), np.zeros((2, 1)))


def test_argument_checks():
    dom = DomainRect([0], [1], [4])
    with pytest.raises(DomainError):
        simulate_sup_tail(GreatCircle(), dom, ProcessSpec(), 2.0, reps=10)
    with pytest.raises(DomainError):
        simulate_sup_tail(GreatCircle(), dom, ProcessSpec(), 2.0, grid_mult=1)


def test_report_dict():
    rep = simulate_sup_tail(GreatCircle(), DomainRect([0], [1], [4]), ProcessSpec(), 2.0, 1000)
    d = rep.as_dict()
    assert set(d) >= {"estimate", "std_error", "reps", "grid", "seed"}
    assert d["tube"] is None


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_estimates_nondecreasing_in_grid_mult(seed):
    from tubeformula.models import ExpRegression

    man = ExpRegression(-1 + 2 * np.arange(12) / 11)
    dom = DomainRect([-2], [2], [10])
    est = [simulate_sup_tail(man, dom, ProcessSpec(GAUSS, TWO_SIDED), 2.5, 20_000, seed, g).estimate
           for g in (2, 4, 8)]
    assert est[0] <= est[1] <= est[2]
