import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tubeformula import specfun
from tubeformula.errors import DomainError


@pytest.mark.parametrize("x, want", [(1.0, 0.0), (0.5, 0.5723649429247001),
                                     (10.0, math.log(math.factorial(9)))])
def test_log_gamma_values(x, want):
    assert specfun.log_gamma(x) == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        specfun.log_gamma(x)


@pytest.mark.parametrize("k, want", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi)])
def test_sphere_area(k, want):
    assert specfun.sphere_area(k) == pytest.approx(want, rel=1e-14)


@pytest.mark.parametrize("k, want", [(0, 1.0), (2, math.pi), (3, 4 * math.pi / 3)])
def test_ball_volume(k, want):
    assert specfun.ball_volume(k) == pytest.approx(want, rel=1e-14)


@given(st.integers(1, 60))
def test_area_is_derivative_of_volume(k):
    assert specfun.sphere_area(k) == pytest.approx(k * specfun.ball_volume(k), rel=1e-12)


def test_sphere_area_domain():
    with pytest.raises(DomainError):
        specfun.sphere_area(0)


def test_chisq_values():
    assert specfun.chisq_tail(2, 4.0) == pytest.approx(math.exp(-2.0), rel=1e-13)
    assert specfun.chisq_tail(5, 0.0) == 1.0
    want = float(mp.erfc(mp.mpf("1.959964") / mp.sqrt(2)))
    assert specfun.chisq_tail(1, 1.959964 ** 2) == pytest.approx(want, rel=1e-10)
    assert abs(specfun.chisq_tail(1, 3.8414588) - 0.05) < 1e-6


@pytest.mark.parametrize("k, q", [(1, 0.3), (2, 5.0), (3, 7.5), (4, 12.0)])
def test_chisq_against_density_integration(k, q):
    from conftest import chisq_tail_oracle

    assert specfun.chisq_tail(k, q) == pytest.approx(chisq_tail_oracle(k, q), rel=1e-10)


@pytest.mark.parametrize("k", [0, -1])
def test_chisq_domain(k):
    with pytest.raises(DomainError):
        specfun.chisq_tail(k, 1.0)


def test_beta_values():
    assert specfun.beta_tail(2.0, 3.0, 0.0) == 1.0
    assert specfun.beta_tail(1.0, 0.5, 0.75) == pytest.approx(0.5, rel=1e-14)


def test_beta_against_density_integration():
    mp.mp.dps = 30
    a, b, x = mp.mpf("1.5"), mp.mpf("2.5"), mp.mpf("0.3")
    dens = lambda t: t ** (a - 1) * (1 - t) ** (b - 1) / mp.beta(a, b)
    want = float(mp.quad(dens, [x, 1]))
    assert specfun.beta_tail(1.5, 2.5, 0.3) == pytest.approx(want, rel=1e-13)


# dyadic x keeps 1 - x exact, so only the library's own error is measured
@given(st.floats(0.1, 30), st.floats(0.1, 30), st.integers(0, 2**40).map(lambda k: k / 2**40))
def test_beta_reflection(a, b, x):
    assert specfun.beta_tail(a, b, x) + specfun.beta_tail(b, a, 1 - x) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("args", [(0, 1, 0.5), (1, -1, 0.5), (1, 1, 1.5), (1, 1, -0.1)])
def test_beta_domain(args):
    with pytest.raises(DomainError):
        specfun.beta_tail(*args)


def test_f_values():
    assert specfun.f_tail(3, 7, 0.0) == 1.0
    mp.mp.dps = 30
    k, nu = mp.mpf(2), mp.mpf(10)
    dens = lambda t: (mp.sqrt((k * t) ** k * nu ** nu / (k * t + nu) ** (k + nu))
                      / (t * mp.beta(k / 2, nu / 2)))
    want = float(mp.quad(dens, [4.10, 100, mp.inf]))
    got = specfun.f_tail(2, 10, 4.10)
    assert got == pytest.approx(want, rel=1e-10)
    assert abs(got - 0.05) < 5e-4


@given(st.floats(1, 200), st.floats(0, 20))
def test_f_one_is_t_squared(nu, q):
    want = float(2 * mp.quad(lambda t: mp.gamma((nu + 1) / 2) / (mp.sqrt(nu * mp.pi) * mp.gamma(nu / 2))
                             * (1 + t * t / nu) ** (-(nu + 1) / 2), [math.sqrt(q), mp.inf]))
    assert specfun.f_tail(1, nu, q) == pytest.approx(want, rel=1e-8, abs=1e-14)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
@pytest.mark.parametrize("q", [0.5, 3.0, 10.0])
def test_f_tends_to_chisq(k, q):
    assert abs(specfun.f_tail(k, 1e8, q / k) - specfun.chisq_tail(k, q)) < 1e-6


def test_f_domain():
    with pytest.raises(DomainError):
        specfun.f_tail(1, 0, 1.0)
    with pytest.raises(DomainError):
        specfun.f_tail(0, 3, 1.0)


def test_normal_tail():
    assert specfun.normal_tail(0.0) == 0.5
    assert specfun.normal_tail(40.0) < 1e-300
    assert specfun.normal_tail(math.inf) == 0.0
    want = float(mp.erfc(mp.mpf("1.959964") / mp.sqrt(2)) / 2)
    assert specfun.normal_tail(1.959964) == pytest.approx(want, rel=1e-12)


@given(st.integers(1, 30), st.floats(0, 200))
def test_probabilities_in_unit_interval(k, q):
    for p in (specfun.chisq_tail(k, q), specfun.f_tail(k, 5.0, q), specfun.normal_tail(q - 100)):
        assert np.isfinite(p) and 0.0 <= p <= 1.0


@given(st.floats(1e-3, 1e6))
def test_log_gamma_accuracy(x):
    want = float(mp.loggamma(mp.mpf(x)))
    assert specfun.log_gamma(x) == pytest.approx(want, rel=1e-13, abs=1e-300 if want else 1e-15)


@given(st.integers(1, 40), st.floats(0, 150))
def test_chisq_accuracy(k, q):
    want = float(mp.gammainc(mp.mpf(k) / 2, mp.mpf(q) / 2, mp.inf, regularized=True))
    assert abs(specfun.chisq_tail(k, q) - want) <= 1e-12


@given(st.floats(-10, 40))
def test_normal_tail_accuracy(c):
    want = float(mp.erfc(mp.mpf(c) / mp.sqrt(2)) / 2)
    assert abs(specfun.normal_tail(c) - want) <= 1e-13
