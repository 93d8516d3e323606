import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import special_ortho_group

from tubeformula.errors import DomainError, TubeWarning
from tubeformula.geometry import VectorJet
from tubeformula.models import (Clifford, ExpRegression, GreatCircle, MixtureCovariance,
                                MixtureVector, ScbModel, SphereCap, Torus3)
from tubeformula.quadrature import DomainRect
from tubeformula.tube import (TubeConstants, euclidean_tube_volume, spherical_tube_volume,
                              tube_constants)

X20 = -1 + 2 * np.arange(20) / 19


class Rotated:
    """A manifold with every jet vector multiplied by ``c * Q``."""

    def __init__(self, base, Q, c=1.0):
        self.base, self.Q, self.c = base, Q, c

    def __call__(self, x, order):
        j = self.base(x, order)
        A = self.c * self.Q
        return VectorJet(A @ j.l, None if j.dl is None else A @ j.dl,
                         None if j.ddl is None else np.einsum("mn,nij->mij", A, j.ddl))


class Cubed:
    """``l(t^3)`` for a one-parameter manifold ``l``."""

    def __init__(self, base):
        self.base = base

    def __call__(self, x, order):
        t = float(x[0])
        j = self.base((t ** 3,), order)
        dl = None if j.dl is None else j.dl * 3 * t ** 2
        ddl = None if j.ddl is None else j.ddl * 9 * t ** 4 + j.dl[:, :, None] * 6 * t
        return VectorJet(j.l, dl, ddl)


def test_arc():
    k = tube_constants(GreatCircle(), DomainRect([0], [1], [20]))
    assert k.kap == pytest.approx((1.0, 1.0), abs=1e-14)


def test_full_circle():
    k = tube_constants(GreatCircle(covariance=True), DomainRect([0], [2 * math.pi], [40], [True]))
    assert k.kap == pytest.approx((2 * math.pi, 0.0), abs=1e-13)


def test_mixture_constants():
    dom = DomainRect([-3], [3], [200])
    k = tube_constants(MixtureCovariance(), dom, boundary_increment=1.0)
    assert abs(k[0] - 5.27449) < 5e-6
    assert k[1] == 2.0
    assert k.breakdown["l0"] == 2.0


def test_clifford_constants():
    k = tube_constants(Clifford(), DomainRect([0, 0], [math.pi / 2] * 2, [40, 40]), terms=3)
    assert k[0] == pytest.approx(math.pi ** 2 / 8, rel=1e-12)
    assert k[1] == pytest.approx(math.pi / math.sqrt(2), rel=1e-12)
    # flat intrinsic metric: all of kap[2] is the sphere-relative curvature term
    assert k[2] == pytest.approx(1 - k[0] / (2 * math.pi), rel=1e-9)
    assert k.breakdown["m0"] == pytest.approx(2 * math.pi, rel=1e-12)


@pytest.mark.parametrize("a, b, w", [(0.3, 1.2, 1.0), (0.1, 2.5, 2.0), (1.0, 1.5, 0.3)])
def test_sphere_cap_constants(a, b, w):
    k = tube_constants(SphereCap(), DomainRect([a, 0], [b, w], [40, 40]), terms=3)
    area = w * (math.cos(a) - math.cos(b))
    assert k[0] == pytest.approx(area, rel=1e-7)
    assert k[1] == pytest.approx((w * (math.sin(a) + math.sin(b)) + 2 * (b - a)) / 2, rel=1e-12)
    assert k[2] == pytest.approx(1 - area / (2 * math.pi), rel=1e-7)


def test_gauss_bonnet_scb_dim2(rng):
    x = rng.uniform(-1, 1, size=(40, 2))
    dom = DomainRect([-1, -1], [1, 1], [40, 40])
    k = tube_constants(ScbModel.from_design(x), dom, terms=3)
    assert k.breakdown["euler_characteristic"] == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("man, dom", [
    (Clifford(), DomainRect([0, 0], [math.pi / 2] * 2, [40, 40])),
    (SphereCap(), DomainRect([0.3, 0], [1.2, 1.0], [40, 40])),
    (Clifford(), DomainRect([0, 0], [1.0, 2.0], [40, 40])),
])
def test_gauss_bonnet(man, dom):
    k = tube_constants(man, dom, terms=3)
    assert k.breakdown["euler_characteristic"] == pytest.approx(1.0, abs=1e-3)


def test_annulus_has_zero_euler_characteristic():
    dom = DomainRect([0, 0.3], [2 * math.pi, 1.0], [40, 40], periodic=[True, False])
    k = tube_constants(Clifford(), dom, terms=3)
    assert k.breakdown["euler_characteristic"] == pytest.approx(0.0, abs=1e-9)


def test_vector_and_covariance_agree_nlreg():
    dom = DomainRect([-2], [2], [100])
    a = tube_constants(ExpRegression(X20), dom, mode="vector")
    b = tube_constants(ExpRegression(X20, covariance=True), dom, mode="covariance")
    np.testing.assert_allclose(a.kap, b.kap, rtol=0, atol=1e-8)


def test_vector_and_covariance_agree_mixture():
    dom = DomainRect([-3], [3], [200])
    a = tube_constants(MixtureVector(), dom, boundary_increment=1.0)
    b = tube_constants(MixtureCovariance(), dom, boundary_increment=1.0)
    np.testing.assert_allclose(a.kap, b.kap, rtol=0, atol=1e-8)


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.floats(0.01, 100))
def test_rotation_and_scaling_invariance(seed, c):
    Q = special_ortho_group.rvs(20, random_state=seed)
    dom = DomainRect([-2], [2], [60])
    base = tube_constants(ExpRegression(X20), dom)
    moved = tube_constants(Rotated(ExpRegression(X20), Q, c), dom)
    np.testing.assert_allclose(moved.kap, base.kap, rtol=1e-9)


def test_rotation_invariance_d2():
    Q = special_ortho_group.rvs(4, random_state=5)
    dom = DomainRect([0.2, 0.1], [1.4, 1.0], [20, 20])
    a = tube_constants(Clifford(), dom, terms=3)
    b = tube_constants(Rotated(Clifford(), Q, 3.0), dom, terms=3)
    np.testing.assert_allclose(b.kap, a.kap, rtol=1e-9)


def test_reparameterization_invariance():
    lo, hi = 0.2, 2.0
    base = tube_constants(ExpRegression(X20), DomainRect([lo], [hi], [400]))
    cubed = tube_constants(Cubed(ExpRegression(X20)),
                           DomainRect([lo ** (1 / 3)], [hi ** (1 / 3)], [400]))
    assert abs(cubed[0] - base[0]) < 2e-6
    assert cubed[1] == pytest.approx(base[1], abs=1e-12)


def test_torus3_euler_closure():
    dom = DomainRect([0] * 3, [math.pi / 2] * 3, [10] * 3)
    k = tube_constants(Torus3(), dom, terms=4, euler_closure=True)
    assert len(k) == 4
    assert k.breakdown["heuristic"] is True
    assert k[0] == pytest.approx((math.pi / 2) ** 3 / 3 ** 1.5, rel=1e-12)
    assert k[1] == pytest.approx(3 * (math.pi / 2) ** 2 / 3, rel=1e-12)
    assert k[3] == pytest.approx(1 - k[1] / (2 * math.pi), rel=1e-12)


def test_fourth_term_without_closure_truncates():
    dom = DomainRect([0] * 3, [1] * 3, [4] * 3)
    with pytest.warns(TubeWarning, match="truncating"):
        k = tube_constants(Torus3(), dom, terms=4)
    assert len(k) == 3


def test_terms_clamped():
    with pytest.warns(TubeWarning, match="clamped"):
        k = tube_constants(GreatCircle(), DomainRect([0], [1], [4]), terms=3)
    assert len(k) == 2


def test_mode_mismatch():
    with pytest.raises(DomainError):
        tube_constants(GreatCircle(), DomainRect([0], [1], [4]), mode="covariance")


def test_threads_are_bitwise_identical():
    dom = DomainRect([0.3, 0], [1.2, 1.0], [20, 20])
    a = tube_constants(SphereCap(), dom, terms=3)
    b = tube_constants(SphereCap(), dom, terms=3, threads=4)
    assert a.kap == b.kap


def test_constants_length_check():
    with pytest.raises(DomainError):
        TubeConstants((1.0, 1.0, 1.0), 1)


def test_euclidean_volume():
    assert euclidean_tube_volume(1, 2, 2, 0.1) == pytest.approx(0.2 + 0.01 * math.pi, rel=1e-14)
    assert euclidean_tube_volume(3.0, 0, 2, 0.25) == pytest.approx(2 * 0.25 * 3.0)
    assert euclidean_tube_volume(2 * math.pi, 0, 3, 0.5) == pytest.approx(2 * math.pi ** 2 * 0.25)
    with pytest.raises(DomainError):
        euclidean_tube_volume(1, 0, 1, 0.1)


@pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 4, 1.0])
def test_spherical_volume_of_band(theta):
    k = TubeConstants((2 * math.pi, 0.0), 1)
    got = spherical_tube_volume(k, 3, math.cos(theta))
    assert got == pytest.approx(4 * math.pi * math.sin(theta), rel=1e-12)


def test_spherical_volume_edges():
    k = TubeConstants((2 * math.pi, 0.0), 1)
    assert spherical_tube_volume(k, 3, 1.0) == 0.0
    with pytest.raises(DomainError):
        spherical_tube_volume(k, 2, 0.5)
