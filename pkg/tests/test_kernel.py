import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from fracheat.errors import DomainError
from fracheat.kernel import (
    KernelQuery,
    gaussian_conv,
    log_phi_r2,
    phi,
    phi_hat,
    phi_r2,
    space_conv_closed_form,
)
from fracheat.quadrature import cubature


def test_phi_unit_at_special_time():
    assert phi(KernelQuery(1.0, (0.0,), 1.0 / (4.0 * math.pi))) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("t", [-1.0, 0.0, -1e-300])
def test_phi_vanishes_for_nonpositive_time(t):
    assert phi(KernelQuery(0.7, (0.3, 0.1), t)) == 0.0
    assert phi_r2(0.7, 2, 0.1, t) == 0.0


@pytest.mark.parametrize("t", [0.1, 1.0, 7.0])
def test_phi_origin_in_two_dimensions(t):
    assert phi(KernelQuery(1.0, (0.0, 0.0), t)) == pytest.approx(1.0 / (4.0 * math.pi * t), rel=1e-14)


def test_phi_matches_direct_formula():
    rng = np.random.default_rng(3)
    for _ in range(50):
        alpha = rng.uniform(0.1, 4.0)
        n = int(rng.integers(1, 4))
        x = rng.normal(size=n)
        t = rng.uniform(0.05, 5.0)
        direct = t ** (alpha - 1) / math.gamma(alpha) * (4 * math.pi * t) ** (-n / 2) * math.exp(-(x @ x) / (4 * t))
        assert phi(KernelQuery(alpha, tuple(x), t)) == pytest.approx(direct, rel=1e-12)


def test_phi_underflows_to_zero_without_warnings():
    with np.errstate(all="raise"):
        assert phi(KernelQuery(0.01, (1e3,), 1e-3)) == 0.0
        assert phi(KernelQuery(1e-8, (0.0,), 1.0)) > 0.0


def test_phi_symmetric():
    for x in ([0.3], [1.0, -2.0], [0.1, 0.2, 0.3]):
        x = np.array(x)
        assert phi(KernelQuery(1.3, tuple(x), 0.8)) == phi(KernelQuery(1.3, tuple(-x), 0.8))


@given(st.floats(0.1, 3.0), st.integers(1, 3), st.floats(0.01, 100.0), st.floats(-3, 3), st.floats(0.05, 4.0))
@settings(max_examples=60, deadline=None)
def test_phi_parabolic_scaling(alpha, n, s, x0, t):
    x = np.full(n, x0)
    lhs = phi(KernelQuery(alpha, tuple(math.sqrt(s) * x), s * t))
    rhs = s ** (alpha - 1 - n / 2) * phi(KernelQuery(alpha, tuple(x), t))
    assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_heat_kernel_normalization(n, t):
    half = math.sqrt(4 * t * math.log(1e12))
    res = cubature(lambda p: phi_r2(1.0, n, np.einsum("ij,ij->i", p, p), t), [-half] * n, [half] * n)
    assert res.value == pytest.approx(1.0, abs=1e-8)


def test_phi_hat_values():
    assert phi_hat(0.6, 2.0, [0.0]) == pytest.approx(2.0 ** -0.4 / math.gamma(0.6), rel=1e-14)
    assert phi_hat(1.0, 0.7, [0.3, 0.4]) == pytest.approx(math.exp(-0.7 * 0.25), rel=1e-14)
    assert phi_hat(2.0, 1.0, [0.6, 0.8]) == pytest.approx(math.exp(-1.0), rel=1e-14)


def test_phi_hat_is_fourier_transform_of_phi():
    # transform convention: hat f(y) = int f(x) exp(-i x.y) dx
    alpha, t, y = 1.7, 0.9, 1.3
    re = integrate.quad(lambda x: phi_r2(alpha, 1, x * x, t) * math.cos(x * y), -np.inf, np.inf, epsabs=0, epsrel=1e-12)[0]
    assert re == pytest.approx(phi_hat(alpha, t, [y]), rel=1e-10)


def test_phi_hat_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        phi_hat(1.0, 0.0, [1.0])


def test_space_conv_closed_form_examples():
    assert space_conv_closed_form(1.0, 1.0, 1, [0.0], 1.0, 0.5) == pytest.approx((4 * math.pi) ** -0.5, rel=1e-14)
    assert space_conv_closed_form(2.0, 1.0, 1, [0.0], 2.0, 1.0) == pytest.approx((8 * math.pi) ** -0.5, rel=1e-14)


@pytest.mark.parametrize("tau", [0.0, 1.0, 1.5, -0.2])
def test_space_conv_closed_form_requires_interior_tau(tau):
    with pytest.raises(DomainError):
        space_conv_closed_form(1.0, 1.0, 1, [0.0], 1.0, tau)


def test_space_conv_closed_form_matches_scipy_quadrature():
    rng = np.random.default_rng(11)
    for _ in range(10):
        alpha, beta = rng.uniform(0.3, 3.0, size=2)
        t = rng.uniform(0.2, 2.0)
        tau = rng.uniform(0.05, 0.95) * t
        x = rng.uniform(-3, 3)

        def integrand(xi):
            return phi_r2(alpha, 1, (x - xi) ** 2, t - tau) * phi_r2(beta, 1, xi * xi, tau)

        center = x * tau / t
        pieces = [(-np.inf, center - 5), (center - 5, center), (center, center + 5), (center + 5, np.inf)]
        lhs = sum(integrate.quad(integrand, a, b, epsabs=0, epsrel=1e-12, limit=200)[0] for a, b in pieces)
        assert lhs == pytest.approx(space_conv_closed_form(alpha, beta, 1, [x], t, tau), rel=1e-8)


def test_gaussian_conv_examples():
    for n in (1, 2, 3):
        assert gaussian_conv(1.7, 1.7, n, np.zeros(n)) == pytest.approx((math.pi * 1.7 / 2) ** (n / 2), rel=1e-14)
    assert gaussian_conv(1.0, 1.0, 2, [1.0, 1.0]) == pytest.approx(math.pi / 2 * math.exp(-1.0), rel=1e-14)


def test_gaussian_conv_matches_scipy_quadrature():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, b = rng.uniform(0.2, 4.0, size=2)
        x = rng.uniform(-2, 2)
        lhs = integrate.quad(lambda y: math.exp(-((x - y) ** 2) / a - y * y / b), -np.inf, np.inf, epsabs=0, epsrel=1e-12)[0]
        assert lhs == pytest.approx(gaussian_conv(a, b, 1, [x]), rel=1e-8)


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (1.0, -2.0)])
def test_gaussian_conv_domain(a, b):
    with pytest.raises(DomainError):
        gaussian_conv(a, b, 1, [0.0])


def test_kernel_query_validation():
    with pytest.raises(DomainError):
        KernelQuery(0.0, (1.0,), 1.0)
    with pytest.raises(DomainError):
        KernelQuery(1.0, (), 1.0)
    assert KernelQuery(1.0, (3.0, 4.0), 1.0).r2 == 25.0


def test_log_phi_vectorized():
    r2 = np.array([0.0, 1.0, 4.0])
    t = np.array([1.0, -1.0, 2.0])
    out = log_phi_r2(0.5, 1, r2, t)
    assert out[1] == -np.inf
    assert math.exp(out[2]) == pytest.approx(phi(KernelQuery(0.5, (2.0,), 2.0)), rel=1e-14)


def test_phi_overflow_is_infinite():
    assert phi(KernelQuery(0.01, (0.0,), 1e-300)) == math.inf
