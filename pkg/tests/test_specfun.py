import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracheat.errors import DomainError
from fracheat.quadrature import JacobiWeight, adaptive_integrate, gauss_jacobi_rule
from fracheat.specfun import beta_fn, gamma, log_gamma, reg_lower_inc_gamma


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 1.0), (0.5, math.sqrt(math.pi)), (4.0, 6.0), (10.0, 362880.0)],
)
def test_gamma_known_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-14)


def test_gamma_against_mpmath():
    xs = np.concatenate([np.geomspace(1e-6, 1.0, 60), np.linspace(1.0, 50.0, 200)])
    worst = max(abs(gamma(x) / float(mp.gamma(x)) - 1.0) for x in xs)
    assert worst <= 1e-13


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (2.0, 0.0), (10.0, math.log(362880.0))])
def test_log_gamma_known_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-13)


def test_log_gamma_consistent_with_gamma():
    for x in np.linspace(0.05, 150.0, 300):
        assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-12)
    for x in (200.0, 1e4, 1e8):
        assert log_gamma(x) == pytest.approx(float(mp.loggamma(x)), rel=1e-14)


@pytest.mark.parametrize("a, b, expected", [(1, 1, 1.0), (2, 3, 1 / 12), (0.5, 0.5, math.pi)])
def test_beta_known_values(a, b, expected):
    assert beta_fn(a, b) == pytest.approx(expected, rel=1e-14)


def test_beta_symmetric_and_large_arguments():
    assert beta_fn(2.7, 0.4) == beta_fn(0.4, 2.7)
    assert beta_fn(40.0, 30.0) == pytest.approx(float(mp.beta(40, 30)), rel=1e-12)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0))
@settings(max_examples=40, deadline=None)
def test_beta_matches_jacobi_quadrature(a, b):
    _, w = gauss_jacobi_rule(8, JacobiWeight(a - 1.0, b - 1.0))
    assert w.sum() == pytest.approx(beta_fn(a, b), rel=1e-10)


@given(st.floats(0.1, 30.0))
@settings(max_examples=100, deadline=None)
def test_gamma_recurrence(x):
    assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 5.0, 40.0])
def test_incomplete_gamma_exponential_case(x):
    assert reg_lower_inc_gamma(1.0, x) == pytest.approx(-math.expm1(-x), rel=1e-13, abs=1e-300)


def test_incomplete_gamma_endpoints():
    assert reg_lower_inc_gamma(2.5, 0.0) == 0.0
    assert reg_lower_inc_gamma(2.5, math.inf) == 1.0


def test_incomplete_gamma_against_quadrature():
    # P(0.7, 2.3) with the s^(-0.3) endpoint singularity handled by the integrator
    value = adaptive_integrate(lambda s: s**-0.3 * np.exp(-s), 0.0, 2.3).value / gamma(0.7)
    assert reg_lower_inc_gamma(0.7, 2.3) == pytest.approx(value, abs=1e-10)


def test_incomplete_gamma_against_mpmath():
    for a in (0.05, 0.3, 1.0, 2.7, 15.0, 60.0):
        for x in (1e-4, 0.1, 1.0, a, a + 1.0, 3 * a + 5, 200.0):
            ref = float(mp.gammainc(a, 0, x, regularized=True))
            assert reg_lower_inc_gamma(a, x) == pytest.approx(ref, rel=1e-12, abs=1e-15)


def test_incomplete_gamma_monotone_on_grid():
    xs = np.linspace(0.0, 30.0, 400)
    for a in (0.3, 1.0, 4.5):
        vals = [reg_lower_inc_gamma(a, x) for x in xs]
        assert all(v2 >= v1 for v1, v2 in zip(vals, vals[1:]))
        assert 0.0 <= min(vals) and max(vals) <= 1.0


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        gamma(bad)
    with pytest.raises(DomainError):
        log_gamma(bad)
    with pytest.raises(DomainError):
        beta_fn(bad, 1.0)
    with pytest.raises(DomainError):
        reg_lower_inc_gamma(bad, 1.0)


def test_incomplete_gamma_rejects_negative_x():
    with pytest.raises(DomainError):
        reg_lower_inc_gamma(1.0, -0.1)
