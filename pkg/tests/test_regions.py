import math

import numpy as np
import pytest

from fracheat.errors import DomainError
from fracheat.regions import (
    Outcome,
    PlaneParams,
    Problem,
    Region,
    admissible,
    classify,
    fujita_lambda0,
    lower_threshold,
    nonexistence_exponent,
    on_curve,
    upper_threshold,
    verdict,
    xp_membership_selfsimilar,
)


def P(n, p, lam, alpha):
    return PlaneParams(n=n, p=p, lam=lam, alpha=alpha)


@pytest.mark.parametrize(
    "n, p, alpha, expected",
    [(1, 1, 1.5, True), (1, 2, 0.75, False), (2, 1, 0.5, True), (1, 1, 1.5000001, False), (3, 2, 1.0, True)],
)
def test_admissible(n, p, alpha, expected):
    assert admissible(P(n, p, 2.0, alpha)) is expected


@pytest.mark.parametrize(
    "params, expected",
    [
        (P(1, 1, 0.5, 1.0), Region.A),
        (P(3, 2.5, 0.5, 7.0), Region.A),
        (P(2, 2, 1.0, 0.3), Region.B),
        (P(1, 1, 3.0, 0.25), Region.E),
        (P(2, 2, 3.0, 1.0), Region.D),
        (P(2, 2, 2.0, 2.0), Region.C),
        (P(2, 2, 3.0, 1.5), Region.C),
    ],
)
def test_classify_examples(params, expected):
    assert classify(params) is expected


@pytest.mark.parametrize(
    "params, expected",
    [(P(1, 1, 3.0, 1.0), True), (P(1, 1, 0.5, 1.0), False), (P(1, 1, 3.0, 0.9), False), (P(1, 1, 1.0, 0.0001), False)],
)
def test_on_curve(params, expected):
    assert on_curve(params) is expected


def test_on_curve_tolerance_is_relative():
    target = lower_threshold(2, 1.7, 4.0)
    assert on_curve(P(2, 1.7, 4.0, target * (1 + 5e-13)))
    assert not on_curve(P(2, 1.7, 4.0, target * (1 + 1e-10)))


def _members(params):
    """Five set memberships evaluated directly from the set definitions."""
    n, p, lam, a = params.n, params.p, params.lam, params.alpha
    up = (n + 2) / 2 * (1 - 1 / lam)
    low = (n + 2) / (2 * p) * (1 - 1 / lam)
    return {
        Region.A: lam < 1,
        Region.B: lam == 1,
        Region.C: lam > 1 and a >= up,
        Region.D: lam > 1 and low <= a < up,
        Region.E: lam > 1 and 0 < a < low,
    }


def test_partition_random_samples():
    rng = np.random.default_rng(20240611)
    for _ in range(10_000):
        params = P(int(rng.integers(1, 5)), rng.uniform(1, 4), rng.uniform(0, 10), rng.uniform(0, 10))
        if params.lam == 0 or params.alpha == 0:
            continue
        members = _members(params)
        assert sum(members.values()) == 1
        assert members[classify(params)]


def test_partition_on_threshold_lines():
    # boundaries hit exactly: C owns the upper line, D the lower one
    for n in (1, 2, 3):
        for lam in (1.5, 2.0, 5.0):
            up = upper_threshold(n, lam)
            assert classify(P(n, 2.0, lam, up)) is Region.C
            assert classify(P(n, 2.0, lam, lower_threshold(n, 2.0, lam))) is Region.D
    assert classify(P(1, 1, 1.0, 5.0)) is Region.B


def test_no_region_d_when_p_is_one():
    rng = np.random.default_rng(7)
    for _ in range(2000):
        params = P(int(rng.integers(1, 5)), 1.0, rng.uniform(0.01, 10), rng.uniform(0.01, 10))
        assert classify(params) is not Region.D


def test_curve_points_are_in_d_for_p_above_one():
    rng = np.random.default_rng(8)
    for _ in range(500):
        n, p, lam = int(rng.integers(1, 5)), rng.uniform(1.01, 4), rng.uniform(1.01, 10)
        params = P(n, p, lam, lower_threshold(n, p, lam))
        assert on_curve(params)
        assert classify(params) is Region.D


def test_fujita_lambda0():
    for n in (1, 2, 3, 4):
        assert fujita_lambda0(n, 1.0) == pytest.approx(1 + 2 / n, rel=1e-15)
    assert fujita_lambda0(2, 1.0) == 2.0
    assert fujita_lambda0(3, 1e-12) == pytest.approx(1.0, abs=1e-11)
    with pytest.raises(DomainError):
        fujita_lambda0(2, 2.0)
    with pytest.raises(DomainError):
        fujita_lambda0(2, 0.0)


@pytest.mark.parametrize(
    "problem, params, outcome",
    [
        (Problem.SUPER, P(1, 1, 1.0, 0.5), Outcome.EXISTS),
        (Problem.SUB, P(1, 1, 0.5, 1.0), Outcome.EXISTS),
        (Problem.APPROXIMATE, P(2, 2, 3.0, 1.0), Outcome.NOT_EXISTS),
        (Problem.APPROXIMATE, P(1, 1, 3.0, 0.25), Outcome.EXISTS),
        (Problem.SUPER, P(2, 2, 2.0, 2.0), Outcome.NOT_EXISTS),
        (Problem.SUPER, P(2, 2, 0.5, 1.0), Outcome.NOT_EXISTS),
        (Problem.SUB, P(2, 2, 3.0, 1.0), Outcome.NOT_EXISTS),
        (Problem.SUB, P(1, 1, 3.0, 0.25), Outcome.EXISTS),
        (Problem.APPROXIMATE, P(2, 2, 3.0, 2 / 3), Outcome.UNRESOLVED),
        (Problem.SUB, P(2, 2, 3.0, 2 / 3), Outcome.UNRESOLVED),
        (Problem.SUB, P(1, 1, 3.0, 1.0), Outcome.UNRESOLVED),
        (Problem.APPROXIMATE, P(1, 1, 3.0, 1.0), Outcome.NOT_EXISTS),
    ],
)
def test_verdicts(problem, params, outcome):
    v = verdict(problem, params)
    assert v.outcome is outcome
    assert v.note


def test_exact_problem_always_unresolved():
    v_e = verdict("exact", P(1, 1, 3.0, 0.25))
    v_c = verdict("exact", P(2, 2, 2.0, 2.0))
    assert v_e.outcome is v_c.outcome is Outcome.UNRESOLVED
    assert "satisfied" in v_e.note and "violated" in v_c.note


def test_super_verdict_always_definite():
    rng = np.random.default_rng(9)
    for _ in range(1000):
        params = P(int(rng.integers(1, 5)), rng.uniform(1, 4), rng.uniform(0.01, 10), rng.uniform(0.01, 10))
        assert verdict(Problem.SUPER, params).outcome is not Outcome.UNRESOLVED


@pytest.mark.parametrize("params, expected", [(P(2, 2, 2.0, 2.0), -4.0), (P(1, 1, 3.0, 0.25), 2.25)])
def test_nonexistence_exponent_examples(params, expected):
    assert nonexistence_exponent(params) == pytest.approx(expected, rel=1e-14)


def test_nonexistence_exponent_zero_on_upper_line():
    assert nonexistence_exponent(P(3, 1.5, 4.0, upper_threshold(3, 4.0))) == pytest.approx(0.0, abs=1e-13)


def test_nonexistence_exponent_sign_matches_region_c():
    rng = np.random.default_rng(10)
    for _ in range(1000):
        lam = 1 + rng.uniform(1e-3, 9)
        params = P(int(rng.integers(1, 5)), rng.uniform(1, 4), lam, rng.uniform(0.01, 10))
        if abs(params.alpha - upper_threshold(params.n, lam)) < 1e-9:
            continue
        assert (nonexistence_exponent(params) <= 0) == (classify(params) is Region.C)


def test_nonexistence_exponent_needs_lambda_above_one():
    with pytest.raises(DomainError):
        nonexistence_exponent(P(1, 1, 1.0, 1.0))


@pytest.mark.parametrize("params, expected", [(P(1, 1, 3.0, 0.25), True), (P(1, 1, 3.0, 1.2), False)])
def test_xp_membership_examples(params, expected):
    assert xp_membership_selfsimilar(params) is expected


def test_xp_membership_matches_region_e():
    rng = np.random.default_rng(12)
    for _ in range(1000):
        n, p, lam = int(rng.integers(1, 5)), rng.uniform(1, 4), rng.uniform(1.01, 10)
        alpha = rng.uniform(0.01, 5)
        if abs(alpha - lower_threshold(n, p, lam)) < 1e-9:
            continue
        assert xp_membership_selfsimilar(P(n, p, lam, alpha)) == (alpha < lower_threshold(n, p, lam))


def test_xp_membership_false_on_curve():
    assert not xp_membership_selfsimilar(P(1, 1, 3.0, 1.0))


@pytest.mark.parametrize("kwargs", [dict(n=0, p=1, lam=1, alpha=1), dict(n=1, p=0.5, lam=1, alpha=1),
                                    dict(n=1, p=1, lam=0, alpha=1), dict(n=1, p=1, lam=1, alpha=-1),
                                    dict(n=1.5, p=1, lam=1, alpha=1), dict(n=1, p=1, lam=math.nan, alpha=1)])
def test_plane_params_validation(kwargs):
    with pytest.raises(DomainError):
        PlaneParams(**kwargs)


def test_lam_prime():
    assert P(1, 1, 3.0, 1.0).lam_prime == 1.5
    with pytest.raises(DomainError):
        P(1, 1, 0.5, 1.0).lam_prime
