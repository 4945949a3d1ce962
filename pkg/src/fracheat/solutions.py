"""Explicit super-solutions, the self-similar solution, and the constants of
the sublinear lower envelope.

Super-solutions come in two families:

* ``lambda = 1``: ``f(x, t) = exp(a(t+T)) Phi_1(x, t+T)`` for ``t >= 0``;
* ``lambda > 1`` below the upper curve: ``f(x, t) = A Phi_beta(x, t+T)``.

Both are shifts of an unshifted function ``g`` with ``g >= (J_alpha g)^lambda``;
``g`` and the shifted ``f`` are exposed as separable potential inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NonConvergenceError
from .kernel import _as_vector, log_phi_r2
from .potential import SelfSimilarSolution, SeparableKernelInput
from .quadrature import DEFAULT_SPEC, QuadratureSpec, gauss_legendre_rule
from .regions import upper_threshold
from .specfun import log_gamma, reg_lower_inc_gamma

__all__ = [
    "Lambda1SuperSolution",
    "SupercriticalSuperSolution",
    "SublinearEnvelope",
    "make_lambda1_super",
    "lambda1_ratio",
    "make_supercritical_super",
    "supercritical_beta",
    "supercritical_amplitude",
    "supercritical_ratio",
    "make_selfsimilar",
    "envelope_M",
    "envelope_value",
    "bootstrap_sequence",
    "ball_heat_mass",
    "BallMassMinimum",
    "ball_mass_search",
    "ball_mass_constant",
    "N0_constant",
]

_LOG_4PI = math.log(4.0 * math.pi)
_BETA_RTOL = 1e-12
_MAX_DOUBLINGS = 5


def _check_time_shift(T: float) -> None:
    if not (T > 0 and math.isfinite(T)):
        raise DomainError(f"time shift T must be a finite positive real, got {T!r}")


# --------------------------------------------------------------------------
# lambda = 1


@dataclass(frozen=True)
class Lambda1SuperSolution:
    """``f(x, t) = exp(a(t+T)) Phi_1(x, t+T)`` for ``t >= 0``; a solution of ``f >= J_alpha f`` when ``a >= 1``."""

    alpha: float
    a: float = 1.0
    T: float = 1.0

    lam = 1.0

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        if not (self.a >= 1 and math.isfinite(self.a)):
            raise DomainError(f"exponential rate must satisfy a >= 1 for the super inequality, got {self.a!r}")
        _check_time_shift(self.T)

    def log_g(self, r2, t, n: int):
        """Log of the unshifted ``g(x, t) = exp(a t) Phi_1(x, t)`` in ``R^n``."""
        t = np.asarray(t, dtype=float)
        return self.a * t + log_phi_r2(1.0, n, r2, t)

    def reduced_input(self) -> SeparableKernelInput:
        a = self.a
        return SeparableKernelInput(1.0, lambda tau: np.exp(a * tau), 0.0)

    def shifted_input(self) -> SeparableKernelInput:
        """The shifted ``f`` written in the time variable ``t + T``."""
        a = self.a
        return SeparableKernelInput(1.0, lambda tau: np.exp(a * tau), self.T)

    def source(self, x, t: float) -> float:
        if t < 0:
            return 0.0
        x = _as_vector(x)
        return math.exp(self.a * (t + self.T) + log_phi_r2(1.0, x.size, float(x @ x), t + self.T))

    def as_dict(self) -> dict:
        return {"family": "lambda1", "alpha": self.alpha, "a": self.a, "T": self.T}


def make_lambda1_super(alpha: float, T: float = 1.0, a: float = 1.0) -> Lambda1SuperSolution:
    """Super-solution of ``f >= J_alpha f`` with rate ``a = 1`` unless overridden."""
    return Lambda1SuperSolution(alpha, a, T)


def lambda1_ratio(alpha: float, a: float, t: float) -> float:
    """Closed form of ``J_alpha g / g = P(alpha, a t) / a^alpha`` for ``g = exp(a t) Phi_1``."""
    if not t > 0:
        raise DomainError(f"ratio needs t > 0, got {t!r}")
    return reg_lower_inc_gamma(alpha, a * t) * math.exp(-alpha * math.log(a))


# --------------------------------------------------------------------------
# lambda > 1


def supercritical_beta(n: int, lam: float, alpha: float) -> float:
    return (n + 2) / 2 - lam * alpha / (lam - 1.0)


def supercritical_amplitude(n: int, lam: float, alpha: float, beta: float) -> float:
    """``A`` with ``A^(lambda-1) Gamma(beta) = (4 pi)^((lambda-1) n/2) Gamma(alpha+beta)^lambda``."""
    log_a = (lam - 1.0) * 0.5 * n * _LOG_4PI + lam * log_gamma(alpha + beta) - log_gamma(beta)
    return math.exp(log_a / (lam - 1.0))


@dataclass(frozen=True)
class SupercriticalSuperSolution:
    """``f(x, t) = A Phi_beta(x, t+T)`` for ``t >= 0``.

    ``beta`` is tied to ``(n, lambda, alpha)``; ``A`` may be any positive
    amplitude so that perturbed instances can be represented. Use
    :func:`make_supercritical_super` for the sharp amplitude.
    """

    n: int
    lam: float
    alpha: float
    beta: float
    A: float
    T: float = 1.0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not (self.lam > 1 and math.isfinite(self.lam)):
            raise DomainError(f"supercritical solution needs lambda > 1, got {self.lam!r}")
        bound = upper_threshold(self.n, self.lam)
        if not 0 < self.alpha < bound:
            raise DomainError(
                f"supercritical solution needs 0 < alpha < (n+2)/2 (1 - 1/lambda) = {bound!r}, got alpha={self.alpha!r}"
            )
        expected = supercritical_beta(self.n, self.lam, self.alpha)
        if not abs(self.beta - expected) <= _BETA_RTOL * max(1.0, abs(expected)):
            raise DomainError(f"beta must equal (n+2)/2 - lambda alpha/(lambda-1) = {expected!r}, got {self.beta!r}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not (self.A > 0 and math.isfinite(self.A)):
            raise DomainError(f"amplitude must be a finite positive real, got {self.A!r}")
        _check_time_shift(self.T)

    def log_g(self, r2, t, n: int):
        """Log of the unshifted ``g(x, t) = A Phi_beta(x, t)``."""
        if n != self.n:
            raise DomainError(f"solution lives in R^{self.n}, got n={n!r}")
        return math.log(self.A) + log_phi_r2(self.beta, self.n, r2, t)

    def reduced_input(self) -> SeparableKernelInput:
        amp = self.A
        return SeparableKernelInput(self.beta, lambda tau: np.full(np.shape(tau), amp), 0.0)

    def shifted_input(self) -> SeparableKernelInput:
        amp = self.A
        return SeparableKernelInput(self.beta, lambda tau: np.full(np.shape(tau), amp), self.T)

    def source(self, x, t: float) -> float:
        if t < 0:
            return 0.0
        x = _as_vector(x)
        return self.A * math.exp(log_phi_r2(self.beta, x.size, float(x @ x), t + self.T))

    def as_dict(self) -> dict:
        return {
            "family": "supercritical",
            "n": self.n,
            "lambda": self.lam,
            "alpha": self.alpha,
            "beta": self.beta,
            "A": self.A,
            "T": self.T,
        }


def make_supercritical_super(n: int, lam: float, alpha: float, T: float = 1.0) -> SupercriticalSuperSolution:
    """Sharp super-solution ``A Phi_beta(x, t+T)`` of ``f >= (J_alpha f)^lambda``.

    Requires ``lambda > 1`` and ``0 < alpha < (n+2)/2 (1 - 1/lambda)``.
    """
    if not (lam > 1 and math.isfinite(lam)):
        raise DomainError(f"supercritical solution needs lambda > 1, got {lam!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    beta = supercritical_beta(int(n), lam, alpha)
    if not (alpha > 0 and beta > 0):
        raise DomainError(
            f"supercritical solution needs 0 < alpha < (n+2)/2 (1 - 1/lambda) = "
            f"{upper_threshold(int(n), lam)!r}, got alpha={alpha!r}"
        )
    return SupercriticalSuperSolution(int(n), lam, alpha, beta, supercritical_amplitude(int(n), lam, alpha, beta), T)


def supercritical_ratio(sol: SupercriticalSuperSolution, x, t: float) -> float:
    """Exact ``(J_alpha g)^lambda / g = exp((1 - lambda)|x|^2 / (4t))`` for the sharp amplitude."""
    if not t > 0:
        raise DomainError(f"ratio needs t > 0, got {t!r}")
    x = _as_vector(x)
    return math.exp((1.0 - sol.lam) * float(x @ x) / (4.0 * t))


def make_selfsimilar(n: int, lam: float, alpha: float) -> SelfSimilarSolution:
    """Self-similar solution; needs ``lambda > 1`` and ``0 < alpha < (n+2)/2 (1 - 1/lambda)``."""
    return SelfSimilarSolution(n, lam, alpha)


# --------------------------------------------------------------------------
# sublinear envelope


def _check_sublinear(lam: float, alpha: float) -> None:
    if not 0 < lam < 1:
        raise DomainError(f"envelope needs 0 < lambda < 1, got {lam!r}")
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be positive, got {alpha!r}")


def envelope_M(lam: float, alpha: float) -> float:
    """``Gamma(b + 1) / Gamma(alpha + b + 1)`` with ``b = lambda alpha / (1 - lambda)``."""
    _check_sublinear(lam, alpha)
    b = lam * alpha / (1.0 - lam)
    return math.exp(log_gamma(b + 1.0) - log_gamma(alpha + b + 1.0))


def envelope_value(lam: float, alpha: float, a: float, t: float) -> float:
    """Lower bound ``(M (t - a)^alpha)^(lambda / (1 - lambda))`` for ``t > a``."""
    _check_sublinear(lam, alpha)
    if not t > a:
        raise DomainError(f"envelope needs t > a, got t={t!r}, a={a!r}")
    log_m = math.log(envelope_M(lam, alpha))
    return math.exp(lam / (1.0 - lam) * (log_m + alpha * math.log(t - a)))


@dataclass(frozen=True)
class SublinearEnvelope:
    lam: float
    alpha: float
    a: float = 0.0
    M: float = field(init=False)

    def __post_init__(self) -> None:
        if not (self.a >= 0 and math.isfinite(self.a)):
            raise DomainError(f"vanishing time must be finite and non-negative, got {self.a!r}")
        object.__setattr__(self, "M", envelope_M(self.lam, self.alpha))

    def value(self, t: float) -> float:
        return envelope_value(self.lam, self.alpha, self.a, t)

    def as_dict(self) -> dict:
        return {"lambda": self.lam, "alpha": self.alpha, "a": self.a, "M": self.M}


def bootstrap_sequence(start: float, fixed_point: float, lam: float, j: int) -> float:
    """``b_j`` of the recursion ``b_j / fp = (b_{j-1} / fp)^lambda`` with ``b_0 = start``."""
    if not (start > 0 and fixed_point > 0):
        raise DomainError("start and fixed_point must be positive")
    if not 0 < lam < 1:
        raise DomainError(f"bootstrap needs 0 < lambda < 1, got {lam!r}")
    if int(j) != j or j < 0:
        raise DomainError(f"j must be a non-negative integer, got {j!r}")
    return fixed_point * math.exp(lam ** int(j) * math.log(start / fixed_point))


# --------------------------------------------------------------------------
# heat mass of a ball and the constants built on it


def _erf(v: np.ndarray) -> np.ndarray:
    return np.vectorize(math.erf, otypes=[float])(v)


def _slice_rule_sum(d: float, rho: float, s: float, n: int, npts: int) -> float:
    # slices xi_1 = rho sin(theta); cross-section is an (n-1)-ball of radius rho cos(theta)
    u, wts = gauss_legendre_rule(npts)
    theta = math.pi * (u - 0.5)
    xi1 = rho * np.sin(theta)
    half = rho * np.cos(theta)
    root = 2.0 * math.sqrt(s)
    marginal = np.exp(-((d - xi1) ** 2) / (4.0 * s)) / math.sqrt(4.0 * math.pi * s)
    if n == 1:
        cross = np.ones_like(half)
    elif n == 2:
        cross = _erf(half / root)
    else:
        cross = -np.expm1(-(half * half) / (4.0 * s))
    return float(math.pi * wts @ (marginal * cross * half))


def ball_heat_mass(x, t: float, tau: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``int_{|xi|^2 < tau} Phi_1(x - xi, t - tau) dxi`` for ``n = len(x)`` in ``{1, 2, 3}``."""
    x = _as_vector(x)
    n = x.size
    if n > 3:
        raise DomainError("ball heat mass is implemented for n <= 3")
    if not 0 < tau < t:
        raise DomainError(f"need 0 < tau < t, got tau={tau!r}, t={t!r}")
    d = math.sqrt(float(x @ x))
    rho = math.sqrt(tau)
    s = t - tau
    if n == 1:
        root = 2.0 * math.sqrt(s)
        return 0.5 * (math.erf((rho - d) / root) + math.erf((rho + d) / root))
    npts = spec.node_count
    prev = _slice_rule_sum(d, rho, s, n, npts)
    err = math.inf
    for _ in range(_MAX_DOUBLINGS):
        npts *= 2
        cur = _slice_rule_sum(d, rho, s, n, npts)
        err = abs(cur - prev)
        if err <= spec.rel_tolerance * abs(cur):
            return cur
        prev = cur
    raise NonConvergenceError("ball heat mass did not converge", prev, err)


@dataclass(frozen=True)
class BallMassMinimum:
    value: float
    distance: float
    tau: float
    resolution: int

    def as_dict(self) -> dict:
        return {"value": self.value, "distance": self.distance, "tau": self.tau, "resolution": self.resolution}


def ball_mass_search(n: int, spec: QuadratureSpec = DEFAULT_SPEC, resolution: int = 41) -> BallMassMinimum:
    """Minimum of the scaled ball heat mass over ``|x|^2 <= 1``, ``tau`` in ``[1/4, 3/4]`` (with ``t = 1``).

    The mass is radial in ``x``, so the search runs over ``|x|`` in ``[0, 1]``
    and ``tau`` on a ``resolution x resolution`` grid.
    """
    if n not in (1, 2, 3):
        raise DomainError(f"n must be 1, 2 or 3, got {n!r}")
    if int(resolution) != resolution or resolution < 2:
        raise DomainError(f"resolution must be an integer >= 2, got {resolution!r}")
    best = None
    for d in np.linspace(0.0, 1.0, resolution):
        for tau in np.linspace(0.25, 0.75, resolution):
            val = ball_heat_mass([float(d)] + [0.0] * (n - 1), 1.0, float(tau), spec)
            if best is None or val < best.value:
                best = BallMassMinimum(val, float(d), float(tau), int(resolution))
    assert best is not None
    return best


def ball_mass_constant(n: int, spec: QuadratureSpec = DEFAULT_SPEC, resolution: int = 41) -> float:
    """Numerical lower bound ``C(n)`` for the heat mass of the ball ``|xi|^2 < tau``.

    Valid under ``|x|^2 < t`` and ``t/4 < tau < 3t/4``; by parabolic scaling
    it suffices to take ``t = 1``.
    """
    return ball_mass_search(n, spec, resolution).value


def N0_constant(n: int, lam: float, alpha: float, spec: QuadratureSpec = DEFAULT_SPEC, c_n: float | None = None) -> float:
    """``C(n) / Gamma(alpha) * int_{1/4}^{3/4} (1-s)^(alpha-1) s^(lambda alpha/(1-lambda)) ds``."""
    _check_sublinear(lam, alpha)
    if c_n is None:
        c_n = ball_mass_constant(n, spec)
    b = lam * alpha / (1.0 - lam)

    def rule_sum(npts: int) -> float:
        u, wts = gauss_legendre_rule(npts)
        s = 0.25 + 0.5 * u
        return 0.5 * float(wts @ ((1.0 - s) ** (alpha - 1.0) * s**b))

    npts = spec.node_count
    prev = rule_sum(npts)
    err = math.inf
    for _ in range(_MAX_DOUBLINGS):
        npts *= 2
        cur = rule_sum(npts)
        err = abs(cur - prev)
        if err <= spec.rel_tolerance * abs(cur):
            return c_n * math.exp(math.log(cur) - log_gamma(alpha))
        prev = cur
    raise NonConvergenceError("N0 integral did not converge", prev, err)
