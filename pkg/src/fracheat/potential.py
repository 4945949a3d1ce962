"""The fractional potential ``J_alpha f``: space-time convolution of a source
with the fractional heat kernel.

Three evaluators are provided:

* ``j_alpha_separable`` for sources ``psi(t) Phi_beta(x, t)``, where the
  spatial convolution collapses to a closed form and only a weighted time
  integral is left;
* ``j_alpha_selfsimilar`` for the self-similar source
  ``t^(-gamma) w(x / sqrt(t))``, reduced by parabolic scaling to the profile
  integral ``i_profile`` at ``t = 1``;
* ``j_alpha_direct``, a brute-force nested quadrature in one space
  dimension, used as the oracle for the two reductions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, NonConvergenceError
from .kernel import _as_vector, log_phi_r2
from .quadrature import (
    DEFAULT_SPEC,
    JacobiWeight,
    QuadratureSpec,
    adaptive_integrate,
    gauss_hermite_rule,
    gauss_jacobi_rule,
    gauss_laguerre_rule,
    gaussian_cutoff,
)
from .specfun import gamma, log_gamma

__all__ = [
    "SeparableKernelInput",
    "SelfSimilarSolution",
    "separable_time_factor",
    "j_alpha_separable",
    "log_j_alpha_separable",
    "i_profile",
    "j_alpha_selfsimilar",
    "j_alpha_direct",
]

_LOG_4PI = math.log(4.0 * math.pi)
_MAX_DOUBLINGS = 4
# outer time nodes closer than this (relative) to a singular endpoint are
# dropped; the neglected piece is O(gap^exponent), far below any tolerance
_TIME_GAP = 1e-150


@dataclass(frozen=True)
class SeparableKernelInput:
    """Source ``f(x, t) = psi(t) Phi_beta(x, t)`` for ``t > support_start``, zero before.

    ``psi`` must accept numpy arrays and be nonnegative on the support.
    """

    beta: float
    psi: Callable[[np.ndarray], np.ndarray]
    support_start: float = 0.0

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not self.support_start >= 0:
            raise DomainError(f"support_start must be non-negative, got {self.support_start!r}")

    def psi_values(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(self.psi(t), dtype=float), t.shape)

    def source(self, x, t: float) -> float:
        """Pointwise value of ``f``."""
        if not t > self.support_start:
            return 0.0
        x = _as_vector(x)
        return float(self.psi_values(np.array(t))) * math.exp(log_phi_r2(self.beta, x.size, float(x @ x), t))


@dataclass(frozen=True)
class SelfSimilarSolution:
    """Self-similar pair ``f = t^(-gamma) w(x/sqrt t)``, ``u = f^(1/lambda)``.

    ``w(z) = exp(-lambda |z|^2 / 4) (1 + |z|^2)^(-lambda delta)`` and
    ``w_alpha = w^(1/lambda)``.
    """

    n: int
    lam: float
    alpha: float
    gamma_exponent: float = field(init=False)
    delta: float = field(init=False)
    sigma: float = field(init=False)
    mu: float = field(init=False)

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if not (self.lam > 1 and math.isfinite(self.lam)):
            raise DomainError(f"self-similar solution needs lambda > 1, got {self.lam!r}")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        n = int(self.n)
        g = self.alpha * self.lam / (self.lam - 1.0)
        delta = (n + 2) / 2 - g
        if not delta > 0:
            raise DomainError(
                f"self-similar solution needs alpha < (n+2)/2 (1 - 1/lambda) = "
                f"{(n + 2) / 2 * (1 - 1 / self.lam)!r}, got alpha={self.alpha!r}"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gamma_exponent", g)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "sigma", 1.0 - 1.0 / self.lam)
        object.__setattr__(self, "mu", (n + 2) / 2 - self.alpha)

    def log_w_r2(self, r2):
        r2 = np.asarray(r2, dtype=float)
        return -self.lam * (0.25 * r2 + self.delta * np.log1p(r2))

    def w_r2(self, r2):
        return np.exp(self.log_w_r2(r2))

    def w_alpha_r2(self, r2):
        r2 = np.asarray(r2, dtype=float)
        return np.exp(-(0.25 * r2 + self.delta * np.log1p(r2)))

    def w(self, z) -> float:
        z = _as_vector(z)
        return float(self.w_r2(float(z @ z)))

    def w_alpha(self, z) -> float:
        z = _as_vector(z)
        return float(self.w_alpha_r2(float(z @ z)))

    def f_r2(self, r2, t):
        """Source values from ``|x|^2``; vectorized, zero for ``t <= 0``."""
        r2, t = np.broadcast_arrays(np.asarray(r2, dtype=float), np.asarray(t, dtype=float))
        out = np.zeros(r2.shape)
        pos = t > 0
        tp = t[pos]
        out[pos] = np.exp(-self.gamma_exponent * np.log(tp) + self.log_w_r2(r2[pos] / tp))
        return out if out.ndim else float(out)

    def f(self, x, t: float) -> float:
        x = _as_vector(x)
        return float(self.f_r2(float(x @ x), t))

    def u(self, x, t: float) -> float:
        if not t > 0:
            return 0.0
        x = _as_vector(x)
        return t ** (-self.alpha / (self.lam - 1.0)) * float(self.w_alpha_r2(float(x @ x) / t))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda": self.lam,
            "alpha": self.alpha,
            "gamma_exponent": self.gamma_exponent,
            "delta": self.delta,
            "sigma": self.sigma,
            "mu": self.mu,
        }


# --------------------------------------------------------------------------
# separable sources


def _doubling_sum(rule_sum: Callable[[int], float], spec: QuadratureSpec, what: str) -> float:
    npts = spec.node_count
    prev = rule_sum(npts)
    err = math.inf
    for _ in range(min(spec.max_refinements, _MAX_DOUBLINGS)):
        npts *= 2
        cur = rule_sum(npts)
        err = abs(cur - prev)
        if err <= spec.rel_tolerance * abs(cur):
            return cur
        prev = cur
    raise NonConvergenceError(f"{what}: node doubling did not converge", prev, err)


def separable_time_factor(alpha: float, inp: SeparableKernelInput, t: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``K(t)`` with ``J_alpha f(x, t) = Phi_1(x, t) K(t)``; zero when ``t`` is not past the support start."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    s0 = inp.support_start
    if not t > s0:
        return 0.0
    beta = inp.beta
    if s0 == 0.0:
        # tau = t s: weight (1-s)^(alpha-1) s^(beta-1)
        weight = JacobiWeight(alpha - 1.0, beta - 1.0)
        scale = math.exp((alpha + beta - 1.0) * math.log(t) - log_gamma(alpha) - log_gamma(beta))

        def rule_sum(npts: int) -> float:
            s, wts = gauss_jacobi_rule(npts, weight)
            return float(wts @ inp.psi_values(t * s))

    else:
        # tau = s0 + (t - s0) s: weight (1-s)^(alpha-1); tau^(beta-1) is smooth here
        length = t - s0
        weight = JacobiWeight(alpha - 1.0, 0.0)
        scale = math.exp(alpha * math.log(length) - log_gamma(alpha) - log_gamma(beta))

        def rule_sum(npts: int) -> float:
            s, wts = gauss_jacobi_rule(npts, weight)
            tau = s0 + length * s
            return float(wts @ (tau ** (beta - 1.0) * inp.psi_values(tau)))

    return scale * _doubling_sum(rule_sum, spec, "separable time integral")


def log_j_alpha_separable(alpha: float, inp: SeparableKernelInput, x, t: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Natural log of ``J_alpha f``; ``-inf`` where it vanishes.

    ``x`` may be a single point of shape ``(n,)`` or a batch of shape ``(m, n)``.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    k = separable_time_factor(alpha, inp, t, spec)
    if k <= 0.0:
        out = np.full(pts.shape[0], -np.inf)
    else:
        r2 = np.einsum("ij,ij->i", pts, pts)
        out = log_phi_r2(1.0, pts.shape[1], r2, t) + math.log(k)
    return float(out[0]) if single else out


def j_alpha_separable(alpha: float, inp: SeparableKernelInput, x, t: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """``J_alpha f`` for a separable source, via one Gauss-Jacobi time integral.

    Returns ``0`` for ``t <= support_start``.
    """
    return np.exp(log_j_alpha_separable(alpha, inp, x, t, spec))


# --------------------------------------------------------------------------
# self-similar source


def _profile_h(sol: SelfSimilarSolution, r2x: float, tau: np.ndarray, n_space: int) -> np.ndarray:
    """Regular part of the profile integrand, ``I(x) = int (1-tau)^(alpha-1) tau^(delta-1) H(tau) dtau``.

    Completing the square in the inner Gaussian leaves
    ``H = exp(-|x|^2/(4(1-sigma tau))) (4/(lambda(1-sigma tau)))^(n/2) G``
    with ``G = int exp(-|y|^2) (1 + |c + eps y|^2)^(-lambda delta) dy``,
    ``c = sqrt(tau) x / (lambda (1 - sigma tau))`` and
    ``eps = 2 sqrt(1-tau) / sqrt(lambda (1 - sigma tau))``.
    """
    n, lam, sigma = sol.n, sol.lam, sol.sigma
    power = -lam * sol.delta
    q = lam * (1.0 - sigma * tau)
    cnorm = np.sqrt(tau * r2x) / q
    eps = 2.0 * np.sqrt(1.0 - tau) / np.sqrt(q)
    yh, wh = gauss_hermite_rule(n_space)
    along = cnorm[:, None] + eps[:, None] * yh[None, :]
    if n == 1:
        g = np.log1p(along * along)
        g = np.exp(power * g) @ wh
    else:
        a = 0.5 * (n - 3)
        rl, wl = gauss_laguerre_rule(n_space, a)
        arg = along[:, :, None] ** 2 + (eps * eps)[:, None, None] * rl[None, None, :]
        vals = np.exp(power * np.log1p(arg))
        g = np.einsum("ijk,j,k->i", vals, wh, wl) * math.pi ** (0.5 * (n - 1)) / gamma(0.5 * (n - 1))
    log_pref = -r2x / (4.0 * (1.0 - sigma * tau)) + 0.5 * n * np.log(4.0 / q)
    return np.exp(log_pref) * g


def i_profile(sol: SelfSimilarSolution, x, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Profile integral ``I(x) = Gamma(alpha) (4 pi)^(n/2) J_alpha f(x, 1)``.

    The time integral carries the weight ``(1-tau)^(alpha-1) tau^(delta-1)``
    and is done by Gauss-Jacobi; the space integral by Gauss-Hermite (and
    generalized Gauss-Laguerre in the transverse radius when ``n >= 2``).
    All node counts double together until two passes agree.
    """
    x = _as_vector(x)
    if x.size != sol.n:
        raise DomainError(f"point has dimension {x.size}, expected {sol.n}")
    if sol.n > 3:
        raise DomainError("profile integral is implemented for n <= 3")
    r2x = float(x @ x)
    weight = JacobiWeight(sol.alpha - 1.0, sol.delta - 1.0)

    def rule_sum(npts: int) -> float:
        tau, wts = gauss_jacobi_rule(npts, weight)
        return float(wts @ _profile_h(sol, r2x, tau, npts))

    return _doubling_sum(rule_sum, spec, "profile integral")


def j_alpha_selfsimilar(sol: SelfSimilarSolution, x, t: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``J_alpha f(x, t) = t^(-alpha/(lambda-1)) I(x/sqrt t) / (Gamma(alpha) (4 pi)^(n/2))``; zero for ``t <= 0``."""
    if not t > 0:
        return 0.0
    x = _as_vector(x)
    prof = i_profile(sol, x / math.sqrt(t), spec)
    log_scale = -sol.alpha / (sol.lam - 1.0) * math.log(t) - log_gamma(sol.alpha) - 0.5 * sol.n * _LOG_4PI
    return prof * math.exp(log_scale)


# --------------------------------------------------------------------------
# brute-force oracle


def j_alpha_direct(
    f_sampler: Callable[[np.ndarray, float], np.ndarray],
    alpha: float,
    n: int,
    x,
    t: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Nested adaptive quadrature of ``int_0^t int_R Phi_alpha(x-xi, t-tau) f(xi, tau) dxi dtau``.

    Only ``n = 1``. ``f_sampler(xi, tau)`` takes an array of ``xi`` and a
    scalar ``tau``. The source is assumed to live on the parabolic scale
    around ``xi = 0`` (every source used in this package does); the spatial
    window is cut where the Gaussian tail falls below
    ``rel_tolerance / 100``.

    The time integral is split at ``t/2`` so that both singular endpoints
    (``tau = 0`` from the source, ``tau = t`` from the kernel) sit at an
    exactly representable zero of their own variable.
    """
    if n != 1:
        raise DomainError("the brute-force potential is only implemented for n = 1")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    x = float(_as_vector(x)[0])
    if not t > 0:
        return 0.0
    inner_spec = QuadratureSpec(spec.node_count, spec.rel_tolerance / 10.0, spec.max_refinements)
    reach = gaussian_cutoff(1.0, spec.rel_tolerance)
    window = gaussian_cutoff(t, spec.rel_tolerance)
    lo, hi = min(0.0, x) - window, max(0.0, x) + window

    def slice_integral(tau: float, s: float, shift: float) -> float:
        # integrate over eta = xi - shift, so the relevant spike sits at 0
        offset = x - shift

        def integrand(eta: np.ndarray) -> np.ndarray:
            # x - xi formed without the cancellation in x - (eta + shift)
            kern = np.exp(log_phi_r2(alpha, 1, (offset - eta) ** 2, s))
            return kern * np.asarray(f_sampler(eta + shift, tau), dtype=float)

        rt, rs = reach * math.sqrt(tau), reach * math.sqrt(s)
        pts = [-shift, -shift - rt, -shift + rt, offset, offset - rs, offset + rs]
        return adaptive_integrate(integrand, lo - shift, hi - shift, inner_spec, points=pts).value

    def early(taus: np.ndarray) -> np.ndarray:
        return np.array([slice_integral(tau, t - tau, 0.0) for tau in taus])

    def late(ss: np.ndarray) -> np.ndarray:
        return np.array([slice_integral(t - s, s, x) for s in ss])

    half = 0.5 * t
    first = adaptive_integrate(early, 0.0, half, spec, min_gap=_TIME_GAP)
    second = adaptive_integrate(late, 0.0, half, spec, min_gap=_TIME_GAP)
    return first.value + second.value
