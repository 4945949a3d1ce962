"""Quadrature rules and adaptive integrators for singular time integrals and
Gaussian-weighted space integrals.

Gaussian rules are built by Golub-Welsch and then polished with Newton steps
on the orthonormal three-term recurrence; weights come from the Christoffel
function, which is more accurate than squared eigenvector components.

``adaptive_integrate`` is a double-exponential (tanh-sinh) integrator with
level refinement. It resolves integrable algebraic singularities located at
an endpoint whose coordinate is exactly representable next to its
neighbours; put singular endpoints at 0 (fold the variable) for best
results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, NonConvergenceError
from .specfun import beta_fn, gamma

__all__ = [
    "QuadratureSpec",
    "JacobiWeight",
    "DEFAULT_SPEC",
    "QuadResult",
    "gauss_legendre_rule",
    "gauss_jacobi_rule",
    "gauss_hermite_rule",
    "gauss_laguerre_rule",
    "jacobi_integrate",
    "adaptive_integrate",
    "cubature",
    "gaussian_cutoff",
]


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 64
    rel_tolerance: float = 1e-9
    max_refinements: int = 12

    def __post_init__(self) -> None:
        if int(self.node_count) != self.node_count or self.node_count < 2:
            raise DomainError(f"node_count must be an integer >= 2, got {self.node_count!r}")
        if not self.rel_tolerance > 0:
            raise DomainError(f"rel_tolerance must be positive, got {self.rel_tolerance!r}")
        if int(self.max_refinements) != self.max_refinements or self.max_refinements < 0:
            raise DomainError(f"max_refinements must be a non-negative integer, got {self.max_refinements!r}")

    def as_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "rel_tolerance": self.rel_tolerance,
            "max_refinements": self.max_refinements,
        }


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class JacobiWeight:
    """Weight ``(1 - s)^left_exponent * s^right_exponent`` on ``[0, 1]``."""

    left_exponent: float
    right_exponent: float

    def __post_init__(self) -> None:
        if not (self.left_exponent > -1 and self.right_exponent > -1):
            raise DomainError(
                f"Jacobi exponents must exceed -1, got ({self.left_exponent!r}, {self.right_exponent!r})"
            )


class QuadResult(NamedTuple):
    value: float
    error: float
    levels: int
    history: tuple[float, ...]


# --------------------------------------------------------------------------
# Gaussian rules


def _gaussian_rule(diag: np.ndarray, offsq: np.ndarray, mu0: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights from monic recurrence coefficients.

    ``diag`` holds ``a_0 .. a_{N-1}``; ``offsq`` holds ``b_1 .. b_N`` (one
    more than the Jacobi matrix needs, for the Newton polish).
    """
    npts = diag.size
    off = np.sqrt(offsq)
    if npts == 1:
        return diag.copy(), np.array([mu0])
    jac = np.diag(diag) + np.diag(off[: npts - 1], 1) + np.diag(off[: npts - 1], -1)
    nodes, vecs = np.linalg.eigh(jac)

    def orthonormal(x):
        # returns p_{N-1}, p_N, d/dx p_N and sum_{k<N} p_k^2
        p_prev = np.zeros_like(x)
        p = np.full_like(x, 1.0 / math.sqrt(mu0))
        dp_prev = np.zeros_like(x)
        dp = np.zeros_like(x)
        ssq = p * p
        for k in range(npts):
            b_next = off[k]
            b_cur = off[k - 1] if k > 0 else 0.0
            p_next = ((x - diag[k]) * p - b_cur * p_prev) / b_next
            dp_next = (p + (x - diag[k]) * dp - b_cur * dp_prev) / b_next
            p_prev, p = p, p_next
            dp_prev, dp = dp, dp_next
            if k < npts - 1:
                ssq = ssq + p * p
        return p, dp, ssq

    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(3):
            p, dp, _ = orthonormal(nodes)
            step = p / dp
            if not np.all(np.isfinite(step)):
                break
            nodes = nodes - step
        _, _, ssq = orthonormal(nodes)
        weights = 1.0 / ssq
    if not (np.all(np.isfinite(weights)) and np.all(np.diff(nodes) > 0)):
        nodes, vecs = np.linalg.eigh(jac)
        weights = mu0 * vecs[0] ** 2
    return nodes, weights


def _readonly(*arrays: np.ndarray) -> tuple[np.ndarray, ...]:
    for a in arrays:
        a.setflags(write=False)
    return arrays


@lru_cache(maxsize=256)
def _jacobi_cached(npoints: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    # monic Jacobi recurrence for (1-x)^a (1+x)^b on [-1, 1], shifted to [0, 1]
    k = np.arange(npoints + 1, dtype=float)
    ab = a + b
    diag = np.empty(npoints)
    two_k = 2.0 * k[:npoints] + ab
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (b * b - a * a) / (two_k * (two_k + 2.0))
    diag[0] = (b - a) / (ab + 2.0)
    offsq = np.empty(npoints)
    kk = k[1:]
    two_kk = 2.0 * kk + ab
    with np.errstate(divide="ignore", invalid="ignore"):
        offsq[:] = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (two_kk**2 * (two_kk + 1.0) * (two_kk - 1.0))
    offsq[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) ** 2 * (3.0 + ab))
    nodes, weights = _gaussian_rule((1.0 + diag) / 2.0, offsq / 4.0, beta_fn(a + 1.0, b + 1.0))
    return _readonly(nodes, weights)


def gauss_jacobi_rule(npoints: int, w: JacobiWeight) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_0^1 (1-s)^a s^b f(s) ds``, exact for polynomials of degree ``2N - 1``.

    The returned arrays are cached and read-only.
    """
    if int(npoints) != npoints or npoints < 1:
        raise DomainError(f"npoints must be a positive integer, got {npoints!r}")
    return _jacobi_cached(int(npoints), float(w.left_exponent), float(w.right_exponent))


def gauss_legendre_rule(npoints: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule on ``[0, 1]``."""
    return gauss_jacobi_rule(npoints, JacobiWeight(0.0, 0.0))


@lru_cache(maxsize=64)
def _hermite_cached(npoints: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, npoints + 1, dtype=float)
    nodes, weights = _gaussian_rule(np.zeros(npoints), k / 2.0, math.sqrt(math.pi))
    # symmetrize away rounding asymmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return _readonly(nodes, weights)


def gauss_hermite_rule(npoints: int) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_R exp(-y^2) f(y) dy``."""
    if int(npoints) != npoints or npoints < 1:
        raise DomainError(f"npoints must be a positive integer, got {npoints!r}")
    return _hermite_cached(int(npoints))


@lru_cache(maxsize=64)
def _laguerre_cached(npoints: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(npoints + 1, dtype=float)
    diag = 2.0 * k[:npoints] + a + 1.0
    offsq = k[1:] * (k[1:] + a)
    nodes, weights = _gaussian_rule(diag, offsq, gamma(a + 1.0))
    return _readonly(nodes, weights)


def gauss_laguerre_rule(npoints: int, exponent: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_0^inf r^exponent exp(-r) f(r) dr``."""
    if int(npoints) != npoints or npoints < 1:
        raise DomainError(f"npoints must be a positive integer, got {npoints!r}")
    if not exponent > -1:
        raise DomainError(f"Laguerre exponent must exceed -1, got {exponent!r}")
    return _laguerre_cached(int(npoints), float(exponent))


def jacobi_integrate(
    g: Callable[[np.ndarray], np.ndarray],
    w: JacobiWeight,
    spec: QuadratureSpec = DEFAULT_SPEC,
    max_doublings: int = 4,
) -> QuadResult:
    """``int_0^1 (1-s)^a s^b g(s) ds`` with node doubling until two rules agree."""
    npts = spec.node_count
    nodes, weights = gauss_jacobi_rule(npts, w)
    prev = float(weights @ g(nodes))
    history = []
    for level in range(1, min(spec.max_refinements, max_doublings) + 1):
        npts *= 2
        nodes, weights = gauss_jacobi_rule(npts, w)
        cur = float(weights @ g(nodes))
        err = abs(cur - prev)
        history.append(err)
        if err <= spec.rel_tolerance * abs(cur):
            return QuadResult(cur, err, level, tuple(history))
        prev = cur
    err = history[-1] if history else math.inf
    raise NonConvergenceError("Gauss-Jacobi node doubling did not converge", prev, err)


# --------------------------------------------------------------------------
# Double-exponential adaptive integration

_DE_TMAX = 6.0
_DE_MIN_LEVEL = 3


def _de_nodes(a: float, b: float, t: np.ndarray, min_gap: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Tanh-sinh abscissae and Jacobians on ``[a, b]`` for parameters ``t``."""
    length = b - a
    u = np.pi * np.sinh(t)  # 2 * (pi/2) sinh t
    with np.errstate(over="ignore"):
        d_left = length / (1.0 + np.exp(-u))
        d_right = length / (1.0 + np.exp(u))
    x = np.where(t < 0, a + d_left, b - d_right)
    jac = np.pi * np.cosh(t) * d_left * d_right / length
    gap = min_gap * length
    keep = (x > a) & (x < b) & (jac > 0) & (d_left > gap) & (d_right > gap)
    return x[keep], jac[keep]


def adaptive_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    points: Sequence[float] = (),
    abs_tolerance: float = 0.0,
    min_gap: float = 0.0,
) -> QuadResult:
    """Integrate a vectorized ``f`` over ``[a, b]`` by tanh-sinh level refinement.

    ``points`` are interior breakpoints; every subinterval is refined in
    lockstep, so narrow features placed at a breakpoint are resolved by the
    endpoint clustering of the rule. The error estimate is the change
    between consecutive levels. Nodes closer than ``min_gap`` times the
    subinterval length to an endpoint are dropped, which keeps strongly
    singular integrands finite at the cost of an ``O(min_gap^s)`` truncation
    for an ``x^(s-1)`` singularity. Raises :class:`NonConvergenceError` once
    ``spec.max_refinements`` levels are used up.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("adaptive_integrate needs a finite interval; truncate with gaussian_cutoff")
    if a == b:
        return QuadResult(0.0, 0.0, 0, ())
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = sorted({a, b, *(float(p) for p in points if a < p < b)})
    pieces = [(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]

    def level_sum(t: np.ndarray) -> float:
        xs, js = [], []
        for lo, hi in pieces:
            x, j = _de_nodes(lo, hi, t, min_gap)
            xs.append(x)
            js.append(j)
        x = np.concatenate(xs)
        if x.size == 0:
            return 0.0
        vals = np.asarray(f(x), dtype=float)
        return float(np.concatenate(js) @ vals)

    h = 1.0
    k = np.arange(-int(_DE_TMAX / h), int(_DE_TMAX / h) + 1)
    total = level_sum(k * h)
    estimate = h * total
    history: list[float] = []
    for level in range(1, spec.max_refinements + 1):
        h /= 2.0
        odd = np.arange(-int(_DE_TMAX / h), int(_DE_TMAX / h) + 1)
        odd = odd[odd % 2 == 1]
        total += level_sum(odd * h)
        new = h * total
        err = abs(new - estimate)
        history.append(err)
        estimate = new
        if not math.isfinite(estimate):
            raise NonConvergenceError("integrand produced non-finite values", estimate, math.inf)
        if level >= _DE_MIN_LEVEL and err <= max(spec.rel_tolerance * abs(estimate), abs_tolerance):
            return QuadResult(sign * estimate, err, level, tuple(history))
    raise NonConvergenceError("tanh-sinh refinement budget exhausted", sign * estimate, history[-1] if history else math.inf)


def gaussian_cutoff(time_scale: float, rel_tolerance: float) -> float:
    """Radius ``R`` with ``exp(-R^2 / (4 T)) < rel_tolerance / 100``."""
    return math.sqrt(4.0 * time_scale * math.log(100.0 / rel_tolerance))


def cubature(
    f: Callable[[np.ndarray], np.ndarray],
    lower: Sequence[float],
    upper: Sequence[float],
    spec: QuadratureSpec = DEFAULT_SPEC,
    order: int = 12,
    max_panels: int = 64,
) -> QuadResult:
    """Tensor-product composite Gauss-Legendre cubature over a box.

    ``f`` receives points of shape ``(m, n)``. The number of panels per axis
    doubles each level until consecutive results agree to
    ``spec.rel_tolerance``. Intended for smooth integrands in n <= 3.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    dim = lower.size
    base_x, base_w = gauss_legendre_rule(order)

    def rule(panels: int) -> float:
        axes, wts = [], []
        for lo, hi in zip(lower, upper):
            width = (hi - lo) / panels
            starts = lo + width * np.arange(panels)
            axes.append((starts[:, None] + width * base_x[None, :]).ravel())
            wts.append(np.tile(width * base_w, panels))
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1)
        wgrid = wts[0]
        for w in wts[1:]:
            wgrid = np.multiply.outer(wgrid, w)
        return float(wgrid.ravel() @ np.asarray(f(pts), dtype=float))

    panels = 1
    prev = rule(panels)
    history: list[float] = []
    level = 0
    while panels < max_panels and level < spec.max_refinements:
        panels *= 2
        level += 1
        if dim == 3 and panels * order > 400:
            break
        cur = rule(panels)
        err = abs(cur - prev)
        history.append(err)
        prev = cur
        if level >= 2 and err <= spec.rel_tolerance * abs(cur):
            return QuadResult(cur, err, level, tuple(history))
    raise NonConvergenceError("cubature panel budget exhausted", prev, history[-1] if history else math.inf)
