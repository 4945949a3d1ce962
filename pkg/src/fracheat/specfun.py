"""Gamma, log-gamma, beta and the regularized lower incomplete gamma function.

Only positive real arguments are supported, which is all the kernel and
solution constants ever need.
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = ["gamma", "log_gamma", "beta_fn", "reg_lower_inc_gamma"]

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 100_000


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"{name} must be a finite positive real, got {x!r}")
    return x


def _lanczos_sum(z: float) -> float:
    # z = x - 1 with x >= 0.5
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    return acc


def gamma(x: float) -> float:
    """Return Gamma(x) for x > 0."""
    x = _check_positive("x", x)
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x keeps us on the positive axis
        return gamma(x + 1.0) / x
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # split the power to delay overflow
    half = t ** (0.5 * (z + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * _lanczos_sum(z)


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for x > 0."""
    x = _check_positive("x", x)
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def beta_fn(a: float, b: float) -> float:
    """Return the Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    a = _check_positive("a", a)
    b = _check_positive("b", b)
    if a + b < 50.0:
        return gamma(a) * gamma(b) / gamma(a + b)
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def _lower_series(a: float, x: float) -> float:
    # sum_k x^k / ((a+1)...(a+k)), times x^a e^-x / Gamma(a+1)
    term = 1.0
    total = 1.0
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma series failed for a={a}, x={x}")
    return total * math.exp(a * math.log(x) - x - log_gamma(a + 1.0))


def _upper_continued_fraction(a: float, x: float) -> float:
    # modified Lentz evaluation of the continued fraction for Q(a, x)
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma fraction failed for a={a}, x={x}")
    return math.exp(a * math.log(x) - x - log_gamma(a)) * h


def reg_lower_inc_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).

    Uses the power series below ``x = a + 1`` and the continued fraction for
    the complement above it.
    """
    a = _check_positive("a", a)
    x = float(x)
    if not x >= 0.0:
        raise DomainError(f"x must be non-negative, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        p = _lower_series(a, x)
    else:
        p = 1.0 - _upper_continued_fraction(a, x)
    return min(max(p, 0.0), 1.0)
