"""Fractional heat kernel, its spatial Fourier transform, and closed-form
convolution identities.

Every evaluation is carried out in log space and exponentiated at the end,
so tiny orders or large ``|x|^2 / t`` underflow gracefully to zero instead
of producing ``0 * inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .specfun import log_gamma

__all__ = [
    "KernelQuery",
    "phi",
    "log_phi_r2",
    "phi_r2",
    "phi_hat",
    "space_conv_closed_form",
    "gaussian_conv",
]

_LOG_4PI = math.log(4.0 * math.pi)


def _as_vector(x: float | Sequence[float] | np.ndarray) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.ndim != 1:
        raise DomainError(f"expected a point in R^n, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class KernelQuery:
    """A space-time point ``(x, t)`` together with the kernel order."""

    alpha: float
    x: tuple[float, ...]
    t: float

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise DomainError(f"kernel order must be positive, got {self.alpha!r}")
        if len(self.x) < 1:
            raise DomainError("space dimension must be at least 1")
        object.__setattr__(self, "x", tuple(float(c) for c in self.x))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def r2(self) -> float:
        return float(sum(c * c for c in self.x))


def log_phi_r2(alpha: float, n: int, r2, t):
    """Natural log of the kernel as a function of ``|x|^2`` and ``t``.

    Vectorized over ``r2`` and ``t``; returns ``-inf`` where ``t <= 0``.
    """
    r2 = np.asarray(r2, dtype=float)
    t = np.asarray(t, dtype=float)
    r2, t = np.broadcast_arrays(r2, t)
    out = np.full(r2.shape, -np.inf)
    pos = t > 0
    tp = t[pos]
    lt = np.log(tp)
    out[pos] = (alpha - 1.0) * lt - log_gamma(alpha) - 0.5 * n * (_LOG_4PI + lt) - r2[pos] / (4.0 * tp)
    return out if out.ndim else float(out)


def phi_r2(alpha: float, n: int, r2, t):
    """Kernel value from ``|x|^2``; exactly zero for ``t <= 0``."""
    return np.exp(log_phi_r2(alpha, n, r2, t))


def phi(q: KernelQuery) -> float:
    """Fractional heat kernel ``t^(alpha-1)/Gamma(alpha) (4 pi t)^(-n/2) exp(-|x|^2/4t)``.

    The indicator of ``t > 0`` is honoured exactly: the result is ``0.0`` for
    every ``t <= 0``.
    """
    if q.t <= 0:
        return 0.0
    try:
        return math.exp(float(log_phi_r2(q.alpha, q.n, q.r2, q.t)))
    except OverflowError:
        # same as the array version: values beyond double range are inf
        return math.inf


def phi_hat(alpha: float, t: float, y) -> float:
    """Spatial Fourier transform of the kernel at frequency ``y``."""
    if not alpha > 0:
        raise DomainError(f"kernel order must be positive, got {alpha!r}")
    if not t > 0:
        raise DomainError(f"Fourier symbol needs t > 0, got {t!r}")
    y = _as_vector(y)
    return math.exp((alpha - 1.0) * math.log(t) - log_gamma(alpha) - t * float(y @ y))


def space_conv_closed_form(alpha: float, beta: float, n: int, x, t: float, tau: float) -> float:
    """Closed form of the spatial convolution of two kernels at times ``t - tau`` and ``tau``.

    Returns ``(t-tau)^(alpha-1) tau^(beta-1) / (Gamma(alpha) Gamma(beta)) * Phi_1(x, t)``.
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError("kernel orders must be positive")
    if not 0 < tau < t:
        raise DomainError(f"need 0 < tau < t, got tau={tau!r}, t={t!r}")
    x = _as_vector(x)
    if x.size != n:
        raise DomainError(f"point has dimension {x.size}, expected {n}")
    log_val = (
        (alpha - 1.0) * math.log(t - tau)
        + (beta - 1.0) * math.log(tau)
        - log_gamma(alpha)
        - log_gamma(beta)
        + log_phi_r2(1.0, n, float(x @ x), t)
    )
    return math.exp(log_val)


def gaussian_conv(a: float, b: float, n: int, x) -> float:
    """Convolution of ``exp(-|x|^2/a)`` with ``exp(-|x|^2/b)`` in R^n."""
    if not (a > 0 and b > 0):
        raise DomainError(f"Gaussian widths must be positive, got a={a!r}, b={b!r}")
    x = _as_vector(x)
    if x.size != n:
        raise DomainError(f"point has dimension {x.size}, expected {n}")
    s = a + b
    return (math.pi * a * b / s) ** (0.5 * n) * math.exp(-float(x @ x) / s)
