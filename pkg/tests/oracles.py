"""Independent reference values computed with scipy, shared by several test files."""

import math
import warnings

import numpy as np
from scipy import integrate, special


def profile_integral(n, lam, alpha, xr):
    """Profile integral I at a point of norm ``xr``, reduced to radial form and integrated by QUADPACK.

    The inner integral runs over the radius of ``xi = sqrt(tau) r e`` with the
    sphere average of the heat kernel done in closed form (Bessel / hyperbolic
    functions); the outer time integral carries the algebraic endpoint weight.
    """
    gamma_exp = alpha * lam / (lam - 1)
    delta = (n + 2) / 2 - gamma_exp

    def inner(tau):
        # QUADPACK's algebraic-weight rule samples the endpoints themselves;
        # as tau -> 1 the heat kernel collapses onto z = x
        if 1 - tau < 1e-12:
            return (4 * math.pi) ** (n / 2) * math.exp(-lam * xr * xr / 4 - lam * delta * math.log1p(xr * xr))
        tau = max(tau, 1e-300)
        k = 1 / (4 * (1 - tau))
        a = 2 * math.sqrt(tau) * k * xr

        def rad(r):
            logw = -lam * r * r / 4 - lam * delta * math.log1p(r * r)
            peak = -k * (xr - math.sqrt(tau) * r) ** 2
            ar = a * r
            if n == 1:
                ang = 1 + math.exp(-2 * ar)
            elif n == 2:
                ang = 2 * math.pi * special.ive(0, ar) * r
            else:
                ang = 4 * math.pi * (-math.expm1(-2 * ar)) / (2 * ar) * r * r if ar > 0 else 4 * math.pi * r * r
            return math.exp(logw + peak) * ang

        c = xr / math.sqrt(tau)
        width = math.sqrt((1 - tau) / tau)
        pts = sorted({0.0, c, max(c - 10 * width, 0.0), c + 10 * width})
        v = sum(integrate.quad(rad, lo, hi, epsabs=0, epsrel=1e-12, limit=200)[0] for lo, hi in zip(pts[:-1], pts[1:]))
        v += integrate.quad(rad, pts[-1], np.inf, epsabs=0, epsrel=1e-12, limit=200)[0]
        return v * (1 - tau) ** (-n / 2)

    with warnings.catch_warnings():
        # roundoff notices on the innermost peaks; the outer result is still accurate
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(inner, 0, 1, weight="alg", wvar=(delta - 1, alpha - 1), epsabs=0, epsrel=1e-11, limit=200)[0]


def jacobi_time_integral(alpha, delta, fn):
    """``int_0^1 (1-tau)^(alpha-1) tau^(delta-1) fn(tau) dtau`` by QUADPACK."""
    return integrate.quad(fn, 0, 1, weight="alg", wvar=(delta - 1, alpha - 1), epsabs=0, epsrel=1e-12, limit=200)[0]
