"""Phase-plane classification of ``(lambda, alpha)`` and existence verdicts.

For fixed ``n`` and ``p`` the open quadrant splits into five disjoint regions:

* ``A``: ``0 < lambda < 1``
* ``B``: ``lambda = 1``
* ``C``: ``lambda > 1`` and ``alpha >= (n+2)/2 (1 - 1/lambda)``
* ``D``: ``lambda > 1`` and ``(n+2)/(2p) (1 - 1/lambda) <= alpha < (n+2)/2 (1 - 1/lambda)``
* ``E``: ``lambda > 1`` and ``alpha < (n+2)/(2p) (1 - 1/lambda)``

``D`` is empty when ``p = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "PlaneParams",
    "Region",
    "Problem",
    "Outcome",
    "Verdict",
    "CURVE_RTOL",
    "lower_threshold",
    "upper_threshold",
    "admissible",
    "classify",
    "on_curve",
    "fujita_lambda0",
    "verdict",
    "nonexistence_exponent",
    "xp_membership_selfsimilar",
]

CURVE_RTOL = 1e-12


@dataclass(frozen=True)
class PlaneParams:
    n: int
    p: float
    lam: float
    alpha: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if not self.p >= 1 or math.isinf(self.p):
            raise DomainError(f"p must be a finite real >= 1, got {self.p!r}")
        if not self.lam > 0 or math.isinf(self.lam):
            raise DomainError(f"lambda must be a finite positive real, got {self.lam!r}")
        if not self.alpha > 0 or math.isinf(self.alpha):
            raise DomainError(f"alpha must be a finite positive real, got {self.alpha!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def lam_prime(self) -> float:
        """Hoelder conjugate ``lambda / (lambda - 1)``; only meaningful for ``lambda > 1``."""
        if not self.lam > 1:
            raise DomainError("conjugate exponent needs lambda > 1")
        return self.lam / (self.lam - 1.0)

    def as_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "lambda": self.lam, "alpha": self.alpha}


class Region(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"


class Problem(str, enum.Enum):
    SUPER = "super"
    APPROXIMATE = "approximate"
    SUB = "sub"
    EXACT = "exact"


class Outcome(str, enum.Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not-exists"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    note: str

    def as_dict(self) -> dict:
        return {"outcome": self.outcome.value, "note": self.note}


# Both thresholds are always computed with these two expressions so that
# boundary membership is reproducible bit for bit.
def upper_threshold(n: int, lam: float) -> float:
    return (n + 2) / 2 * (1.0 - 1.0 / lam)


def lower_threshold(n: int, p: float, lam: float) -> float:
    return (n + 2) / (2 * p) * (1.0 - 1.0 / lam)


def admissible(params: PlaneParams) -> bool:
    """Whether ``(p, alpha)`` allow the fractional heat operator to be defined."""
    bound = (params.n + 2) / (2 * params.p)
    if params.p > 1:
        return 0 < params.alpha < bound
    return 0 < params.alpha <= bound


def on_curve(params: PlaneParams) -> bool:
    """Whether ``alpha = (n+2)/(2p) (1 - 1/lambda)`` with ``lambda > 1`` (relative tolerance 1e-12)."""
    if not params.lam > 1:
        return False
    target = lower_threshold(params.n, params.p, params.lam)
    return abs(params.alpha - target) <= CURVE_RTOL * target


def classify(params: PlaneParams) -> Region:
    """Return the unique region containing ``(lambda, alpha)``.

    Points within the curve tolerance are snapped onto the curve: they land
    in ``D`` for ``p > 1`` and in ``C`` for ``p = 1``, matching the closed
    boundaries of those sets.
    """
    lam, alpha = params.lam, params.alpha
    if lam < 1:
        return Region.A
    if lam == 1:
        return Region.B
    if on_curve(params):
        return Region.D if params.p > 1 else Region.C
    if alpha >= upper_threshold(params.n, lam):
        return Region.C
    if alpha >= lower_threshold(params.n, params.p, lam):
        return Region.D
    return Region.E


def fujita_lambda0(n: int, alpha: float) -> float:
    """Critical exponent ``1 + 2 alpha / (n + 2 - 2 alpha)`` of Fujita type.

    Defined for ``0 < alpha < (n+2)/2``; equals ``1 + 2/n`` at ``alpha = 1``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not 0 < alpha < (n + 2) / 2:
        raise DomainError(f"critical exponent needs 0 < alpha < (n+2)/2 = {(n + 2) / 2}, got {alpha!r}")
    return 1 + 2 * alpha / (n + 2 - 2 * alpha)


def verdict(problem: Problem | str, params: PlaneParams) -> Verdict:
    """Existence verdict for nontrivial nonnegative solutions of ``problem`` at ``params``."""
    problem = Problem(problem)
    region = classify(params)
    curve = on_curve(params)

    if problem is Problem.SUPER:
        ok = region in (Region.B, Region.D, Region.E)
        return Verdict(
            Outcome.EXISTS if ok else Outcome.NOT_EXISTS,
            f"super problem: solutions exist iff (lambda, alpha) in B, D or E; point is in {region.value}",
        )
    if problem is Problem.APPROXIMATE:
        if params.p > 1 and curve:
            return Verdict(Outcome.UNRESOLVED, "approximate problem: no result on the curve when p > 1")
        ok = region is Region.E
        return Verdict(
            Outcome.EXISTS if ok else Outcome.NOT_EXISTS,
            f"approximate problem: solutions exist iff (lambda, alpha) in E; point is in {region.value}",
        )
    if problem is Problem.SUB:
        if curve:
            return Verdict(Outcome.UNRESOLVED, "sub problem: no result on the curve")
        ok = region in (Region.A, Region.E)
        return Verdict(
            Outcome.EXISTS if ok else Outcome.NOT_EXISTS,
            f"sub problem: solutions exist iff (lambda, alpha) in A or E; point is in {region.value}",
        )
    necessary = (params.p > 1 and curve) or region is Region.E
    status = "satisfied" if necessary else "violated"
    return Verdict(
        Outcome.UNRESOLVED,
        "exact problem: open; necessary condition (on the curve with p > 1, or in E) is " + status,
    )


def nonexistence_exponent(params: PlaneParams) -> float:
    """Power of ``R`` in the test-function bound, ``((n+2)/lambda' - 2 alpha) lambda'``.

    Non-positive exactly on region ``C``.
    """
    if not params.lam > 1:
        raise DomainError("exponent needs lambda > 1")
    lp = params.lam_prime
    return ((params.n + 2) / lp - 2 * params.alpha) * lp


def xp_membership_selfsimilar(params: PlaneParams) -> bool:
    """Whether the self-similar source lies in ``X^p``: ``n/2 - alpha lambda p / (lambda - 1) > -1``."""
    if not params.lam > 1:
        raise DomainError("self-similar source needs lambda > 1")
    lam, alpha = params.lam, params.alpha
    return params.n / 2 - alpha * lam * params.p / (lam - 1) > -1
