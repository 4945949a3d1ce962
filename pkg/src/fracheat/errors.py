"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class NonConvergenceError(ArithmeticError):
    """A quadrature ran out of refinement budget before meeting its tolerance.

    The best available estimate and its error estimate are carried along so
    callers can decide whether to use them anyway.
    """

    def __init__(self, message: str, estimate: float, error: float) -> None:
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error
