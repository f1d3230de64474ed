"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the physically meaningful domain."""


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to converge within its budget.

    Carries the best available tail estimate so callers can report how far
    off the evaluation stopped.
    """

    def __init__(self, message: str, tail_estimate: float | None = None):
        if tail_estimate is not None:
            message = f"{message} (tail estimate {tail_estimate:.3e})"
        super().__init__(message)
        self.tail_estimate = tail_estimate
