"""Exception types shared across the library.

The CLI maps these onto process exit codes: parameter/usage problems -> 2,
quadrature tolerance failures -> 3, capacity overruns -> 4.
"""


class ParameterError(ValueError):
    """A argument violates a documented precondition."""


class UnsupportedRegimeError(ParameterError):
    """The (p, q, theta) combination matches no supported rate regime."""


class CapacityError(RuntimeError):
    """A requested enumeration or grid exceeds the configured desk-scale caps."""


class QuadratureAccuracyError(RuntimeError):
    """Grid quadrature hit its size cap before reaching the requested tolerance.

    Carries the best available estimate so callers can decide whether to use it.
    """

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate
