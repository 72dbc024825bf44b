"""Exception types shared across the package."""

__all__ = ["ParameterError", "PathlossError", "QuadratureError"]


class ParameterError(ValueError):
    """A model or configuration parameter is outside its admissible domain."""


class PathlossError(ParameterError):
    """Path-loss exponent outside (2, 4]: the interference kernels diverge."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge.

    Carries the best available estimate and its error bound so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
