"""Exception types shared across the package."""


class CurvlabError(Exception):
    """Base class for all package-specific errors."""


class PositiveCurvatureError(CurvlabError):
    """A curvature value violated the nonpositivity hypothesis K <= 0."""


class ProfileDomainError(CurvlabError):
    """A curvature profile was evaluated outside its declared domain."""


class StepUnderflowError(CurvlabError):
    """Adaptive integration could not proceed; carries the failure location."""

    def __init__(self, r, message=""):
        self.r = r
        super().__init__(message or f"step size underflow at r = {r!r}")


class NonpositivityViolation(CurvlabError):
    """A Jacobi solution vanished where K <= 0 forbids it."""


class NoSignChangeError(CurvlabError):
    """Bisection bracket endpoints classified on the same side.

    Carries the endpoints and their classifications for diagnosis.
    """

    def __init__(self, lo, lo_class, hi, hi_class):
        self.lo, self.lo_class = lo, lo_class
        self.hi, self.hi_class = hi, hi_class
        super().__init__(
            f"no sign change in initial bracket: "
            f"u0={lo!r} -> {lo_class}, u0={hi!r} -> {hi_class}"
        )


class CrossValidationError(CurvlabError):
    """Two independent estimates disagreed beyond their combined radii."""


class QuadratureBudgetError(CurvlabError):
    """Oscillatory quadrature exhausted its node budget."""


class ConfigError(CurvlabError):
    """Experiment configuration failed schema validation.

    ``path`` is the JSON path of the offending field.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
