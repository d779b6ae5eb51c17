"""Exception hierarchy.

Every error raised for bad user input derives from ``LadderError`` (a
``ValueError``), so callers and the CLI can treat them uniformly.
"""


class LadderError(ValueError):
    pass


class OverlapError(LadderError):
    pass


class WeightError(LadderError):
    pass


class NormalizationError(LadderError):
    pass


class EmptyStepError(LadderError):
    pass


class RegularityError(LadderError):
    """Operation needs a regular ladder (equal weights, steps and gaps)."""


class DegenerateLadderError(LadderError):
    """Operation is meaningless when the ladder collapses to C(t) = t."""


class ShapeError(LadderError):
    pass


class CriticalPointError(LadderError):
    def __init__(self, message, critical_point):
        super().__init__(message)
        self.critical_point = critical_point


class ConvergenceError(LadderError):
    pass


class DomainError(ValueError):
    pass


class PoleError(DomainError):
    pass


class ThresholdError(LadderError):
    """Asymptotic series evaluated below its validity threshold in strict mode."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (e.g. a value outside its own enclosure)."""
