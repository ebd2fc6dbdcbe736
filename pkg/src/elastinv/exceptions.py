"""Exception types raised across the package."""


class ElastinvError(Exception):
    """Base class for all package errors."""


class InvalidMediumError(ElastinvError, ValueError):
    pass


class InvalidCurveError(ElastinvError, ValueError):
    """A curve fails its geometric invariants (degenerate or non-star-shaped)."""


class NonpositiveRadiusError(InvalidCurveError):
    """An update would make the radial function vanish somewhere."""


class CoincidentPointsError(ElastinvError, ValueError):
    pass


class OverlappingBoundariesError(ElastinvError, ValueError):
    """Obstacle and reference ball are closer than the separation tolerance."""


class SingularSystemError(ElastinvError, ArithmeticError):
    """The Nystrom system is numerically singular (interior resonance)."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ModalSingularError(SingularSystemError):
    def __init__(self, message, mode=None, condition=None):
        super().__init__(message, condition)
        self.mode = mode


class TruncationError(ElastinvError, RuntimeError):
    pass


class ZeroResidualError(ElastinvError, ValueError):
    pass


class ConfigError(ElastinvError, ValueError):
    """Malformed run configuration; ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class HeaderMismatchError(ConfigError):
    pass


class NotFittedError(ElastinvError, AttributeError):
    pass
