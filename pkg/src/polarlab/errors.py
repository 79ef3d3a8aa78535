"""Exception types raised across the package."""


class PolarlabError(Exception):
    """Base class for all errors raised by polarlab."""


class NonPositiveScale(PolarlabError, ValueError):
    pass


class SingularMap(PolarlabError, ValueError):
    pass


class NotInterior(PolarlabError, ValueError):
    """The origin lies on the boundary, so no bounded polar exists."""


class NotInteriorBody(PolarlabError, ValueError):
    """A geometric-mean input is unbounded or lacks the origin as interior point."""


class NoConvergence(PolarlabError, RuntimeError):
    """Raised when an iteration exhausts its budget; the partial trace is kept."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class BadEpsilon(PolarlabError, ValueError):
    pass


class BadParameter(PolarlabError, ValueError):
    pass


class BadIndex(PolarlabError, ValueError):
    pass


class NotPositiveDefinite(PolarlabError, ValueError):
    pass


class PositiveDefinite(PolarlabError, ValueError):
    """No family of fixed bodies exists for a positive-definite duality."""


class EmptySample(PolarlabError, ValueError):
    pass


class EmptyCloud(PolarlabError, ValueError):
    pass


class ParseError(PolarlabError, ValueError):
    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvalidBody(PolarlabError, ValueError):
    pass
