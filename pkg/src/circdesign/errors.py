"""Exception hierarchy shared by every module of the package."""


class DesignError(Exception):
    """Base class for all errors raised by circdesign."""


class DomainError(DesignError, ValueError):
    """A parameter lies outside the interval where it is defined."""


class CollisionError(DesignError):
    """Two points of a product set are closer than the separation threshold."""


class DegenerateError(DesignError):
    """A constructed point set has coincident (non-separated) points."""


class SingletonError(DesignError):
    """An operation needs at least two points."""


class SearchExhaustedError(DesignError):
    """Parameter search ran out of retries."""


class BoundError(DesignError, ValueError):
    """The degree bound does not cover the claimed strength."""


class TraceError(DesignError):
    """A design lacks the construction trace an operation requires."""
