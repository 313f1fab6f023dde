"""Exception hierarchy shared by the library and the CLI."""


class TailBoundsError(Exception):
    """Base class for all library errors."""


class ValidationError(TailBoundsError, ValueError):
    """Malformed input: weights, rationals, or parameter domains."""


class ShapeViolationError(TailBoundsError, ValueError):
    """A shape precondition (decreasing / unimodal) does not hold."""


class InfeasibleError(TailBoundsError, ValueError):
    """No distribution in the constraint class matches the request."""


class SoundnessViolationError(TailBoundsError, RuntimeError):
    """An oracle exceeded a proven bound; signals an implementation bug."""
