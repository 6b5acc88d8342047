"""Exception hierarchy shared by all bicyclo modules."""


class BicycloError(Exception):
    """Base class for library errors."""


class ParameterError(BicycloError, ValueError):
    """An argument violates an operation's precondition."""


class UnsupportedParameterError(ParameterError):
    """Parameters fall outside the hypotheses of a closed-form result (e.g. m <= 3)."""


class NotDualContainingError(BicycloError):
    """A quantum construction was requested for a code that does not contain its dual."""


class CapacityError(BicycloError):
    """A field or matrix would exceed the configured size limits."""
