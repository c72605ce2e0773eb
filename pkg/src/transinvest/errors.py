"""Exception types raised by the transition-investment model."""


class ModelError(Exception):
    """Base class for all package errors."""


class ModelDomainError(ModelError, ValueError):
    """Inputs violate a parameter invariant (e.g. ``A <= 0`` or ``beta > 1``)."""


class InvalidBracketError(ModelError, ValueError):
    """Search interval is empty or lies outside the admissible alpha range."""


class NonFiniteObjectiveError(ModelError, ArithmeticError):
    """The objective returned NaN or infinity at a probed point."""


class ConfigError(ModelError):
    """A configuration or targets file could not be parsed."""
