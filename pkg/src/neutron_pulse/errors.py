"""Exception types raised across the package.

Every validation error derives from :class:`ValidationError` (itself a
``ValueError``) so the command line can map it to exit status 1; numerical
quality failures derive from :class:`NumericalQualityError` (exit status 2).
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class NumericalQualityError(ArithmeticError):
    """A computed result failed a numerical quality threshold."""


class NotNormalized(ValidationError):
    pass


class BadAxis(ValidationError):
    pass


class GeometryViolation(ValidationError):
    pass


class NonNormalizedProfile(ValidationError):
    pass


class StepCountTooSmall(ValidationError):
    pass


class IndexOutOfBand(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class ZeroNorm(ValidationError):
    pass


class NegativeInput(ValidationError):
    pass


class NonPositiveInput(ValidationError):
    pass


class NonPositiveDuration(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class ConfigError(ValidationError):
    """Malformed or unknown run configuration."""
