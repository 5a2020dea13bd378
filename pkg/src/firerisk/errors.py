"""Exception hierarchy for the risk engine.

Input-side problems (bad frames, bad wire data) derive from ValidationError
or the wire errors; configuration problems derive from ConfigError. The CLI
maps the former to exit code 1 and the latter to exit code 2.
"""


class FireRiskError(Exception):
    """Base class for all engine errors."""


class ValidationError(FireRiskError):
    """A frame record violates a type invariant."""


class NonFiniteField(ValidationError):
    """A coordinate or confidence is NaN or infinite."""


class ConfidenceOutOfRange(ValidationError):
    """A confidence score lies outside [0, 1]."""


class NegativeDimension(ValidationError):
    """A width, height, or area is negative."""


class ZeroFrameArea(ValidationError):
    """Frame width times height is not positive."""


class AreaExceedsFrame(FireRiskError):
    """An area is larger than the frame it belongs to."""


class NonPositiveReference(FireRiskError):
    """Calibration reference width is zero, negative, or non-finite."""


class IndexOutOfRange(FireRiskError):
    """A fire or object index does not exist in the frame."""


class RiskOutOfRange(FireRiskError):
    """A risk value fed to the smoother lies outside [0, 1]."""


class OutOfOrderFrame(FireRiskError):
    """Stream frame ids are not strictly increasing."""


class MalformedJson(FireRiskError):
    """A wire line is not valid JSON."""


class SchemaViolation(FireRiskError):
    """A wire line is valid JSON but missing or mistyping a field."""


class MismatchedReport(FireRiskError):
    """A report does not belong to the frame it was paired with."""


class SpecLengthMismatch(FireRiskError):
    """A scenario trajectory does not cover every frame."""


class ConfigError(FireRiskError):
    """The engine configuration is unusable."""


class ScaleUnresolved(ConfigError):
    """No pixels-per-meter scale could be resolved for a frame."""
