"""Domain types shared by every stage of the risk engine.

All types are plain immutable value objects. Detection-side records
(BBox, FireInstance, ContextObject, FrameRecord) accept whatever a parser
hands them and are checked explicitly through validate_frame, so untrusted
input can be constructed first and rejected with a precise error.
Configuration-side types (CalibrationScale, VulnerabilityTable, RiskParams)
validate in their constructors because the engine relies on their
invariants unconditionally.
"""

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum

from .errors import (
    AreaExceedsFrame,
    ConfidenceOutOfRange,
    NegativeDimension,
    NonFiniteField,
    ValidationError,
    ZeroFrameArea,
)


class CalibrationSource(str, Enum):
    REFERENCE_OBJECT = "reference_object"
    MANUAL = "manual"
    CONFIG_DEFAULT = "config_default"


class Aggregation(str, Enum):
    WORST_CASE_MAX = "worst_case_max"
    BOUNDED_SUM = "bounded_sum"


class RiskTier(IntEnum):
    """Discrete alert tiers, totally ordered Low < Medium < High < Critical."""

    Low = 0
    Medium = 1
    High = 2
    Critical = 3


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box in pixel coordinates: top-left corner plus size."""

    x: float
    y: float
    w: float
    h: float

    def area(self) -> float:
        return self.w * self.h


@dataclass(frozen=True)
class FireInstance:
    bbox: BBox
    confidence: float
    mask_area_px: float | None = None  # segmentation pixel count; bbox area is the fallback


@dataclass(frozen=True)
class ContextObject:
    bbox: BBox
    class_label: str  # detector category name, matched case-sensitively
    confidence: float


@dataclass(frozen=True)
class CalibrationScale:
    """Pixels-per-meter factor and where it came from."""

    kappa: float
    source: CalibrationSource = CalibrationSource.MANUAL

    def __post_init__(self):
        if not (isinstance(self.kappa, (int, float)) and math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be a finite positive number, got {self.kappa!r}")


@dataclass(frozen=True)
class FrameRecord:
    """One frame's fused detections plus frame geometry."""

    frame_id: int
    width_px: int
    height_px: int
    fires: list[FireInstance] = field(default_factory=list)
    objects: list[ContextObject] = field(default_factory=list)
    timestamp_ms: int | None = None
    scale_override: CalibrationScale | None = None

    def area_px(self) -> float:
        return float(self.width_px) * float(self.height_px)


@dataclass(frozen=True)
class VulnerabilityTable:
    """Class-label to consequence-weight mapping with a fallback weight."""

    entries: dict[str, float]
    default_weight: float = 0.3

    def __post_init__(self):
        for label, weight in self.entries.items():
            if not (0.0 <= weight <= 1.0):
                raise ValueError(f"vulnerability weight for {label!r} must be in [0, 1], got {weight}")
        if not (0.0 <= self.default_weight <= 1.0):
            raise ValueError(f"default vulnerability weight must be in [0, 1], got {self.default_weight}")

    def lookup(self, class_label: str) -> float:
        return self.entries.get(class_label, self.default_weight)


def default_vulnerability() -> VulnerabilityTable:
    """People highest, vehicles mid-range, anything unlisted low."""
    return VulnerabilityTable(
        entries={"person": 1.0, "bicycle": 0.7, "car": 0.6, "truck": 0.7, "bus": 0.8},
        default_weight=0.3,
    )


@dataclass(frozen=True)
class RiskParams:
    """Every tunable knob of the scoring model.

    alpha_s / alpha_a weight fire confidence and relative fire size inside
    the severity squash; beta_s weights object confidence; lambda_m is the
    exposure decay length in meters; tau1..tau3 cut the [0, 1] risk range
    into tiers; d_crit_m and rho_crit gate alerts; gamma is the temporal
    smoothing coefficient; delta_d_m is the distance uncertainty absorbed
    by the worst-case exposure bound.
    """

    alpha_s: float = 2.0
    alpha_a: float = 4.0
    beta_s: float = 2.0
    lambda_m: float = 10.0
    tau1: float = 0.25
    tau2: float = 0.50
    tau3: float = 0.75
    d_crit_m: float = 5.0
    rho_crit: float = 0.5
    gamma: float = 0.6
    delta_d_m: float = 0.0
    vulnerability: VulnerabilityTable = field(default_factory=default_vulnerability)
    aggregation: Aggregation = Aggregation.WORST_CASE_MAX
    use_worst_case_exposure: bool = False

    def __post_init__(self):
        if self.alpha_s < 0 or self.alpha_a < 0 or self.beta_s < 0:
            raise ValueError("severity and confidence weights must be non-negative")
        if not self.lambda_m > 0:
            raise ValueError(f"lambda_m must be positive, got {self.lambda_m}")
        if not (0.0 < self.tau1 < self.tau2 < self.tau3 < 1.0):
            raise ValueError(
                f"tier thresholds must satisfy 0 < tau1 < tau2 < tau3 < 1, "
                f"got ({self.tau1}, {self.tau2}, {self.tau3})"
            )
        if not self.d_crit_m > 0:
            raise ValueError(f"d_crit_m must be positive, got {self.d_crit_m}")
        if not (0.0 < self.rho_crit <= 1.0):
            raise ValueError(f"rho_crit must be in (0, 1], got {self.rho_crit}")
        if not (0.0 < self.gamma < 1.0):
            raise ValueError(f"gamma must be in (0, 1), got {self.gamma}")
        if self.delta_d_m < 0:
            raise ValueError(f"delta_d_m must be non-negative, got {self.delta_d_m}")


@dataclass(frozen=True)
class PairAssessment:
    """One fire paired with one context object: distance, factors, product."""

    fire_index: int
    object_index: int
    distance_px: float
    distance_m: float
    severity: float
    vulnerability: float
    confidence_factor: float
    exposure: float
    risk: float


@dataclass(frozen=True)
class AlertEvent:
    frame_id: int
    fire_index: int
    object_index: int
    class_label: str
    distance_m: float
    risk: float
    tier: RiskTier
    smoothed: bool = False  # True when issued from the smoothed stream


@dataclass(frozen=True)
class RiskReport:
    """Full per-frame assessment: pairwise matrix, aggregates, tier, alerts."""

    frame_id: int
    pairs: list[PairAssessment]
    object_risks: list[float]
    frame_risk_max: float
    frame_risk_accumulated: float
    tier: RiskTier
    alerts: list[AlertEvent]
    kappa_used: float


def _check_finite(value: float, where: str) -> None:
    if not math.isfinite(value):
        raise NonFiniteField(f"{where} is not finite: {value!r}")


def _check_bbox(b: BBox, where: str) -> None:
    for name in ("x", "y", "w", "h"):
        _check_finite(getattr(b, name), f"{where}.{name}")
    if b.w < 0:
        raise NegativeDimension(f"{where}.w is negative: {b.w}")
    if b.h < 0:
        raise NegativeDimension(f"{where}.h is negative: {b.h}")


def _check_confidence(value: float, where: str) -> None:
    _check_finite(value, where)
    if not (0.0 <= value <= 1.0):
        raise ConfidenceOutOfRange(f"{where} must be in [0, 1], got {value}")


def validate_frame(record: FrameRecord) -> FrameRecord:
    """Check every invariant of a parsed frame and return it unchanged.

    Raises the most specific error for the first violation found, naming the
    offending field and index. Idempotent: a record that passes once passes
    again.
    """
    if record.width_px <= 0 or record.height_px <= 0:
        raise ZeroFrameArea(
            f"frame area must be positive, got {record.width_px}x{record.height_px}"
        )
    if record.frame_id < 0:
        raise ValidationError(f"frame_id must be non-negative, got {record.frame_id}")
    if record.timestamp_ms is not None and record.timestamp_ms < 0:
        raise ValidationError(f"timestamp_ms must be non-negative, got {record.timestamp_ms}")

    frame_area = record.area_px()
    for i, fire in enumerate(record.fires):
        where = f"fires[{i}]"
        _check_bbox(fire.bbox, f"{where}.bbox")
        _check_confidence(fire.confidence, f"{where}.confidence")
        if fire.mask_area_px is not None:
            _check_finite(fire.mask_area_px, f"{where}.mask_area_px")
            if fire.mask_area_px < 0:
                raise NegativeDimension(f"{where}.mask_area_px is negative: {fire.mask_area_px}")
            if fire.mask_area_px > frame_area:
                raise AreaExceedsFrame(
                    f"{where}.mask_area_px ({fire.mask_area_px}) exceeds frame area ({frame_area})"
                )
    for j, obj in enumerate(record.objects):
        where = f"objects[{j}]"
        _check_bbox(obj.bbox, f"{where}.bbox")
        _check_confidence(obj.confidence, f"{where}.confidence")
        if not obj.class_label:
            raise ValidationError(f"{where}.class_label must be non-empty")
    return record
