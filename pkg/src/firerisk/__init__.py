"""Proximity-aware fire hazard risk scoring over detection streams.

Converts per-frame fire and context-object detections into metric
distances, pairwise risk scores, frame-level aggregates, alert tiers, and
temporally smoothed alert streams, with SVG overlay output.
"""

from .config import EngineConfig, OverlayStyle, ProximityMetric
from .core import (
    Aggregation,
    AlertEvent,
    BBox,
    CalibrationScale,
    CalibrationSource,
    ContextObject,
    FireInstance,
    FrameRecord,
    PairAssessment,
    RiskParams,
    RiskReport,
    RiskTier,
    VulnerabilityTable,
    default_vulnerability,
    validate_frame,
)
from .geometry import bbox_gap_distance, centroid, derive_scale, pixel_distance, to_meters
from .overlay import render_overlay
from .risk import assess_frame, evaluate_alerts, exposure, frame_risk, pairwise_risk, tier
from .temporal import StreamFrameResult, StreamState, smooth_update, stream_assess
from .wire import (
    emit_frame_line,
    emit_report_line,
    parse_frame_line,
    parse_report_line,
    resolve_scale,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregation",
    "AlertEvent",
    "BBox",
    "CalibrationScale",
    "CalibrationSource",
    "ContextObject",
    "EngineConfig",
    "FireInstance",
    "FrameRecord",
    "OverlayStyle",
    "PairAssessment",
    "ProximityMetric",
    "RiskParams",
    "RiskReport",
    "RiskTier",
    "StreamFrameResult",
    "StreamState",
    "VulnerabilityTable",
    "assess_frame",
    "bbox_gap_distance",
    "centroid",
    "default_vulnerability",
    "derive_scale",
    "emit_frame_line",
    "emit_report_line",
    "evaluate_alerts",
    "exposure",
    "frame_risk",
    "pairwise_risk",
    "parse_frame_line",
    "parse_report_line",
    "pixel_distance",
    "render_overlay",
    "resolve_scale",
    "smooth_update",
    "stream_assess",
    "tier",
    "to_meters",
    "validate_frame",
]
