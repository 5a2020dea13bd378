"""Centroids, pixel distances, and pixel-to-meter conversion."""

import math
from dataclasses import dataclass

from .core import BBox, CalibrationScale, CalibrationSource, FrameRecord
from .errors import AreaExceedsFrame, NonPositiveReference


@dataclass(frozen=True)
class PointPx:
    x: float
    y: float


def centroid(b: BBox) -> PointPx:
    """Geometric center of a box: (x + w/2, y + h/2)."""
    return PointPx(b.x + b.w / 2.0, b.y + b.h / 2.0)


def pixel_distance(p: PointPx, q: PointPx) -> float:
    """Euclidean distance between two pixel points."""
    return math.hypot(p.x - q.x, p.y - q.y)


def derive_scale(ref_width_px: float, ref_width_m: float) -> CalibrationScale:
    """Pixels-per-meter from a reference object of known physical width.

    Args:
        ref_width_px: measured pixel width of the reference object.
        ref_width_m: its physical width in meters.

    Returns:
        CalibrationScale with kappa = ref_width_px / ref_width_m.
    """
    if not (math.isfinite(ref_width_px) and ref_width_px > 0):
        raise NonPositiveReference(f"reference pixel width must be positive, got {ref_width_px!r}")
    if not (math.isfinite(ref_width_m) and ref_width_m > 0):
        raise NonPositiveReference(f"reference width in meters must be positive, got {ref_width_m!r}")
    return CalibrationScale(kappa=ref_width_px / ref_width_m, source=CalibrationSource.REFERENCE_OBJECT)


def to_meters(d_px: float, scale: CalibrationScale) -> float:
    """Convert a pixel distance to meters using the scale's kappa."""
    return d_px / scale.kappa


def normalized_area(area_px: float, frame: FrameRecord) -> float:
    """Area as a fraction of the total frame area, in [0, 1]."""
    frame_area = frame.area_px()
    if area_px > frame_area:
        raise AreaExceedsFrame(f"area {area_px} px exceeds frame area {frame_area} px")
    return area_px / frame_area


def bbox_gap_distance(a: BBox, b: BBox) -> float:
    """Minimal Euclidean distance between two axis-aligned boxes.

    Zero when the boxes overlap or touch. Optional alternative to the
    centroid metric for callers that want nearest-edge separation.
    """
    dx = max(0.0, a.x - (b.x + b.w), b.x - (a.x + a.w))
    dy = max(0.0, a.y - (b.y + b.h), b.y - (a.y + a.h))
    return math.hypot(dx, dy)
