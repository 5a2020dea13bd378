"""Shared test helpers: report comparison and frame builders."""

import math

from firerisk.core import (
    BBox,
    ContextObject,
    FireInstance,
    FrameRecord,
    RiskReport,
)

TOL = 1e-12


def close(a: float, b: float, tol: float = TOL) -> bool:
    return abs(a - b) <= tol


def compare_reports(a: RiskReport, b: RiskReport, tol: float = TOL) -> None:
    """Assert elementwise agreement of two reports within tol."""
    assert a.frame_id == b.frame_id
    assert close(a.kappa_used, b.kappa_used, tol)
    assert len(a.pairs) == len(b.pairs)
    for pa, pb in zip(a.pairs, b.pairs):
        assert (pa.fire_index, pa.object_index) == (pb.fire_index, pb.object_index)
        for fld in (
            "distance_px",
            "distance_m",
            "severity",
            "vulnerability",
            "confidence_factor",
            "exposure",
            "risk",
        ):
            va, vb = getattr(pa, fld), getattr(pb, fld)
            assert close(va, vb, tol), f"pair ({pa.fire_index},{pa.object_index}).{fld}: {va} vs {vb}"
    assert len(a.object_risks) == len(b.object_risks)
    for j, (ra, rb) in enumerate(zip(a.object_risks, b.object_risks)):
        assert close(ra, rb, tol), f"object_risks[{j}]: {ra} vs {rb}"
    assert close(a.frame_risk_max, b.frame_risk_max, tol)
    assert close(a.frame_risk_accumulated, b.frame_risk_accumulated, tol)
    assert a.tier == b.tier
    assert len(a.alerts) == len(b.alerts)
    for aa, ab in zip(a.alerts, b.alerts):
        assert (aa.fire_index, aa.object_index) == (ab.fire_index, ab.object_index)
        assert aa.class_label == ab.class_label
        assert aa.tier == ab.tier
        assert aa.smoothed == ab.smoothed
        assert close(aa.distance_m, ab.distance_m, tol)
        assert close(aa.risk, ab.risk, tol)


def box_at_centroid(cx: float, cy: float, w: float = 40.0, h: float = 40.0) -> BBox:
    return BBox(cx - w / 2.0, cy - h / 2.0, w, h)


def simple_frame(
    fire_centroid=(100.0, 100.0),
    object_centroid=(400.0, 500.0),
    fire_confidence=0.9,
    object_confidence=0.9,
    class_label="person",
    frame_id=0,
    width=1000,
    height=1000,
    mask_area=None,
) -> FrameRecord:
    """One fire, one object, centroids placed exactly where asked."""
    return FrameRecord(
        frame_id=frame_id,
        width_px=width,
        height_px=height,
        fires=[
            FireInstance(
                bbox=box_at_centroid(*fire_centroid),
                confidence=fire_confidence,
                mask_area_px=mask_area,
            )
        ],
        objects=[
            ContextObject(
                bbox=box_at_centroid(*object_centroid),
                class_label=class_label,
                confidence=object_confidence,
            )
        ],
    )


def brute_force_bbox_gap(a: BBox, b: BBox, steps: int = 200) -> float:
    """Independent nearest-distance oracle: sample both box perimeters."""

    def perimeter(box: BBox):
        pts = []
        for k in range(steps + 1):
            t = k / steps
            pts.append((box.x + t * box.w, box.y))
            pts.append((box.x + t * box.w, box.y + box.h))
            pts.append((box.x, box.y + t * box.h))
            pts.append((box.x + box.w, box.y + t * box.h))
        return pts

    # Overlapping interiors mean zero separation; perimeter sampling alone
    # would miss full containment.
    if (a.x <= b.x + b.w and b.x <= a.x + a.w) and (a.y <= b.y + b.h and b.y <= a.y + a.h):
        return 0.0
    return min(
        math.hypot(px - qx, py - qy) for px, py in perimeter(a) for qx, qy in perimeter(b)
    )
