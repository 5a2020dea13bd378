"""Scoring equations: severity, exposure decay, pairwise risk, aggregation.

Everything here is a pure function of its arguments; frames can be assessed
in parallel. Distances default to centroid-to-centroid; the nearest-edge
gap metric is an opt-in alternative.
"""

import math
from typing import Iterable

from . import geometry
from .core import (
    Aggregation,
    AlertEvent,
    CalibrationScale,
    ContextObject,
    FireInstance,
    FrameRecord,
    PairAssessment,
    RiskParams,
    RiskReport,
    RiskTier,
    VulnerabilityTable,
)
from .errors import IndexOutOfRange

CENTROID_METRIC = "centroid"
BBOX_GAP_METRIC = "bbox_gap"


def logistic(x: float) -> float:
    """Standard logistic squash 1 / (1 + exp(-x)), monotone into (0, 1)."""
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    # Large negative inputs would overflow exp(-x); flip the symmetric form.
    z = math.exp(x)
    return z / (1.0 + z)


def severity(fire: FireInstance, frame: FrameRecord, params: RiskParams) -> float:
    """Fire severity from confidence and relative size, squashed into (0, 1).

    Uses the segmentation mask area when present, the bbox area otherwise.
    """
    area = fire.mask_area_px if fire.mask_area_px is not None else fire.bbox.area()
    rel_area = geometry.normalized_area(area, frame)
    return logistic(params.alpha_s * fire.confidence + params.alpha_a * rel_area)


def confidence_factor(obj: ContextObject, params: RiskParams) -> float:
    """Detection reliability of a context object, squashed into (0, 1)."""
    return logistic(params.beta_s * obj.confidence)


def vulnerability(class_label: str, table: VulnerabilityTable) -> float:
    """Consequence weight for a class label; unlisted classes get the default."""
    return table.lookup(class_label)


def exposure(d_m: float, params: RiskParams) -> float:
    """Distance-to-threat decay exp(-d / lambda), 1 at contact."""
    return math.exp(-d_m / params.lambda_m)


def exposure_worst_case(d_m: float, params: RiskParams) -> float:
    """Exposure at the conservative distance max(d - delta_d, 0).

    Never below plain exposure(d); equal to it when delta_d is zero.
    """
    return math.exp(-max(d_m - params.delta_d_m, 0.0) / params.lambda_m)


def _pair_distance_px(fire: FireInstance, obj: ContextObject, metric: str) -> float:
    if metric == BBOX_GAP_METRIC:
        return geometry.bbox_gap_distance(fire.bbox, obj.bbox)
    return geometry.pixel_distance(geometry.centroid(fire.bbox), geometry.centroid(obj.bbox))


def pairwise_risk(
    fire_index: int,
    object_index: int,
    frame: FrameRecord,
    scale: CalibrationScale,
    params: RiskParams,
    metric: str = CENTROID_METRIC,
) -> PairAssessment:
    """Assess one fire-object pair: distance plus the four risk factors.

    The risk is the plain product severity * vulnerability * confidence *
    exposure, so any zero factor zeroes the pair.
    """
    if not 0 <= fire_index < len(frame.fires):
        raise IndexOutOfRange(f"fire_index {fire_index} out of range for {len(frame.fires)} fires")
    if not 0 <= object_index < len(frame.objects):
        raise IndexOutOfRange(
            f"object_index {object_index} out of range for {len(frame.objects)} objects"
        )
    fire = frame.fires[fire_index]
    obj = frame.objects[object_index]

    d_px = _pair_distance_px(fire, obj, metric)
    d_m = geometry.to_meters(d_px, scale)
    h = severity(fire, frame, params)
    v = vulnerability(obj.class_label, params.vulnerability)
    c = confidence_factor(obj, params)
    e = exposure_worst_case(d_m, params) if params.use_worst_case_exposure else exposure(d_m, params)
    return PairAssessment(
        fire_index=fire_index,
        object_index=object_index,
        distance_px=d_px,
        distance_m=d_m,
        severity=h,
        vulnerability=v,
        confidence_factor=c,
        exposure=e,
        risk=h * v * c * e,
    )


def object_risk(pair_risks: Iterable[float]) -> float:
    """Worst pairwise risk against one object; 0 when there are no fires."""
    return max(pair_risks, default=0.0)


def max_aggregate(object_risks: Iterable[float]) -> float:
    """Single worst threat in the frame."""
    return max(object_risks, default=0.0)


def bounded_sum_aggregate(object_risks: Iterable[float]) -> float:
    """Accumulating aggregate 1 - prod(1 - r), so concurrent threats add up.

    Guarded against the running max: mathematically the product form always
    dominates it, but rounding of 1 - (1 - r) can land one ulp below r.
    """
    survive = 1.0
    worst = 0.0
    for r in object_risks:
        survive *= 1.0 - r
        worst = max(worst, r)
    return max(1.0 - survive, worst)


def frame_risk(object_risks: list[float], params: RiskParams) -> float:
    """Frame-level risk under the configured aggregation rule."""
    if params.aggregation is Aggregation.BOUNDED_SUM:
        return bounded_sum_aggregate(object_risks)
    return max_aggregate(object_risks)


def tier(r: float, params: RiskParams) -> RiskTier:
    """Tier thresholds with inclusive lower bounds."""
    if r < params.tau1:
        return RiskTier.Low
    if r < params.tau2:
        return RiskTier.Medium
    if r < params.tau3:
        return RiskTier.High
    return RiskTier.Critical


def evaluate_alerts(
    pairs: list[PairAssessment], frame: FrameRecord, params: RiskParams
) -> list[AlertEvent]:
    """Alert for every pair inside the safety radius at or above the risk floor.

    Ordered by descending risk, ties broken by (fire_index, object_index).
    """
    hits = [
        p for p in pairs if p.distance_m <= params.d_crit_m and p.risk >= params.rho_crit
    ]
    hits.sort(key=lambda p: (-p.risk, p.fire_index, p.object_index))
    return [
        AlertEvent(
            frame_id=frame.frame_id,
            fire_index=p.fire_index,
            object_index=p.object_index,
            class_label=frame.objects[p.object_index].class_label,
            distance_m=p.distance_m,
            risk=p.risk,
            tier=tier(p.risk, params),
            smoothed=False,
        )
        for p in hits
    ]


def assess_frame(
    frame: FrameRecord,
    scale: CalibrationScale,
    params: RiskParams,
    metric: str = CENTROID_METRIC,
) -> RiskReport:
    """Full per-frame assessment over the fire x object pair matrix.

    The report carries both aggregations; the tier and the alerts use the
    one selected in params.
    """
    pairs = [
        pairwise_risk(i, j, frame, scale, params, metric)
        for i in range(len(frame.fires))
        for j in range(len(frame.objects))
    ]
    object_risks = [
        object_risk(p.risk for p in pairs if p.object_index == j)
        for j in range(len(frame.objects))
    ]
    risk_max = max_aggregate(object_risks)
    risk_acc = bounded_sum_aggregate(object_risks)
    selected = risk_acc if params.aggregation is Aggregation.BOUNDED_SUM else risk_max
    return RiskReport(
        frame_id=frame.frame_id,
        pairs=pairs,
        object_risks=object_risks,
        frame_risk_max=risk_max,
        frame_risk_accumulated=risk_acc,
        tier=tier(selected, params),
        alerts=evaluate_alerts(pairs, frame, params),
        kappa_used=scale.kappa,
    )
