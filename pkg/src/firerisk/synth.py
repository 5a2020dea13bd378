"""Synthetic scenarios with known geometry, plus a reference scorer.

generate() realizes purely kinematic fire/object trajectories as frame
records for test corpora and the synth CLI. reference_assess() is a
deliberately naive, self-contained re-derivation of the whole scoring
model: double loops and direct formula transcription, sharing only the
core types with the production engine so the two can be compared as
independent implementations.
"""

import json
import math
import random
from dataclasses import dataclass, field

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
    default_vulnerability,
)
from .errors import MalformedJson, SchemaViolation, SpecLengthMismatch


@dataclass(frozen=True)
class FireTrack:
    """Per-frame bbox, confidence, and optional mask area for one fire."""

    bboxes: list[BBox]
    confidences: list[float]
    mask_areas: list[float | None] | None = None


@dataclass(frozen=True)
class ObjectTrack:
    bboxes: list[BBox]
    class_label: str
    confidences: list[float]


@dataclass(frozen=True)
class ScenarioSpec:
    width_px: int
    height_px: int
    kappa: float
    frame_count: int
    fires: list[FireTrack] = field(default_factory=list)
    objects: list[ObjectTrack] = field(default_factory=list)
    rng_seed: int = 0


def linear_track(start: BBox, velocity: tuple[float, float], frame_count: int) -> list[BBox]:
    """Boxes moving at constant pixel velocity, size unchanged."""
    vx, vy = velocity
    return [BBox(start.x + vx * t, start.y + vy * t, start.w, start.h) for t in range(frame_count)]


def _check_len(n: int, expected: int, what: str) -> None:
    if n != expected:
        raise SpecLengthMismatch(f"{what} has {n} entries, expected frame_count={expected}")


def generate(spec: ScenarioSpec) -> list[FrameRecord]:
    """Realize a scenario as an ordered, deterministic frame sequence."""
    for k, track in enumerate(spec.fires):
        _check_len(len(track.bboxes), spec.frame_count, f"fires[{k}].bboxes")
        _check_len(len(track.confidences), spec.frame_count, f"fires[{k}].confidences")
        if track.mask_areas is not None:
            _check_len(len(track.mask_areas), spec.frame_count, f"fires[{k}].mask_areas")
    for k, track in enumerate(spec.objects):
        _check_len(len(track.bboxes), spec.frame_count, f"objects[{k}].bboxes")
        _check_len(len(track.confidences), spec.frame_count, f"objects[{k}].confidences")

    scale = CalibrationScale(kappa=spec.kappa, source=CalibrationSource.MANUAL)
    frames = []
    for t in range(spec.frame_count):
        fires = [
            FireInstance(
                bbox=track.bboxes[t],
                confidence=track.confidences[t],
                mask_area_px=None if track.mask_areas is None else track.mask_areas[t],
            )
            for track in spec.fires
        ]
        objects = [
            ContextObject(
                bbox=track.bboxes[t],
                class_label=track.class_label,
                confidence=track.confidences[t],
            )
            for track in spec.objects
        ]
        frames.append(
            FrameRecord(
                frame_id=t,
                width_px=spec.width_px,
                height_px=spec.height_px,
                fires=fires,
                objects=objects,
                scale_override=scale,
            )
        )
    return frames


def random_frame(
    rng: random.Random,
    frame_id: int,
    width_px: int = 640,
    height_px: int = 640,
    max_fires: int = 5,
    max_objects: int = 8,
    scale_override_rate: float = 0.0,
) -> FrameRecord:
    """A random but valid frame: boxes inside the frame, confidences in [0, 1].

    Object classes are drawn from the default vulnerability table plus one
    unlisted class so the fallback weight is exercised.
    """
    classes = sorted(default_vulnerability().entries) + ["traffic light"]

    def random_bbox() -> BBox:
        x = rng.uniform(0, width_px)
        y = rng.uniform(0, height_px)
        return BBox(x, y, rng.uniform(0, width_px - x), rng.uniform(0, height_px - y))

    fires = []
    for _ in range(rng.randint(0, max_fires)):
        bbox = random_bbox()
        mask = rng.uniform(0, bbox.area()) if rng.random() < 0.5 else None
        fires.append(FireInstance(bbox=bbox, confidence=rng.random(), mask_area_px=mask))
    objects = [
        ContextObject(bbox=random_bbox(), class_label=rng.choice(classes), confidence=rng.random())
        for _ in range(rng.randint(0, max_objects))
    ]
    scale = None
    if rng.random() < scale_override_rate:
        scale = CalibrationScale(kappa=rng.uniform(1.0, 200.0), source=CalibrationSource.MANUAL)
    return FrameRecord(
        frame_id=frame_id,
        width_px=width_px,
        height_px=height_px,
        fires=fires,
        objects=objects,
        scale_override=scale,
    )


def reference_assess(
    frame: FrameRecord,
    scale: CalibrationScale,
    params: RiskParams,
    metric: str = "centroid",
) -> RiskReport:
    """Straightforward re-derivation of the per-frame assessment.

    Written for clarity over speed and kept free of any production scoring
    code on purpose; agreement with assess_frame is what the oracle tests
    check.
    """
    frame_area = float(frame.width_px) * float(frame.height_px)

    pairs = []
    for i, fire in enumerate(frame.fires):
        fire_cx = fire.bbox.x + fire.bbox.w / 2.0
        fire_cy = fire.bbox.y + fire.bbox.h / 2.0
        area = fire.mask_area_px
        if area is None:
            area = fire.bbox.w * fire.bbox.h
        size_term = area / frame_area
        sev = 1.0 / (1.0 + math.exp(-(params.alpha_s * fire.confidence + params.alpha_a * size_term)))

        for j, obj in enumerate(frame.objects):
            if metric == "bbox_gap":
                gap_x = max(0.0, max(fire.bbox.x, obj.bbox.x)
                            - min(fire.bbox.x + fire.bbox.w, obj.bbox.x + obj.bbox.w))
                gap_y = max(0.0, max(fire.bbox.y, obj.bbox.y)
                            - min(fire.bbox.y + fire.bbox.h, obj.bbox.y + obj.bbox.h))
                d_px = math.sqrt(gap_x * gap_x + gap_y * gap_y)
            else:
                obj_cx = obj.bbox.x + obj.bbox.w / 2.0
                obj_cy = obj.bbox.y + obj.bbox.h / 2.0
                d_px = math.sqrt((fire_cx - obj_cx) ** 2 + (fire_cy - obj_cy) ** 2)
            d_m = d_px / scale.kappa

            if obj.class_label in params.vulnerability.entries:
                vul = params.vulnerability.entries[obj.class_label]
            else:
                vul = params.vulnerability.default_weight
            conf = 1.0 / (1.0 + math.exp(-params.beta_s * obj.confidence))
            if params.use_worst_case_exposure:
                exp_term = math.exp(-max(d_m - params.delta_d_m, 0.0) / params.lambda_m)
            else:
                exp_term = math.exp(-d_m / params.lambda_m)

            pairs.append(
                PairAssessment(
                    fire_index=i,
                    object_index=j,
                    distance_px=d_px,
                    distance_m=d_m,
                    severity=sev,
                    vulnerability=vul,
                    confidence_factor=conf,
                    exposure=exp_term,
                    risk=sev * vul * conf * exp_term,
                )
            )

    object_risks = []
    for j in range(len(frame.objects)):
        best = 0.0
        for pair in pairs:
            if pair.object_index == j and pair.risk > best:
                best = pair.risk
        object_risks.append(best)

    risk_max = 0.0
    for r in object_risks:
        if r > risk_max:
            risk_max = r
    survive = 1.0
    for r in object_risks:
        survive *= 1.0 - r
    # Same one-ulp guard as the engine: the accumulated form never reports
    # below the single worst threat.
    risk_acc = max(1.0 - survive, risk_max)

    selected = risk_acc if params.aggregation is Aggregation.BOUNDED_SUM else risk_max

    def tier_of(r: float) -> RiskTier:
        if r < params.tau1:
            return RiskTier.Low
        if r < params.tau2:
            return RiskTier.Medium
        if r < params.tau3:
            return RiskTier.High
        return RiskTier.Critical

    hits = [p for p in pairs if p.distance_m <= params.d_crit_m and p.risk >= params.rho_crit]
    hits.sort(key=lambda p: (-p.risk, p.fire_index, p.object_index))
    alerts = [
        AlertEvent(
            frame_id=frame.frame_id,
            fire_index=p.fire_index,
            object_index=p.object_index,
            class_label=frame.objects[p.object_index].class_label,
            distance_m=p.distance_m,
            risk=p.risk,
            tier=tier_of(p.risk),
            smoothed=False,
        )
        for p in hits
    ]

    return RiskReport(
        frame_id=frame.frame_id,
        pairs=pairs,
        object_risks=object_risks,
        frame_risk_max=risk_max,
        frame_risk_accumulated=risk_acc,
        tier=tier_of(selected),
        alerts=alerts,
        kappa_used=scale.kappa,
    )


def _bbox_from_doc(value, where: str) -> BBox:
    if not isinstance(value, list) or len(value) != 4:
        raise SchemaViolation(f"{where} must be a [x, y, w, h] array")
    return BBox(*(float(v) for v in value))


def _track_boxes(doc: dict, frame_count: int, where: str) -> list[BBox]:
    if "bboxes" in doc:
        return [_bbox_from_doc(b, f"{where}.bboxes[{t}]") for t, b in enumerate(doc["bboxes"])]
    if "start" in doc:
        start = _bbox_from_doc(doc["start"], f"{where}.start")
        velocity = doc.get("velocity", [0, 0])
        if not isinstance(velocity, list) or len(velocity) != 2:
            raise SchemaViolation(f"{where}.velocity must be a [vx, vy] array")
        return linear_track(start, (float(velocity[0]), float(velocity[1])), frame_count)
    raise SchemaViolation(f"{where} needs either bboxes or start/velocity")


def _track_series(doc: dict, key: str, frame_count: int, where: str) -> list:
    plural = key + "s"
    if plural in doc:
        series = doc[plural]
        if not isinstance(series, list):
            raise SchemaViolation(f"{where}.{plural} must be an array")
        return list(series)
    return [doc.get(key)] * frame_count


def load_scenario(path: str) -> ScenarioSpec:
    """Read a scenario spec file (see README for the schema)."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"scenario {path}: malformed JSON at byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation("scenario must be a JSON object")
    for key in ("width_px", "height_px", "kappa", "frame_count"):
        if key not in doc:
            raise SchemaViolation(f"scenario is missing required field {key!r}")

    frame_count = doc["frame_count"]
    fires = []
    for k, item in enumerate(doc.get("fires", [])):
        where = f"fires[{k}]"
        confidences = [
            0.9 if c is None else float(c)
            for c in _track_series(item, "confidence", frame_count, where)
        ]
        masks = _track_series(item, "mask_area_px", frame_count, where)
        fires.append(
            FireTrack(
                bboxes=_track_boxes(item, frame_count, where),
                confidences=confidences,
                mask_areas=None if all(m is None for m in masks)
                else [None if m is None else float(m) for m in masks],
            )
        )
    objects = []
    for k, item in enumerate(doc.get("objects", [])):
        where = f"objects[{k}]"
        label = item.get("class")
        if not isinstance(label, str) or not label:
            raise SchemaViolation(f"{where}.class must be a non-empty string")
        objects.append(
            ObjectTrack(
                bboxes=_track_boxes(item, frame_count, where),
                class_label=label,
                confidences=[
                    0.9 if c is None else float(c)
                    for c in _track_series(item, "confidence", frame_count, where)
                ],
            )
        )

    return ScenarioSpec(
        width_px=int(doc["width_px"]),
        height_px=int(doc["height_px"]),
        kappa=float(doc["kappa"]),
        frame_count=int(frame_count),
        fires=fires,
        objects=objects,
        rng_seed=int(doc.get("rng_seed", 0)),
    )
