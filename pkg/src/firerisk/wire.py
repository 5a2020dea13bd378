"""Line-delimited wire formats for frames and reports.

One JSON object per line, UTF-8, LF terminators. Numbers are emitted with
at most 12 significant digits in their shortest round-trip form, so
parse(emit(x)) reproduces every numeric field to 12 significant digits.
Unknown fields on incoming frame lines are ignored; emitted lines contain
only the documented keys.
"""

import json
import math
from dataclasses import dataclass, field

from .config import EngineConfig
from .core import (
    AlertEvent,
    BBox,
    CalibrationScale,
    CalibrationSource,
    ContextObject,
    FireInstance,
    FrameRecord,
    PairAssessment,
    RiskReport,
    RiskTier,
    validate_frame,
)
from .errors import MalformedJson, SchemaViolation, ScaleUnresolved, ValidationError


def round12(x: float) -> float:
    """Round to at most 12 significant digits."""
    return float(format(float(x), ".12g"))


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise SchemaViolation(f"{where} is missing required field {key!r}")
    return doc[key]


def _as_uint(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise SchemaViolation(f"{where} must be a non-negative integer, got {value!r}")
    return value


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(f"{where} must be a number, got {value!r}")
    return float(value)


def _as_bbox(value, where: str) -> BBox:
    if not isinstance(value, list) or len(value) != 4:
        raise SchemaViolation(f"{where} must be a [x, y, w, h] array, got {value!r}")
    x, y, w, h = (_as_number(v, f"{where}[{k}]") for k, v in enumerate(value))
    return BBox(x, y, w, h)


def parse_frame_line(line: str) -> FrameRecord:
    """Parse and validate one frame line."""
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"malformed JSON at byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation(f"frame line must be a JSON object, got {type(doc).__name__}")

    frame_id = _as_uint(_require(doc, "frame_id", "frame"), "frame_id")
    width = _as_uint(_require(doc, "width_px", "frame"), "width_px")
    height = _as_uint(_require(doc, "height_px", "frame"), "height_px")
    timestamp = doc.get("timestamp_ms")
    if timestamp is not None:
        timestamp = _as_uint(timestamp, "timestamp_ms")

    scale = None
    if doc.get("scale_px_per_m") is not None:
        kappa = _as_number(doc["scale_px_per_m"], "scale_px_per_m")
        if not (math.isfinite(kappa) and kappa > 0):
            raise ValidationError(f"scale_px_per_m must be positive and finite, got {kappa}")
        scale = CalibrationScale(kappa=kappa, source=CalibrationSource.MANUAL)

    fires_doc = _require(doc, "fires", "frame")
    objects_doc = _require(doc, "objects", "frame")
    if not isinstance(fires_doc, list):
        raise SchemaViolation("fires must be an array")
    if not isinstance(objects_doc, list):
        raise SchemaViolation("objects must be an array")

    fires = []
    for i, item in enumerate(fires_doc):
        where = f"fires[{i}]"
        if not isinstance(item, dict):
            raise SchemaViolation(f"{where} must be an object")
        mask = item.get("mask_area_px")
        fires.append(
            FireInstance(
                bbox=_as_bbox(_require(item, "bbox", where), f"{where}.bbox"),
                confidence=_as_number(_require(item, "confidence", where), f"{where}.confidence"),
                mask_area_px=None if mask is None else _as_number(mask, f"{where}.mask_area_px"),
            )
        )
    objects = []
    for j, item in enumerate(objects_doc):
        where = f"objects[{j}]"
        if not isinstance(item, dict):
            raise SchemaViolation(f"{where} must be an object")
        label = _require(item, "class", where)
        if not isinstance(label, str):
            raise SchemaViolation(f"{where}.class must be a string, got {label!r}")
        objects.append(
            ContextObject(
                bbox=_as_bbox(_require(item, "bbox", where), f"{where}.bbox"),
                class_label=label,
                confidence=_as_number(_require(item, "confidence", where), f"{where}.confidence"),
            )
        )

    return validate_frame(
        FrameRecord(
            frame_id=frame_id,
            width_px=width,
            height_px=height,
            fires=fires,
            objects=objects,
            timestamp_ms=timestamp,
            scale_override=scale,
        )
    )


def emit_frame_line(record: FrameRecord) -> str:
    """Serialize a frame to one wire line (no trailing newline)."""
    doc: dict = {"frame_id": record.frame_id}
    if record.timestamp_ms is not None:
        doc["timestamp_ms"] = record.timestamp_ms
    doc["width_px"] = record.width_px
    doc["height_px"] = record.height_px
    if record.scale_override is not None:
        doc["scale_px_per_m"] = round12(record.scale_override.kappa)
    doc["fires"] = [
        {
            "bbox": [round12(f.bbox.x), round12(f.bbox.y), round12(f.bbox.w), round12(f.bbox.h)],
            "confidence": round12(f.confidence),
            **({} if f.mask_area_px is None else {"mask_area_px": round12(f.mask_area_px)}),
        }
        for f in record.fires
    ]
    doc["objects"] = [
        {
            "bbox": [round12(o.bbox.x), round12(o.bbox.y), round12(o.bbox.w), round12(o.bbox.h)],
            "class": o.class_label,
            "confidence": round12(o.confidence),
        }
        for o in record.objects
    ]
    return _dumps(doc)


def _alert_doc(a: AlertEvent) -> dict:
    return {
        "frame_id": a.frame_id,
        "fire_index": a.fire_index,
        "object_index": a.object_index,
        "class": a.class_label,
        "distance_m": round12(a.distance_m),
        "risk": round12(a.risk),
        "tier": a.tier.name,
        "smoothed": a.smoothed,
    }


def _parse_alert(item: dict, where: str) -> AlertEvent:
    if not isinstance(item, dict):
        raise SchemaViolation(f"{where} must be an object")
    label = _require(item, "class", where)
    if not isinstance(label, str):
        raise SchemaViolation(f"{where}.class must be a string")
    return AlertEvent(
        frame_id=_as_uint(_require(item, "frame_id", where), f"{where}.frame_id"),
        fire_index=_as_uint(_require(item, "fire_index", where), f"{where}.fire_index"),
        object_index=_as_uint(_require(item, "object_index", where), f"{where}.object_index"),
        class_label=label,
        distance_m=_as_number(_require(item, "distance_m", where), f"{where}.distance_m"),
        risk=_as_number(_require(item, "risk", where), f"{where}.risk"),
        tier=_parse_tier(_require(item, "tier", where), f"{where}.tier"),
        smoothed=bool(item.get("smoothed", False)),
    )


def _parse_tier(value, where: str) -> RiskTier:
    if not isinstance(value, str) or value not in RiskTier.__members__:
        raise SchemaViolation(f"{where} must be one of {list(RiskTier.__members__)}, got {value!r}")
    return RiskTier[value]


def emit_report_line(
    report: RiskReport,
    smoothed_risk: float | None = None,
    smoothed_tier: RiskTier | None = None,
    stream_alerts: list[AlertEvent] = (),
) -> str:
    """Serialize a report to one wire line.

    The alerts array holds the instantaneous alerts followed by any
    stream-level (smoothed) alerts, each flagged by its "smoothed" field.
    """
    doc: dict = {
        "frame_id": report.frame_id,
        "kappa_used": round12(report.kappa_used),
        "pairs": [
            {
                "fire_index": p.fire_index,
                "object_index": p.object_index,
                "distance_px": round12(p.distance_px),
                "distance_m": round12(p.distance_m),
                "severity": round12(p.severity),
                "vulnerability": round12(p.vulnerability),
                "confidence_factor": round12(p.confidence_factor),
                "exposure": round12(p.exposure),
                "risk": round12(p.risk),
            }
            for p in report.pairs
        ],
        "object_risks": [round12(r) for r in report.object_risks],
        "frame_risk_max": round12(report.frame_risk_max),
        "frame_risk_accumulated": round12(report.frame_risk_accumulated),
        "tier": report.tier.name,
    }
    if smoothed_risk is not None:
        doc["smoothed_risk"] = round12(smoothed_risk)
    if smoothed_tier is not None:
        doc["smoothed_tier"] = smoothed_tier.name
    doc["alerts"] = [_alert_doc(a) for a in report.alerts] + [_alert_doc(a) for a in stream_alerts]
    return _dumps(doc)


def emit_alert_line(alert: AlertEvent) -> str:
    """Serialize a single alert to one wire line."""
    return _dumps(_alert_doc(alert))


@dataclass(frozen=True)
class ReportLine:
    """A parsed report line: the instantaneous report plus smoothed extras."""

    report: RiskReport
    smoothed_risk: float | None = None
    smoothed_tier: RiskTier | None = None
    stream_alerts: list[AlertEvent] = field(default_factory=list)


def parse_report_line(line: str) -> ReportLine:
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"malformed JSON at byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation(f"report line must be a JSON object, got {type(doc).__name__}")

    pairs = []
    pairs_doc = _require(doc, "pairs", "report")
    if not isinstance(pairs_doc, list):
        raise SchemaViolation("pairs must be an array")
    for k, item in enumerate(pairs_doc):
        where = f"pairs[{k}]"
        if not isinstance(item, dict):
            raise SchemaViolation(f"{where} must be an object")
        pairs.append(
            PairAssessment(
                fire_index=_as_uint(_require(item, "fire_index", where), f"{where}.fire_index"),
                object_index=_as_uint(_require(item, "object_index", where), f"{where}.object_index"),
                distance_px=_as_number(_require(item, "distance_px", where), f"{where}.distance_px"),
                distance_m=_as_number(_require(item, "distance_m", where), f"{where}.distance_m"),
                severity=_as_number(_require(item, "severity", where), f"{where}.severity"),
                vulnerability=_as_number(_require(item, "vulnerability", where), f"{where}.vulnerability"),
                confidence_factor=_as_number(
                    _require(item, "confidence_factor", where), f"{where}.confidence_factor"
                ),
                exposure=_as_number(_require(item, "exposure", where), f"{where}.exposure"),
                risk=_as_number(_require(item, "risk", where), f"{where}.risk"),
            )
        )

    alerts_doc = doc.get("alerts", [])
    if not isinstance(alerts_doc, list):
        raise SchemaViolation("alerts must be an array")
    alerts = [_parse_alert(item, f"alerts[{k}]") for k, item in enumerate(alerts_doc)]

    object_risks_doc = _require(doc, "object_risks", "report")
    if not isinstance(object_risks_doc, list):
        raise SchemaViolation("object_risks must be an array")

    report = RiskReport(
        frame_id=_as_uint(_require(doc, "frame_id", "report"), "frame_id"),
        pairs=pairs,
        object_risks=[_as_number(r, f"object_risks[{k}]") for k, r in enumerate(object_risks_doc)],
        frame_risk_max=_as_number(_require(doc, "frame_risk_max", "report"), "frame_risk_max"),
        frame_risk_accumulated=_as_number(
            _require(doc, "frame_risk_accumulated", "report"), "frame_risk_accumulated"
        ),
        tier=_parse_tier(_require(doc, "tier", "report"), "tier"),
        alerts=[a for a in alerts if not a.smoothed],
        kappa_used=_as_number(_require(doc, "kappa_used", "report"), "kappa_used"),
    )
    smoothed_tier = None
    if "smoothed_tier" in doc:
        smoothed_tier = _parse_tier(doc["smoothed_tier"], "smoothed_tier")
    smoothed_risk = None
    if "smoothed_risk" in doc:
        smoothed_risk = _as_number(doc["smoothed_risk"], "smoothed_risk")
    return ReportLine(
        report=report,
        smoothed_risk=smoothed_risk,
        smoothed_tier=smoothed_tier,
        stream_alerts=[a for a in alerts if a.smoothed],
    )


def resolve_scale(
    frame: FrameRecord, config: EngineConfig, cli_kappa: float | None = None
) -> CalibrationScale:
    """Pick the pixels-per-meter scale for one frame.

    Priority: the frame's own override, then the config-level kappa, then a
    kappa supplied on the command line. With none of the three the frame
    cannot be assessed.
    """
    if frame.scale_override is not None:
        return frame.scale_override
    if config.kappa is not None:
        return CalibrationScale(kappa=config.kappa, source=CalibrationSource.CONFIG_DEFAULT)
    if cli_kappa is not None:
        return CalibrationScale(kappa=cli_kappa, source=CalibrationSource.MANUAL)
    raise ScaleUnresolved(
        f"frame {frame.frame_id}: no scale_px_per_m, no config kappa, no --kappa"
    )
