"""Convert in-memory detection results into engine wire lines.

The bridge does no scoring and no geometry beyond box-format
normalization; every number is passed through to the engine at 12
significant digits, matching the engine's own serialization.
"""

import json
import math
from dataclasses import dataclass, field

Box = tuple[float, float, float, float]

BOX_FORMATS = ("xywh", "xyxy", "nxywh", "nxyxy")


def to_xywh(box, box_format: str = "xywh", frame_w: float | None = None, frame_h: float | None = None) -> Box:
    """Normalize a detection box to absolute pixel (x, y, w, h).

    Supported formats: xywh, xyxy (corner pairs), and their normalized
    variants nxywh/nxyxy with coordinates in [0, 1] of the frame size.
    """
    if box_format not in BOX_FORMATS:
        raise ValueError(f"box_format must be one of {BOX_FORMATS}, got {box_format!r}")
    a, b, c, d = (float(v) for v in box)
    if box_format.startswith("n"):
        if frame_w is None or frame_h is None:
            raise ValueError("normalized boxes need frame_w and frame_h")
        a, c = a * frame_w, c * frame_w
        b, d = b * frame_h, d * frame_h
        box_format = box_format[1:]
    if box_format == "xyxy":
        return (a, b, c - a, d - b)
    return (a, b, c, d)


@dataclass
class FireDetection:
    bbox: Box
    confidence: float
    mask_area_px: float | None = None


@dataclass
class ObjectDetection:
    bbox: Box
    class_name: str
    confidence: float


@dataclass
class DetectionAdapterInput:
    """One frame's fused detector outputs, pre-serialization."""

    width_px: int
    height_px: int
    fires: list[FireDetection] = field(default_factory=list)
    objects: list[ObjectDetection] = field(default_factory=list)


def _round12(x: float) -> float:
    return float(format(float(x), ".12g"))


def _check_box(box: Box, where: str) -> None:
    for name, value in zip("xywh", box):
        if not math.isfinite(value):
            raise ValueError(f"{where}.{name} is not finite: {value!r}")
    if box[2] < 0 or box[3] < 0:
        raise ValueError(f"{where} has a negative dimension: w={box[2]}, h={box[3]}")


def _check_confidence(value: float, where: str) -> None:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise ValueError(f"{where} must be in [0, 1], got {value!r}")


def to_frame_record(
    data: DetectionAdapterInput, frame_id: int, timestamp_ms: int | None = None
) -> str:
    """Serialize one frame to a wire line the engine accepts.

    Raises ValueError for anything the engine's own validation would
    reject, so bad detections fail fast on the producing side.
    """
    if frame_id < 0:
        raise ValueError(f"frame_id must be non-negative, got {frame_id}")
    if data.width_px <= 0 or data.height_px <= 0:
        raise ValueError(f"frame size must be positive, got {data.width_px}x{data.height_px}")
    frame_area = float(data.width_px) * float(data.height_px)

    doc: dict = {"frame_id": frame_id}
    if timestamp_ms is not None:
        if timestamp_ms < 0:
            raise ValueError(f"timestamp_ms must be non-negative, got {timestamp_ms}")
        doc["timestamp_ms"] = timestamp_ms
    doc["width_px"] = data.width_px
    doc["height_px"] = data.height_px

    fires = []
    for i, det in enumerate(data.fires):
        where = f"fires[{i}]"
        _check_box(det.bbox, where)
        _check_confidence(det.confidence, f"{where}.confidence")
        entry = {
            "bbox": [_round12(v) for v in det.bbox],
            "confidence": _round12(det.confidence),
        }
        if det.mask_area_px is not None:
            if not (math.isfinite(det.mask_area_px) and 0.0 <= det.mask_area_px <= frame_area):
                raise ValueError(
                    f"{where}.mask_area_px must be in [0, frame area], got {det.mask_area_px!r}"
                )
            entry["mask_area_px"] = _round12(det.mask_area_px)
        fires.append(entry)
    doc["fires"] = fires

    objects = []
    for j, det in enumerate(data.objects):
        where = f"objects[{j}]"
        _check_box(det.bbox, where)
        _check_confidence(det.confidence, f"{where}.confidence")
        if not det.class_name:
            raise ValueError(f"{where}.class_name must be non-empty")
        objects.append(
            {
                "bbox": [_round12(v) for v in det.bbox],
                "class": det.class_name,
                "confidence": _round12(det.confidence),
            }
        )
    doc["objects"] = objects

    return json.dumps(doc, separators=(",", ":"))
