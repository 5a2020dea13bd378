"""Annotated SVG overlays: detection boxes, proximity lines, distance labels.

Output is plain SVG markup built deterministically, so identical inputs
yield byte-identical documents. Element order is fixed: fire rectangles,
object rectangles, proximity lines, labels.
"""

from .config import EngineConfig, OverlayStyle
from .core import FrameRecord, RiskReport
from .errors import MismatchedReport
from .geometry import centroid

_FONT_SIZE = 14
_LABEL_OFFSET = 4  # px above the line midpoint


def _n(value: float) -> str:
    """Compact deterministic number formatting for SVG attributes."""
    return format(float(value), ".6g")


def render_overlay(frame: FrameRecord, report: RiskReport, config: EngineConfig) -> str:
    """Render one frame's assessment as an SVG document.

    Fire boxes are red, context-object boxes green. Every assessed pair gets
    a red proximity line labeled with its metric distance ("%.2f m"); the
    horizontal style pins the line to the fire centroid's y, the direct
    style joins the two centroids.
    """
    if report.frame_id != frame.frame_id:
        raise MismatchedReport(
            f"report frame_id {report.frame_id} does not match frame {frame.frame_id}"
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width_px}" '
        f'height="{frame.height_px}" viewBox="0 0 {frame.width_px} {frame.height_px}">'
    ]
    for fire in frame.fires:
        b = fire.bbox
        parts.append(
            f'<rect x="{_n(b.x)}" y="{_n(b.y)}" width="{_n(b.w)}" height="{_n(b.h)}" '
            f'fill="none" stroke="red" stroke-width="2"/>'
        )
    for obj in frame.objects:
        b = obj.bbox
        parts.append(
            f'<rect x="{_n(b.x)}" y="{_n(b.y)}" width="{_n(b.w)}" height="{_n(b.h)}" '
            f'fill="none" stroke="green" stroke-width="2"/>'
        )

    lines = []
    labels = []
    for pair in report.pairs:
        p = centroid(frame.fires[pair.fire_index].bbox)
        q = centroid(frame.objects[pair.object_index].bbox)
        if config.overlay_style is OverlayStyle.HORIZONTAL:
            x1, y1, x2, y2 = p.x, p.y, q.x, p.y
        else:
            x1, y1, x2, y2 = p.x, p.y, q.x, q.y
        lines.append(
            f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}" '
            f'stroke="red" stroke-width="1.5"/>'
        )
        labels.append(
            f'<text x="{_n((x1 + x2) / 2)}" y="{_n((y1 + y2) / 2 - _LABEL_OFFSET)}" '
            f'fill="red" font-size="{_FONT_SIZE}">{pair.distance_m:.2f} m</text>'
        )
    parts.extend(lines)
    parts.extend(labels)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
