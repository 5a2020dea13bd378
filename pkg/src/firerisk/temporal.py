"""Sequential smoothing of frame risk and alerting on the smoothed signal.

The smoother is frame-indexed: gaps in frame_id neither reset state nor
stretch the decay, and timestamps are carried but unused. One StreamState
belongs to one stream; distinct streams can run concurrently.
"""

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from .core import (
    AlertEvent,
    Aggregation,
    CalibrationScale,
    FrameRecord,
    RiskParams,
    RiskReport,
    RiskTier,
)
from .errors import OutOfOrderFrame, RiskOutOfRange, ScaleUnresolved
from .risk import CENTROID_METRIC, assess_frame, tier

DEFAULT_DEBOUNCE_FRAMES = 5


@dataclass(frozen=True)
class StreamState:
    """Smoothed risk plus per-pair debounce counters for one stream."""

    smoothed_risk: float = 0.0
    last_frame_id: int | None = None
    frames_seen: int = 0
    # (fire_index, object_index) -> frames left in the suppression window
    debounce_remaining: dict[tuple[int, int], int] = field(default_factory=dict)


@dataclass(frozen=True)
class StreamFrameResult:
    report: RiskReport
    smoothed_risk: float
    smoothed_tier: RiskTier
    stream_alerts: list[AlertEvent]


def smooth_update(state: StreamState, frame_risk: float, params: RiskParams) -> StreamState:
    """Fold one frame risk into the exponential filter.

    The very first frame seeds the filter directly, so a stream that opens
    hot is not biased toward Low by a cold start.
    """
    if not (0.0 <= frame_risk <= 1.0):
        raise RiskOutOfRange(f"frame risk must be in [0, 1], got {frame_risk}")
    if state.frames_seen == 0:
        smoothed = frame_risk
    else:
        smoothed = params.gamma * state.smoothed_risk + (1.0 - params.gamma) * frame_risk
    return replace(state, smoothed_risk=smoothed, frames_seen=state.frames_seen + 1)


def stream_assess(
    frames: Iterable[FrameRecord],
    scale: CalibrationScale | None,
    params: RiskParams,
    metric: str = CENTROID_METRIC,
    debounce_frames: int = DEFAULT_DEBOUNCE_FRAMES,
) -> Iterator[StreamFrameResult]:
    """Assess an ordered frame sequence, smoothing risk as it goes.

    Per frame: the instantaneous report, the updated smoothed risk and its
    tier, and stream-level alerts. A stream alert fires when the smoothed
    tier is High or above and a pair meets the distance-and-risk predicate
    in the current frame; an identical (fire, object) pair is then
    suppressed for debounce_frames frames.

    A frame's own scale override wins over the scale argument; with neither,
    the frame is unassessable.
    """
    state = StreamState()
    for frame in frames:
        if state.last_frame_id is not None and frame.frame_id <= state.last_frame_id:
            raise OutOfOrderFrame(
                f"frame_id {frame.frame_id} after {state.last_frame_id}; ids must increase"
            )
        effective_scale = frame.scale_override or scale
        if effective_scale is None:
            raise ScaleUnresolved(
                f"frame {frame.frame_id}: no scale override and no configured kappa"
            )

        report = assess_frame(frame, effective_scale, params, metric)
        instantaneous = (
            report.frame_risk_accumulated
            if params.aggregation is Aggregation.BOUNDED_SUM
            else report.frame_risk_max
        )
        state = smooth_update(state, instantaneous, params)
        smoothed_tier = tier(state.smoothed_risk, params)

        debounce = {
            key: left - 1 for key, left in state.debounce_remaining.items() if left >= 1
        }
        stream_alerts: list[AlertEvent] = []
        if smoothed_tier >= RiskTier.High:
            for alert in report.alerts:
                key = (alert.fire_index, alert.object_index)
                if key in debounce:
                    continue
                stream_alerts.append(replace(alert, tier=smoothed_tier, smoothed=True))
                debounce[key] = debounce_frames

        state = replace(state, last_frame_id=frame.frame_id, debounce_remaining=debounce)
        yield StreamFrameResult(
            report=report,
            smoothed_risk=state.smoothed_risk,
            smoothed_tier=smoothed_tier,
            stream_alerts=stream_alerts,
        )
