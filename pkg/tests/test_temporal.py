"""Exponential smoothing and stream-level alerting."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import simple_frame
from firerisk.core import CalibrationScale, FrameRecord, RiskParams, RiskTier
from firerisk.errors import OutOfOrderFrame, RiskOutOfRange, ScaleUnresolved
from firerisk.synth import reference_assess
from firerisk.temporal import StreamState, smooth_update, stream_assess

SCALE = CalibrationScale(kappa=50.0)
PARAMS = RiskParams()

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def warm_state(smoothed: float) -> StreamState:
    return StreamState(smoothed_risk=smoothed, frames_seen=1)


def empty_frame(frame_id: int) -> FrameRecord:
    return FrameRecord(frame_id=frame_id, width_px=640, height_px=640)


def hot_frame(frame_id: int) -> FrameRecord:
    frame = simple_frame(
        fire_centroid=(100, 100), object_centroid=(150, 100), mask_area=500000.0
    )
    return FrameRecord(
        frame_id=frame_id,
        width_px=frame.width_px,
        height_px=frame.height_px,
        fires=frame.fires,
        objects=frame.objects,
    )


def test_smooth_update_midpoint():
    params = RiskParams(gamma=0.5)
    assert smooth_update(warm_state(0.0), 1.0, params).smoothed_risk == 0.5


def test_smooth_update_fixed_point():
    state = warm_state(0.37)
    assert smooth_update(state, 0.37, PARAMS).smoothed_risk == pytest.approx(0.37, abs=1e-15)


def test_smooth_update_direct_evaluation():
    params = RiskParams(gamma=0.9)
    assert smooth_update(warm_state(1.0), 0.0, params).smoothed_risk == pytest.approx(0.9, abs=1e-15)


def test_first_frame_seeds_the_filter():
    state = smooth_update(StreamState(), 0.8, PARAMS)
    assert state.smoothed_risk == 0.8
    assert state.frames_seen == 1


def test_smooth_update_rejects_out_of_range_risk():
    with pytest.raises(RiskOutOfRange):
        smooth_update(StreamState(), 1.5, PARAMS)
    with pytest.raises(RiskOutOfRange):
        smooth_update(StreamState(), -0.01, PARAMS)


@given(st.lists(unit, min_size=1, max_size=30))
def test_smoothed_risk_stays_inside_history_envelope(risks):
    state = StreamState()
    seen = []
    for r in risks:
        state = smooth_update(state, r, PARAMS)
        seen.append(r)
        assert min(seen) - 1e-12 <= state.smoothed_risk <= max(seen) + 1e-12


def test_zero_risk_stream_stays_zero():
    frames = [empty_frame(t) for t in range(10)]
    results = list(stream_assess(frames, SCALE, PARAMS))
    assert all(r.smoothed_risk == 0.0 for r in results)
    assert all(r.smoothed_tier is RiskTier.Low for r in results)
    assert all(r.stream_alerts == [] for r in results)


def test_step_input_converges_geometrically():
    frames = [empty_frame(0)] + [hot_frame(t) for t in range(1, 31)]
    results = list(stream_assess(frames, SCALE, PARAMS))
    step = results[1].report.frame_risk_max
    assert step > 0.5
    for t, result in enumerate(results):
        if t == 0:
            continue
        expected_gap = PARAMS.gamma**t * step
        assert abs(abs(result.smoothed_risk - step) - expected_gap) < 1e-12


def test_three_frame_sequence_matches_hand_unrolled_recursion():
    frames = [empty_frame(0), hot_frame(1), empty_frame(2)]
    # Unroll the recursion on the independently computed per-frame risks.
    instantaneous = [reference_assess(f, SCALE, PARAMS).frame_risk_max for f in frames]
    expected = [instantaneous[0]]
    for r in instantaneous[1:]:
        expected.append(PARAMS.gamma * expected[-1] + (1.0 - PARAMS.gamma) * r)
    results = list(stream_assess(frames, SCALE, PARAMS))
    for result, want in zip(results, expected):
        assert abs(result.smoothed_risk - want) < 1e-12


def test_out_of_order_frames_rejected():
    frames = [empty_frame(5), empty_frame(5)]
    with pytest.raises(OutOfOrderFrame):
        list(stream_assess(frames, SCALE, PARAMS))
    frames = [empty_frame(5), empty_frame(3)]
    with pytest.raises(OutOfOrderFrame):
        list(stream_assess(frames, SCALE, PARAMS))


def test_frame_id_gaps_do_not_reset_state():
    frames = [hot_frame(0), hot_frame(100)]
    results = list(stream_assess(frames, SCALE, PARAMS))
    r = results[0].report.frame_risk_max
    # One smoothing step applied, not a re-seed.
    assert results[1].smoothed_risk == pytest.approx(
        PARAMS.gamma * r + (1 - PARAMS.gamma) * r, abs=1e-15
    )


def test_missing_scale_raises():
    frames = [empty_frame(0)]
    with pytest.raises(ScaleUnresolved):
        list(stream_assess(frames, None, PARAMS))


def test_frame_scale_override_beats_argument():
    frame = hot_frame(0)
    override = CalibrationScale(kappa=10.0)
    patched = FrameRecord(
        frame_id=0,
        width_px=frame.width_px,
        height_px=frame.height_px,
        fires=frame.fires,
        objects=frame.objects,
        scale_override=override,
    )
    (result,) = stream_assess([patched], SCALE, PARAMS)
    assert result.report.kappa_used == 10.0


def test_single_frame_spike_never_goes_critical():
    frames = [empty_frame(0), hot_frame(1)] + [empty_frame(t) for t in range(2, 12)]
    spike = reference_assess(frames[1], SCALE, PARAMS).frame_risk_max
    results = list(stream_assess(frames, SCALE, PARAMS))
    # Even a worst-case spike is damped to (1 - gamma) of itself.
    assert max(r.smoothed_risk for r in results) <= (1 - PARAMS.gamma) * spike + 1e-12
    assert all(r.smoothed_tier < RiskTier.Critical for r in results)


def test_stream_alerts_gated_on_smoothed_tier():
    # Frame 0 alerts instantaneously, but the smoothed signal starts High
    # immediately because the first frame seeds the filter.
    frames = [hot_frame(t) for t in range(3)]
    results = list(stream_assess(frames, SCALE, PARAMS))
    assert results[0].smoothed_tier >= RiskTier.High
    assert [a.smoothed for a in results[0].stream_alerts] == [True]
    assert results[0].stream_alerts[0].tier == results[0].smoothed_tier


def test_stream_alert_debounce_suppresses_identical_pairs():
    frames = [hot_frame(t) for t in range(14)]
    results = list(stream_assess(frames, SCALE, PARAMS, debounce_frames=5))
    alert_frames = [r.report.frame_id for r in results if r.stream_alerts]
    assert alert_frames == [0, 6, 12]
    no_debounce = list(stream_assess(frames, SCALE, PARAMS, debounce_frames=0))
    assert [r.report.frame_id for r in no_debounce if r.stream_alerts] == list(range(14))


def test_replay_is_deterministic():
    frames = [hot_frame(0), empty_frame(1), hot_frame(2), hot_frame(5)]
    first = list(stream_assess(frames, SCALE, PARAMS))
    second = list(stream_assess(frames, SCALE, PARAMS))
    for a, b in zip(first, second):
        assert a.report == b.report
        assert a.smoothed_risk == b.smoothed_risk
        assert a.smoothed_tier == b.smoothed_tier
        assert a.stream_alerts == b.stream_alerts


def test_instantaneous_alert_invariant_holds_for_stream_alerts():
    frames = [hot_frame(t) for t in range(3)]
    for result in stream_assess(frames, SCALE, PARAMS):
        for alert in result.stream_alerts:
            assert alert.distance_m <= PARAMS.d_crit_m
            assert alert.risk >= PARAMS.rho_crit
