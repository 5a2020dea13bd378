"""Domain type invariants and frame validation."""

import math

import pytest

from firerisk.core import (
    BBox,
    CalibrationScale,
    ContextObject,
    FireInstance,
    FrameRecord,
    RiskParams,
    RiskTier,
    VulnerabilityTable,
    validate_frame,
)
from firerisk.errors import (
    AreaExceedsFrame,
    ConfidenceOutOfRange,
    NegativeDimension,
    NonFiniteField,
    ValidationError,
    ZeroFrameArea,
)


def frame_with(fires=(), objects=(), width=640, height=640):
    return FrameRecord(frame_id=0, width_px=width, height_px=height, fires=list(fires), objects=list(objects))


def test_well_formed_record_passes_unchanged():
    record = frame_with(
        fires=[FireInstance(bbox=BBox(10, 20, 30, 40), confidence=0.8, mask_area_px=600.0)],
        objects=[ContextObject(bbox=BBox(100, 100, 50, 50), class_label="person", confidence=0.9)],
    )
    assert validate_frame(record) is record


def test_validate_is_idempotent():
    record = frame_with(fires=[FireInstance(bbox=BBox(0, 0, 10, 10), confidence=0.5)])
    once = validate_frame(record)
    assert validate_frame(once) == record


def test_fire_confidence_out_of_range():
    record = frame_with(fires=[FireInstance(bbox=BBox(0, 0, 1, 1), confidence=1.3)])
    with pytest.raises(ConfidenceOutOfRange, match=r"fires\[0\]\.confidence"):
        validate_frame(record)


def test_negative_bbox_width():
    record = frame_with(fires=[FireInstance(bbox=BBox(0, 0, -5, 1), confidence=0.5)])
    with pytest.raises(NegativeDimension, match=r"fires\[0\]\.bbox\.w"):
        validate_frame(record)


def test_nan_coordinate_names_field_and_index():
    record = frame_with(
        fires=[FireInstance(bbox=BBox(0, 0, 1, 1), confidence=0.5)],
        objects=[ContextObject(bbox=BBox(math.nan, 0, 1, 1), class_label="car", confidence=0.5)],
    )
    with pytest.raises(NonFiniteField, match=r"objects\[0\]\.bbox\.x"):
        validate_frame(record)


def test_infinite_confidence():
    record = frame_with(fires=[FireInstance(bbox=BBox(0, 0, 1, 1), confidence=math.inf)])
    with pytest.raises(NonFiniteField):
        validate_frame(record)


def test_zero_frame_area():
    with pytest.raises(ZeroFrameArea):
        validate_frame(frame_with(width=0, height=640))


def test_mask_area_exceeding_frame():
    record = frame_with(
        fires=[FireInstance(bbox=BBox(0, 0, 10, 10), confidence=0.5, mask_area_px=640 * 640 + 1)]
    )
    with pytest.raises(AreaExceedsFrame, match=r"fires\[0\]\.mask_area_px"):
        validate_frame(record)


def test_negative_mask_area():
    record = frame_with(fires=[FireInstance(bbox=BBox(0, 0, 10, 10), confidence=0.5, mask_area_px=-1.0)])
    with pytest.raises(NegativeDimension):
        validate_frame(record)


def test_empty_class_label():
    record = frame_with(objects=[ContextObject(bbox=BBox(0, 0, 1, 1), class_label="", confidence=0.5)])
    with pytest.raises(ValidationError, match=r"objects\[0\]\.class_label"):
        validate_frame(record)


def test_negative_frame_id():
    record = FrameRecord(frame_id=-1, width_px=10, height_px=10)
    with pytest.raises(ValidationError, match="frame_id"):
        validate_frame(record)


def test_tier_total_order():
    assert RiskTier.Low < RiskTier.Medium < RiskTier.High < RiskTier.Critical


def test_calibration_scale_rejects_bad_kappa():
    for bad in (0.0, -3.0, math.nan, math.inf):
        with pytest.raises(ValueError):
            CalibrationScale(kappa=bad)


def test_vulnerability_table_rejects_out_of_range_weight():
    with pytest.raises(ValueError, match="robot"):
        VulnerabilityTable(entries={"robot": 1.5})
    with pytest.raises(ValueError):
        VulnerabilityTable(entries={}, default_weight=-0.1)


def test_vulnerability_lookup_is_case_sensitive():
    table = VulnerabilityTable(entries={"person": 1.0}, default_weight=0.3)
    assert table.lookup("person") == 1.0
    assert table.lookup("Person") == 0.3


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha_s": -0.1},
        {"lambda_m": 0.0},
        {"tau1": 0.6, "tau2": 0.5},
        {"tau3": 1.0},
        {"tau1": 0.0},
        {"rho_crit": 0.0},
        {"rho_crit": 1.1},
        {"gamma": 1.0},
        {"gamma": 0.0},
        {"d_crit_m": 0.0},
        {"delta_d_m": -1.0},
    ],
)
def test_risk_params_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        RiskParams(**kwargs)


def test_risk_params_defaults_are_valid():
    params = RiskParams()
    assert params.tau1 < params.tau2 < params.tau3
    assert params.vulnerability.lookup("person") == 1.0
    assert params.vulnerability.lookup("unheard-of") == 0.3
