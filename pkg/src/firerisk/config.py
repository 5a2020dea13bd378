"""Engine configuration: one JSON document, defaults for anything absent.

Unknown keys are rejected rather than ignored so a typo in a tuning file
cannot silently fall back to defaults.
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum

from .core import Aggregation, RiskParams, VulnerabilityTable, default_vulnerability
from .errors import ConfigError
from .temporal import DEFAULT_DEBOUNCE_FRAMES


class ProximityMetric(str, Enum):
    CENTROID = "centroid"
    BBOX_GAP = "bbox_gap"


class OverlayStyle(str, Enum):
    DIRECT = "direct"
    HORIZONTAL = "horizontal"


@dataclass(frozen=True)
class EngineConfig:
    params: RiskParams = field(default_factory=RiskParams)
    kappa: float | None = None  # config-level pixels per meter
    proximity_metric: ProximityMetric = ProximityMetric.CENTROID
    overlay_style: OverlayStyle = OverlayStyle.DIRECT
    debounce_frames: int = DEFAULT_DEBOUNCE_FRAMES

    def __post_init__(self):
        if self.kappa is not None and not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ConfigError(f"kappa must be a finite positive number, got {self.kappa!r}")
        if self.debounce_frames < 0:
            raise ConfigError(f"debounce_frames must be non-negative, got {self.debounce_frames}")


_PARAM_KEYS = (
    "alpha_s",
    "alpha_a",
    "beta_s",
    "lambda_m",
    "tau1",
    "tau2",
    "tau3",
    "d_crit_m",
    "rho_crit",
    "gamma",
    "delta_d_m",
    "use_worst_case_exposure",
)


def config_from_dict(doc: dict) -> EngineConfig:
    """Build an EngineConfig from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError(f"config must be a JSON object, got {type(doc).__name__}")
    known = set(_PARAM_KEYS) | {
        "vulnerability",
        "aggregation",
        "kappa",
        "proximity_metric",
        "overlay_style",
        "debounce_frames",
    }
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    param_kwargs = {k: doc[k] for k in _PARAM_KEYS if k in doc}
    if "vulnerability" in doc:
        vul = doc["vulnerability"]
        if not isinstance(vul, dict) or not isinstance(vul.get("entries", {}), dict):
            raise ConfigError('vulnerability must be {"entries": {...}, "default_weight": n}')
        extra = sorted(set(vul) - {"entries", "default_weight"})
        if extra:
            raise ConfigError(f"unknown vulnerability keys: {', '.join(extra)}")
        base = default_vulnerability()
        try:
            param_kwargs["vulnerability"] = VulnerabilityTable(
                entries=dict(vul.get("entries", base.entries)),
                default_weight=vul.get("default_weight", base.default_weight),
            )
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
    if "aggregation" in doc:
        try:
            param_kwargs["aggregation"] = Aggregation(doc["aggregation"])
        except ValueError as exc:
            raise ConfigError(f"aggregation must be one of {[a.value for a in Aggregation]}") from exc

    try:
        params = RiskParams(**param_kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc

    try:
        metric = ProximityMetric(doc.get("proximity_metric", ProximityMetric.CENTROID))
        style = OverlayStyle(doc.get("overlay_style", OverlayStyle.DIRECT))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    debounce = doc.get("debounce_frames", DEFAULT_DEBOUNCE_FRAMES)
    if not isinstance(debounce, int) or isinstance(debounce, bool):
        raise ConfigError(f"debounce_frames must be an integer, got {debounce!r}")

    return EngineConfig(
        params=params,
        kappa=doc.get("kappa"),
        proximity_metric=metric,
        overlay_style=style,
        debounce_frames=debounce,
    )


def load_config(path: str) -> EngineConfig:
    """Read and validate a config file; missing fields take defaults."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(doc)
