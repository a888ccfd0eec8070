"""Experiment configuration schema and validation.

Configs are strict: unknown fields anywhere are rejected with the JSON
path of the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

EXPERIMENT_KINDS = (
    "kcrit",
    "admissibility",
    "circle-threshold",
    "phase-check",
    "decay-scan",
    "segment-saturation",
    "zonal",
    "kuznecov",
    "windowed-sum",
)

_TOP_KEYS = {"experiment", "params", "out_dir", "seed"}

_PROFILE_KEYS = {
    "constant": ({"kind", "K"}, {"kind", "K"}),
    "sampled": ({"kind", "samples"}, {"kind", "samples", "interp"}),
}
_WINDOW_KEYS = {
    "bump": ({"kind", "center", "half_width"}, {"kind", "center", "half_width"}),
    "uniform": ({"kind", "lo", "hi"}, {"kind", "lo", "hi"}),
}
_CURVE_KEYS = {
    "euclidean-segment": ({"kind", "point", "angle"}, {"kind", "point", "angle"}),
    "torus-segment": ({"kind", "point", "angle"}, {"kind", "point", "angle"}),
    "euclidean-circle": ({"kind", "center", "radius"}, {"kind", "center", "radius"}),
    "torus-circle": ({"kind", "center", "radius"}, {"kind", "center", "radius"}),
    "hyperbolic-geodesic": ({"kind"}, {"kind", "through", "direction_angle"}),
    "hyperbolic-circle": ({"kind", "center", "radius"}, {"kind", "center", "radius", "phase"}),
    "hyperbolic-horocycle": ({"kind"}, {"kind", "through", "direction_angle"}),
}

# per-experiment parameter schema: name -> (required, allowed)
_PARAM_KEYS = {
    "kcrit": ({"profile", "s_max"}, {"profile", "s_max", "tol", "bracket_tol", "method"}),
    "admissibility": (
        {"K", "curve", "window", "s_max"},
        {"K", "curve", "window", "s_max", "n_samples"},
    ),
    "circle-threshold": ({"K0", "K1"}, {"K0", "K1"}),
    "phase-check": (
        {"surface", "curve1", "curve2"},
        {"surface", "curve1", "curve2", "margin", "n_samples", "check", "s_range", "t_range"},
    ),
    "decay-scan": (
        {"curve", "window"},
        {"curve", "window", "n_list", "lambda_min", "lambda_max", "lambda_step"},
    ),
    "segment-saturation": (
        {"direction", "window", "k_max"},
        {"direction", "window", "k_max", "mode"},
    ),
    "zonal": ({"k_max"}, {"k_max"}),
    "kuznecov": ({"curve", "window", "Lambdas"}, {"curve", "window", "Lambdas"}),
    "windowed-sum": (
        {"curve", "window", "lambda", "T"},
        {"curve", "window", "lambda", "T", "mode"},
    ),
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    params: dict
    out_dir: str
    seed: int
    raw: dict


def _require_number(obj, path, allow_inf=False):
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        raise ConfigError(path, f"expected a number, got {type(obj).__name__}")
    if not allow_inf and not math.isfinite(obj):
        raise ConfigError(path, "expected a finite number")


def _require_keys(obj, path, table, what):
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected a {what} object")
    kind = obj.get("kind")
    if kind not in table:
        raise ConfigError(f"{path}.kind", f"unknown {what} kind {kind!r}")
    required, allowed = table[kind]
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", f"unknown {what} field")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}.{key}", "missing required field")


def _validate_params(kind: str, params: dict):
    required, allowed = _PARAM_KEYS[kind]
    for key in params:
        if key not in allowed:
            raise ConfigError(f"params.{key}", "unknown field")
    for key in required:
        if key not in params:
            raise ConfigError(f"params.{key}", "missing required field")
    if "profile" in params:
        _require_keys(params["profile"], "params.profile", _PROFILE_KEYS, "profile")
    for ck in ("curve", "curve1", "curve2"):
        if ck in params:
            _require_keys(params[ck], f"params.{ck}", _CURVE_KEYS, "curve")
    if "window" in params:
        _require_keys(params["window"], "params.window", _WINDOW_KEYS, "window")
    for nk in ("s_max", "K", "K0", "K1", "T", "lambda", "margin", "tol", "bracket_tol"):
        if nk in params:
            _require_number(params[nk], f"params.{nk}")
    for ik in ("n_samples", "k_max"):
        if ik in params:
            if not isinstance(params[ik], int) or isinstance(params[ik], bool):
                raise ConfigError(f"params.{ik}", "expected an integer")


def validate_config(obj: dict) -> ExperimentConfig:
    if not isinstance(obj, dict):
        raise ConfigError("$", "top-level config must be an object")
    for key in obj:
        if key not in _TOP_KEYS:
            raise ConfigError(key, "unknown field")
    kind = obj.get("experiment")
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError("experiment", f"unknown experiment kind {kind!r}")
    params = obj.get("params")
    if not isinstance(params, dict):
        raise ConfigError("params", "missing or malformed params object")
    _validate_params(kind, params)
    out_dir = obj.get("out_dir", ".")
    if not isinstance(out_dir, str):
        raise ConfigError("out_dir", "expected a string")
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed", "expected an integer")
    return ExperimentConfig(
        experiment=kind, params=params, out_dir=out_dir, seed=seed, raw=obj
    )


def load_config(path) -> ExperimentConfig:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}") from exc
    return validate_config(obj)
