"""Flat ``key = value`` parameter files.

Blank lines and ``#`` comments are ignored. Every value must be a positive
real and every key must be one of :data:`DEFAULTS`.
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Optional

from .inverter_dq import GridParams
from .tlb_converter import ConverterParams

DEFAULTS: dict[str, float] = {
    "vs_volts": 400.0,
    "vdc_volts": 400.0,
    "vq_grid_volts": 160.0,
    "r_grid_ohms": 0.1,
    # 0.2 mH is the tabulated line value; 1 mH at 60 Hz reproduces the sweep table
    "l_grid_henries": 1.0e-3,
    "f_grid_hz": 60.0,
    "l_conv_henries": 0.2e-3,
    "c1_farads": 250e-6,
    "c2_farads": 250e-6,
    "f_sw_hz": 18e3,
    "p_target_watts": 600.0,
}


class ConfigError(ValueError):
    pass


def _positive(key: str, raw) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: not a number: {raw!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(f"{key}: must be a positive real, got {raw!r}")
    return value


def parse_config(text: str, source: str = "<config>") -> dict[str, float]:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        if key not in DEFAULTS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _positive(key, raw.strip())
    return values


def load_config(path: Optional[str | Path] = None, overrides: Optional[Mapping[str, object]] = None) -> dict[str, float]:
    """Defaults, then the file at ``path``, then ``overrides`` (None values skipped)."""
    cfg = dict(DEFAULTS)
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        cfg.update(parse_config(text, str(path)))
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        if key not in DEFAULTS:
            raise ConfigError(f"unknown key {key!r}")
        cfg[key] = _positive(key, raw)
    return cfg


def grid_params(cfg: Mapping[str, float], vdc: Optional[float] = None) -> GridParams:
    return GridParams(
        r=cfg["r_grid_ohms"],
        L=cfg["l_grid_henries"],
        f=cfg["f_grid_hz"],
        Vqg=cfg["vq_grid_volts"],
        Vdc=cfg["vdc_volts"] if vdc is None else vdc,
    )


def converter_params(cfg: Mapping[str, float], vo_target: float) -> ConverterParams:
    """Converter with a resistive load drawing the target power at ``vo_target``."""
    return ConverterParams.for_power(
        vo_target,
        cfg["p_target_watts"],
        L=cfg["l_conv_henries"],
        C1=cfg["c1_farads"],
        C2=cfg["c2_farads"],
        Vs=cfg["vs_volts"],
    )
