"""Config-file loading.

The format is INI-style key/value text: scenario-level keys live in a
``[scenario]`` section and each band may override its radio parameters in
its own section (``[mm28]``, ``[eband]``, ``[thz]``, ``[sub6]``,
``[mm60]``) with keys ``carrier_ghz``, ``bandwidth_mhz``, ``tx_power_mw``.
"""

from __future__ import annotations

import configparser
from dataclasses import fields, replace
from pathlib import Path

from .experiments import BAND_DEFAULTS, ExperimentConfig
from .model import Band

_FLOAT_KEYS = {"area_m", "slot_us", "sched_phase_us", "qos_min_bps",
               "qos_max_bps", "thz_ref_dist_m", "sigma_mm", "sigma_me",
               "sigma_thz"}
_INT_KEYS = {"num_stations", "num_flows", "num_slots"}
_BAND_SECTIONS = {band.value: band for band in Band}


def parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def parse_str_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def load_config(path: str | Path,
                base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Read a config file on top of the defaults (or a given base)."""
    cfg = base or ExperimentConfig()
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"config file not found: {path}")

    updates: dict = {}
    if parser.has_section("scenario"):
        section = parser["scenario"]
        for key in section:
            if key in _FLOAT_KEYS:
                updates[key] = float(section[key])
            elif key in _INT_KEYS:
                updates[key] = int(section[key])
            elif key == "seeds":
                updates["seeds"] = parse_int_list(section[key])
            elif key == "schemes":
                updates["schemes"] = parse_str_list(section[key])
            else:
                raise ValueError(f"unknown config key {key!r} in [scenario]")

    overrides = dict(cfg.band_overrides)
    for name, band in _BAND_SECTIONS.items():
        if not parser.has_section(name):
            continue
        section = parser[name]
        carrier, width, power = overrides.get(band, BAND_DEFAULTS[band])
        if "carrier_ghz" in section:
            carrier = float(section["carrier_ghz"]) * 1e9
        if "bandwidth_mhz" in section:
            width = float(section["bandwidth_mhz"]) * 1e6
        if "tx_power_mw" in section:
            power = float(section["tx_power_mw"]) * 1e-3
        unknown = set(section) - {"carrier_ghz", "bandwidth_mhz",
                                  "tx_power_mw"}
        if unknown:
            raise ValueError(
                f"unknown config keys {sorted(unknown)} in [{name}]")
        overrides[band] = (carrier, width, power)
    if overrides:
        updates["band_overrides"] = overrides

    return replace(cfg, **updates)
