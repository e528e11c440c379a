"""Trust-aware opinion dynamics on directed networks with malicious agents."""

import json

from . import _core
from ._core import (
    ConfigRejected,
    DtrustError,
    Instance,
    ParseError,
    config_keys,
    fixture,
    index_of_contraction,
    is_weakly_chained,
    matrix_power,
    preset_names,
)

__all__ = [
    "ConfigRejected",
    "DtrustError",
    "Instance",
    "ParseError",
    "analyze",
    "config",
    "config_keys",
    "fixture",
    "index_of_contraction",
    "is_weakly_chained",
    "make_instance",
    "matrix_power",
    "preset_names",
    "run_experiment",
    "run_trial",
    "verify",
]


def _text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(str(v) for v in value) + "]"
    return str(value)


def config(preset="", config_text="", **overrides):
    """Config text for a preset, optional config text, then keyword overrides."""
    return _core.resolve_config(preset, config_text, {k: _text(v) for k, v in overrides.items()})


def make_instance(preset="", variant="", trial=0, **overrides):
    return _core.make_instance(config(preset, **overrides), variant, trial)


def verify(instance):
    return json.loads(_core.verify(instance))


def analyze(instance, full_diameter=False):
    return json.loads(_core.analyze(instance, full_diameter))


def run_trial(preset="", variant="", trial=0, **overrides):
    """One trial. Returns the JSON summary plus per-round error traces."""
    raw = _core.run_trial(config(preset, **overrides), variant, trial)
    out = json.loads(raw["summary"])
    out.update(mse=raw["mse"], max_err=raw["max_err"], min_err=raw["min_err"], csv=raw["csv"])
    return out


def run_experiment(preset="", write_files=False, threads=0, **overrides):
    """All trials of every variant. Writes the usual output tree when write_files is set."""
    return json.loads(_core.run_experiment(config(preset, **overrides), write_files, threads))
