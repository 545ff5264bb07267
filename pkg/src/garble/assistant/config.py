"""Calibration knobs for the recognition surrogate, stored as key=value text."""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class CalibrationConfig:
    lambda_lm: float = 0.5  # weight of the language model against acoustic cost
    tau_wake: float = 1.5
    tau_cmd: float = 8.0
    tau_search: float = 16.0
    insertion_cost: float = 0.4  # function-word insertion ("the", "to")
    oov_logprob: float = -8.0
    lm_alpha: float = 0.1  # add-alpha bigram smoothing
    lattice_top_k: int = 60
    sub_base: float = 1.0  # full-mismatch substitution cost
    category_barrier: float = 1.5  # consonant<->vowel multiplier on sub_base
    ins_cost: float = 1.0
    del_cost: float = 1.0
    jitter_seed: int = 0
    jitter_scale: float = 0.25  # per-phoneme half-normal scale when jitter is on

    # file key "lambda" is a Python keyword, hence the attribute alias
    _KEY_ALIASES = {"lambda": "lambda_lm"}


def _field_types():
    return {f.name: f.type for f in fields(CalibrationConfig) if not f.name.startswith("_")}


def save_config(cfg: CalibrationConfig, path) -> None:
    lines = []
    inverse = {v: k for k, v in CalibrationConfig._KEY_ALIASES.items()}
    for f in fields(cfg):
        if f.name.startswith("_"):
            continue
        key = inverse.get(f.name, f.name)
        lines.append(f"{key}={getattr(cfg, f.name)}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_config(text: str) -> CalibrationConfig:
    values = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        key = CalibrationConfig._KEY_ALIASES.get(key, key)
        if key not in {f.name for f in fields(CalibrationConfig)}:
            raise ValueError(f"unknown calibration key {key!r}")
        kind = float if "float" in str(_field_types()[key]) else int
        values[key] = kind(value.strip())
    return CalibrationConfig(**values)


def load_config(path=None) -> CalibrationConfig:
    if path is not None:
        text = open(path, encoding="utf-8").read()
    else:
        text = resources.files("garble.data").joinpath("calibration.cfg").read_text("utf-8")
    return parse_config(text)


@lru_cache(maxsize=1)
def default_config() -> CalibrationConfig:
    return load_config()
