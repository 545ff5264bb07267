"""Loader for the shipped known-good adversarial command fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources


@dataclass(frozen=True)
class GoldenCommand:
    stage: str  # "wake" | "command" | "combined"
    alphabet: str
    target: str
    adversarial: str
    transcript: str
    action: str


def load_golden_commands() -> list[GoldenCommand]:
    text = resources.files("garble.data").joinpath("golden_commands.tsv").read_text("utf-8")
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        out.append(GoldenCommand(*line.split("\t")))
    return out
