"""Feature-based phoneme confusion costs.

Substitution cost scales with the number of mismatched articulatory
features; consonant<->vowel substitutions pay a flat category barrier that
is never cheaper than any within-category substitution.
"""

from __future__ import annotations

import numpy as np

from ..inventory import Inventory, default_inventory
from .config import CalibrationConfig


class ConfusionMatrix:
    def __init__(self, inventory: Inventory | None = None, cfg: CalibrationConfig | None = None):
        cfg = cfg or CalibrationConfig()
        self.inventory = inventory or default_inventory()
        self.ins_cost = cfg.ins_cost
        self.del_cost = cfg.del_cost
        self.index = {p.id: i for i, p in enumerate(self.inventory.phonemes)}
        n = len(self.inventory)
        table = np.zeros((n, n), dtype=np.float64)
        for a in self.inventory.phonemes:
            for b in self.inventory.phonemes:
                table[self.index[a.id], self.index[b.id]] = self._cost(a, b, cfg)
        self.table = table

    @staticmethod
    def _cost(a, b, cfg: CalibrationConfig) -> float:
        if a.id == b.id:
            return 0.0
        if a.category != b.category:
            return cfg.sub_base * cfg.category_barrier
        keys = a.features.keys()
        mismatches = sum(a.features[k] != b.features[k] for k in keys)
        return cfg.sub_base * mismatches / len(keys)

    def sub_cost(self, a: str, b: str) -> float:
        return float(self.table[self.index[a], self.index[b]])

    def encode(self, ids) -> np.ndarray:
        return np.array([self.index[i] for i in ids], dtype=np.int32)

    def dump(self, path) -> None:
        """Tab-separated pair-cost table for inspection and diffing."""
        ids = [p.id for p in self.inventory.phonemes]
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\t".join([""] + ids) + "\n")
            for a in ids:
                row = [a] + [f"{self.sub_cost(a, b):.6g}" for b in ids]
                fh.write("\t".join(row) + "\n")
