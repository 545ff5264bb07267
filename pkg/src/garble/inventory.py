"""Canonical English phoneme inventory and the two ASCII phonetic alphabets.

Phoneme ids are X-SAMPA strings; Kirschenbaum is a per-phoneme rendering
table. The shipped inventory (24 consonants, 20 vowels, syllabic l) covers
every symbol needed by the command-mangling pipeline and is frozen as a
data file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

KIRSCHENBAUM = "kirschenbaum"
XSAMPA = "xsampa"
ALPHABETS = (KIRSCHENBAUM, XSAMPA)

STRESS_MARK = "'"


@dataclass(frozen=True)
class Phoneme:
    """One sound unit with its articulatory features and surface renderings."""

    id: str
    category: str  # "consonant" | "vowel"
    features: dict = field(compare=False, hash=False)
    renderings: dict = field(compare=False, hash=False)  # alphabet -> surface string

    def __post_init__(self):
        if self.category not in ("consonant", "vowel"):
            raise ValueError(f"bad category {self.category!r} for {self.id!r}")
        if any(not v for v in self.features.values()):
            raise ValueError(f"empty feature value in {self.id!r}")
        for alphabet in ALPHABETS:
            if not self.renderings.get(alphabet):
                raise ValueError(f"{self.id!r} lacks a {alphabet} rendering")

    @property
    def is_consonant(self) -> bool:
        return self.category == "consonant"

    @property
    def is_vowel(self) -> bool:
        return self.category == "vowel"

    @property
    def nucleus_capable(self) -> bool:
        """Vowels and syllabic consonants can head a syllable."""
        return self.is_vowel or self.features.get("manner", "").startswith("syllabic")

    def rendering(self, alphabet: str) -> str:
        return self.renderings[alphabet]


class Inventory:
    """The full phoneme table plus longest-match tokenizers per alphabet."""

    def __init__(self, phonemes: list[Phoneme]):
        if len({p.id for p in phonemes}) != len(phonemes):
            raise ValueError("duplicate phoneme ids")
        self.phonemes = tuple(phonemes)
        self._by_id = {p.id: p for p in phonemes}
        self._by_surface = {
            alphabet: {p.rendering(alphabet): p for p in phonemes} for alphabet in ALPHABETS
        }
        for alphabet, table in self._by_surface.items():
            if len(table) != len(phonemes):
                raise ValueError(f"ambiguous {alphabet} renderings")
        # Longest-match alternation, as in classic X-SAMPA translators.
        self._patterns = {
            alphabet: re.compile(
                "|".join(re.escape(s) for s in sorted(table, key=len, reverse=True))
            )
            for alphabet, table in self._by_surface.items()
        }

    def __len__(self) -> int:
        return len(self.phonemes)

    def __contains__(self, phoneme_id: str) -> bool:
        return phoneme_id in self._by_id

    def get(self, phoneme_id: str) -> Phoneme:
        return self._by_id[phoneme_id]

    @property
    def consonants(self) -> list[Phoneme]:
        return [p for p in self.phonemes if p.is_consonant]

    @property
    def vowels(self) -> list[Phoneme]:
        return [p for p in self.phonemes if p.is_vowel]

    def match_at(self, text: str, pos: int, alphabet: str) -> Phoneme | None:
        """Longest-match one phoneme at ``pos``, or None if nothing matches."""
        m = self._patterns[alphabet].match(text, pos)
        if m is None:
            return None
        return self._by_surface[alphabet][m.group(0)]

    def tokenize(self, word: str, alphabet: str) -> list[Phoneme]:
        """Greedy longest-match split of a surface word (no stress marks)."""
        out = []
        pos = 0
        while pos < len(word):
            p = self.match_at(word, pos, alphabet)
            if p is None:
                raise KeyError(pos)
            out.append(p)
            pos += len(p.rendering(alphabet))
        return out


def _parse_features(text: str) -> dict:
    out = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        out[key] = value
    return out


def load_inventory(path=None) -> Inventory:
    """Load the phoneme table from a tab-separated data file."""
    if path is not None:
        text = open(path, encoding="utf-8").read()
    else:
        text = resources.files("garble.data").joinpath("phonemes.tsv").read_text("utf-8")
    phonemes = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        pid, category, features, kirsch, xsampa = line.split("\t")
        phonemes.append(
            Phoneme(
                id=pid,
                category=category,
                features=_parse_features(features),
                renderings={KIRSCHENBAUM: kirsch, XSAMPA: xsampa},
            )
        )
    return Inventory(phonemes)


@lru_cache(maxsize=1)
def default_inventory() -> Inventory:
    return load_inventory()
