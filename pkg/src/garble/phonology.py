"""Phonetic string parsing and the syllable/rhyme algebra.

The stress mark `'` goes immediately before the nucleus of the stressed
syllable (matching printed usage, e.g. "str'3:n"), words are separated by
single spaces, and syllabification follows the maximal-onset rule against
the shipped onset cluster list.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .inventory import ALPHABETS, STRESS_MARK, Inventory, Phoneme, default_inventory


class ParseError(ValueError):
    pass


class EmptyInput(ParseError):
    pass


class UnknownSymbol(ParseError):
    def __init__(self, position: int, fragment: str):
        self.position = position
        self.fragment = fragment
        super().__init__(f"no phoneme matches {fragment!r} at position {position}")


class NoNucleus(ValueError):
    pass


@dataclass(frozen=True)
class Syllable:
    onset: tuple[Phoneme, ...]
    nucleus: Phoneme
    coda: tuple[Phoneme, ...]
    stressed: bool = False

    def __post_init__(self):
        if not self.nucleus.nucleus_capable:
            raise ValueError(f"{self.nucleus.id!r} cannot head a syllable")
        for c in self.onset + self.coda:
            if not c.is_consonant:
                raise ValueError(f"non-consonant {c.id!r} in onset/coda")

    @property
    def phonemes(self) -> tuple[Phoneme, ...]:
        return self.onset + (self.nucleus,) + self.coda


@dataclass(frozen=True)
class PhonWord:
    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        if not self.syllables:
            raise ValueError("word has no syllables")
        if sum(s.stressed for s in self.syllables) > 1:
            raise ValueError("more than one stressed syllable")

    @property
    def phonemes(self) -> tuple[Phoneme, ...]:
        return tuple(p for s in self.syllables for p in s.phonemes)

    @property
    def phoneme_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.phonemes)


@dataclass(frozen=True)
class PhonUtterance:
    words: tuple[PhonWord, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("utterance has no words")

    def __len__(self) -> int:
        return len(self.words)


@lru_cache(maxsize=4)
def _onset_clusters(inventory: Inventory) -> frozenset[tuple[str, ...]]:
    """Legal word-initial clusters, used for maximal-onset assignment."""
    text = resources.files("garble.data").joinpath("onsets.txt").read_text("utf-8")
    clusters = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        clusters.add(tuple(p.id for p in inventory.tokenize(line, "kirschenbaum")))
    return frozenset(clusters)


def syllabify(
    phonemes: list[Phoneme],
    stressed_index: int | None = None,
    inventory: Inventory | None = None,
) -> PhonWord:
    """Group a flat phoneme sequence into syllables (maximal onset).

    Consonants before the first nucleus all join the first onset; between
    nuclei, the longest legal onset cluster goes right and the remainder
    becomes the previous coda. ``stressed_index`` points at the stressed
    nucleus within ``phonemes``.
    """
    inventory = inventory or default_inventory()
    nuclei = [i for i, p in enumerate(phonemes) if p.nucleus_capable]
    if not nuclei:
        raise NoNucleus("no vowel or syllabic consonant in word")
    legal = _onset_clusters(inventory)

    boundaries = [0]  # start index of each syllable
    for prev, cur in zip(nuclei, nuclei[1:]):
        cluster = phonemes[prev + 1 : cur]
        split = cur  # all consonants to the previous coda by default
        for size in range(len(cluster), 0, -1):
            if tuple(p.id for p in cluster[len(cluster) - size :]) in legal:
                split = cur - size
                break
        boundaries.append(split)
    boundaries.append(len(phonemes))

    syllables = []
    for start, end, nucleus_index in zip(boundaries, boundaries[1:], nuclei):
        syllables.append(
            Syllable(
                onset=tuple(phonemes[start:nucleus_index]),
                nucleus=phonemes[nucleus_index],
                coda=tuple(phonemes[nucleus_index + 1 : end]),
                stressed=stressed_index == nucleus_index,
            )
        )
    return PhonWord(tuple(syllables))


def scan_word(
    text: str, alphabet: str, inventory: Inventory | None = None
) -> tuple[list[Phoneme], int | None]:
    """Tokenize one word with its stress mark; no syllable structure yet.

    The mark also disambiguates tokenization (e.g. "I'@U" is I + stressed
    @U, where the unmarked string would read as I@ + U).
    """
    inventory = inventory or default_inventory()
    if not text:
        raise EmptyInput("empty word")
    phonemes: list[Phoneme] = []
    stressed_index = None
    pos = 0
    pending_stress = False
    while pos < len(text):
        if text[pos] == STRESS_MARK:
            if pending_stress or stressed_index is not None:
                raise UnknownSymbol(pos, STRESS_MARK)
            pending_stress = True
            pos += 1
            continue
        phoneme = inventory.match_at(text, pos, alphabet)
        if phoneme is None:
            raise UnknownSymbol(pos, text[pos : pos + 3])
        if pending_stress:
            if not phoneme.nucleus_capable:
                raise UnknownSymbol(pos - 1, STRESS_MARK)
            stressed_index = len(phonemes)
            pending_stress = False
        phonemes.append(phoneme)
        pos += len(phoneme.rendering(alphabet))
    if pending_stress:
        raise UnknownSymbol(len(text) - 1, STRESS_MARK)
    return phonemes, stressed_index


def parse_word(text: str, alphabet: str, inventory: Inventory | None = None) -> PhonWord:
    inventory = inventory or default_inventory()
    phonemes, stressed_index = scan_word(text, alphabet, inventory)
    return syllabify(phonemes, stressed_index, inventory)


def parse(alphabet: str, text: str, inventory: Inventory | None = None) -> PhonUtterance:
    """Parse an utterance of space-separated phonetic words."""
    if alphabet not in ALPHABETS:
        raise ValueError(f"unknown alphabet {alphabet!r}")
    if not text:
        raise EmptyInput("empty utterance")
    words = []
    offset = 0
    for token in text.split(" "):
        if not token:
            raise EmptyInput(f"empty word at position {offset}")
        try:
            words.append(parse_word(token, alphabet, inventory))
        except UnknownSymbol as err:
            raise UnknownSymbol(offset + err.position, err.fragment) from None
        offset += len(token) + 1
    return PhonUtterance(tuple(words))


def emit_word(word: PhonWord, alphabet: str) -> str:
    parts = []
    for syllable in word.syllables:
        for p in syllable.onset:
            parts.append(p.rendering(alphabet))
        if syllable.stressed:
            parts.append(STRESS_MARK)
        parts.append(syllable.nucleus.rendering(alphabet))
        for p in syllable.coda:
            parts.append(p.rendering(alphabet))
    return "".join(parts)


def emit(utterance: PhonUtterance, alphabet: str) -> str:
    """Exact inverse of parse() over the shipped inventory."""
    if alphabet not in ALPHABETS:
        raise ValueError(f"unknown alphabet {alphabet!r}")
    return " ".join(emit_word(w, alphabet) for w in utterance.words)


def convert(text: str, source: str, target: str, inventory: Inventory | None = None) -> str:
    """Re-render a phonetic string from one alphabet into the other."""
    return emit(parse(source, text, inventory), target)


def rhyme_key(word: PhonWord) -> tuple[str, ...]:
    """Phonemes from the first nucleus to the end of the word, stress ignored.

    Two words rhyme exactly when their keys are equal.
    """
    return rhyme_key_of_ids(word.phoneme_ids)


def rhyme_key_of_ids(
    ids: tuple[str, ...], inventory: Inventory | None = None
) -> tuple[str, ...]:
    """rhyme_key() on a flat phoneme-id sequence (no syllabification needed:
    the first syllable's nucleus is the first nucleus-capable phoneme)."""
    inventory = inventory or default_inventory()
    for i, pid in enumerate(ids):
        if inventory.get(pid).nucleus_capable:
            return tuple(ids[i:])
    raise NoNucleus("word has no nucleus")
