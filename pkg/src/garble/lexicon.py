"""Phonetic dictionary defining the meaningful-word / nonsense boundary.

The shipped reference lexicon pairs a frozen ~100k Unix-style word list
with pronunciations; membership queries are stress-insensitive, and a
rhyme index accelerates collision lookups for the mangler. A grapheme-
to-phoneme provider can rebuild the lexicon from any word list.
"""

from __future__ import annotations

import hashlib
import subprocess
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .inventory import KIRSCHENBAUM, Inventory, default_inventory
from .phonology import NoNucleus, ParseError, PhonWord, parse_word, rhyme_key_of_ids, scan_word

FORMAT_VERSION = "v1"


class EmptyWordList(ValueError):
    pass


class G2PUnavailable(RuntimeError):
    pass


class CorruptLexiconFile(ValueError):
    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


@dataclass(frozen=True)
class LexiconEntry:
    """One word with its Kirschenbaum pronunciation."""

    orthography: str
    kirschenbaum: str
    phoneme_ids: tuple[str, ...] = field(compare=False)  # stress-stripped

    @property
    def phonword(self) -> PhonWord:
        return parse_word(self.kirschenbaum, KIRSCHENBAUM)


def _entry(orthography: str, pron: str, inventory: Inventory) -> LexiconEntry:
    phonemes, _ = scan_word(pron, KIRSCHENBAUM, inventory)
    ids = tuple(p.id for p in phonemes)
    if not any(inventory.get(i).nucleus_capable for i in ids):
        raise NoNucleus(f"{pron!r} has no nucleus")
    return LexiconEntry(orthography, pron, ids)


class Lexicon:
    """Immutable after construction; all queries ignore stress."""

    def __init__(self, entries: list[LexiconEntry], wordlist_sha256: str = ""):
        self.entries = tuple(sorted(set(entries), key=lambda e: (e.orthography, e.kirschenbaum)))
        self.wordlist_sha256 = wordlist_sha256
        self._phon_index: dict[tuple[str, ...], list[str]] = {}
        self._rhyme_index: dict[tuple[str, ...], list[LexiconEntry]] = {}
        for entry in self.entries:
            self._phon_index.setdefault(entry.phoneme_ids, []).append(entry.orthography)
            self._rhyme_index.setdefault(rhyme_key_of_ids(entry.phoneme_ids), []).append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lexicon) and self.entries == other.entries

    def contains(self, word) -> bool:
        """True iff the stress-stripped phoneme sequence matches any entry.

        Accepts a PhonWord or a flat phoneme-id tuple.
        """
        ids = word if isinstance(word, tuple) else tuple(word.phoneme_ids)
        return ids in self._phon_index

    def orthographies(self, word) -> list[str]:
        ids = word if isinstance(word, tuple) else tuple(word.phoneme_ids)
        return list(self._phon_index.get(ids, []))

    def words_matching_rhyme(self, key: tuple[str, ...]) -> list[LexiconEntry]:
        """All entries whose rhyme_key equals ``key``, ordered by orthography."""
        if not key:
            raise ValueError("empty rhyme key")
        return list(self._rhyme_index.get(tuple(key), []))

    def save(self, path) -> None:
        lines = [f"#garble-lexicon\t{FORMAT_VERSION}\twordlist_sha256={self.wordlist_sha256}"]
        for entry in self.entries:
            lines.append(f"{entry.orthography}\t{entry.kirschenbaum}")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")


def load(path=None, inventory: Inventory | None = None) -> Lexicon:
    """Load a lexicon file; defaults to the shipped reference lexicon."""
    inventory = inventory or default_inventory()
    if path is not None:
        text = open(path, encoding="utf-8").read()
    else:
        text = resources.files("garble.data").joinpath("lexicon.tsv").read_text("utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#garble-lexicon"):
        raise CorruptLexiconFile(1, "missing header")
    header = lines[0].split("\t")
    if len(header) != 3 or header[1] != FORMAT_VERSION:
        raise CorruptLexiconFile(1, f"unsupported header {lines[0]!r}")
    wordlist_sha256 = header[2].partition("=")[2]

    entries = []
    for number, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0]:
            raise CorruptLexiconFile(number, f"malformed row {line!r}")
        try:
            entries.append(_entry(parts[0], parts[1], inventory))
        except (KeyError, ParseError, NoNucleus) as err:
            raise CorruptLexiconFile(number, f"bad phoneme field: {err}") from None
    return Lexicon(entries, wordlist_sha256)


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    return load()


def _valid_orthography(word: str) -> bool:
    return bool(word) and all(c.isalpha() or c == "'" for c in word) and word == word.lower()


@dataclass
class BuildResult:
    lexicon: Lexicon
    skipped: list[tuple[str, str]]  # (word, reason)


def build_lexicon(wordlist, g2p, inventory: Inventory | None = None) -> BuildResult:
    """Run every word through the G2P provider and index the parseable ones.

    Unparseable or unpronounceable words are returned in the skip report,
    never silently dropped.
    """
    inventory = inventory or default_inventory()
    words = []
    seen = set()
    for word in wordlist:
        word = word.strip().lower()
        if word and word not in seen:
            seen.add(word)
            words.append(word)
    if not words:
        raise EmptyWordList("no words to build from")

    prons = g2p(words)
    if len(prons) != len(words):
        raise G2PUnavailable(
            f"provider returned {len(prons)} pronunciations for {len(words)} words"
        )

    shalist = hashlib.sha256("\n".join(words).encode("utf-8")).hexdigest()
    entries = []
    skipped = []
    for word, pron in zip(words, prons):
        if not _valid_orthography(word):
            skipped.append((word, "non-alphabetic orthography"))
            continue
        if not pron:
            skipped.append((word, "no pronunciation"))
            continue
        if " " in pron:
            skipped.append((word, "multi-word pronunciation"))
            continue
        try:
            entries.append(_entry(word, pron, inventory))
        except (KeyError, ParseError, NoNucleus) as err:
            skipped.append((word, f"unparseable pronunciation {pron!r}: {err}"))
    return BuildResult(Lexicon(entries, shalist), skipped)


class SubprocessG2P:
    """Batch G2P over a subprocess: words in on stdin (one per line),
    Kirschenbaum strings out on stdout, exit code 0 on success."""

    def __init__(self, command: list[str]):
        self.command = list(command)

    def __call__(self, words: list[str]) -> list[str]:
        try:
            proc = subprocess.run(
                self.command,
                input="\n".join(words) + "\n",
                capture_output=True,
                text=True,
                check=False,
            )
        except OSError as err:
            raise G2PUnavailable(f"cannot run {self.command}: {err}") from None
        if proc.returncode != 0:
            raise G2PUnavailable(
                f"{self.command} exited {proc.returncode}: {proc.stderr.strip()[:200]}"
            )
        return proc.stdout.splitlines()


class MappingG2P:
    """In-memory provider backed by a plain dict (missing words -> '')."""

    def __init__(self, table: dict):
        self.table = dict(table)

    def __call__(self, words: list[str]) -> list[str]:
        return [self.table.get(w, "") for w in words]
