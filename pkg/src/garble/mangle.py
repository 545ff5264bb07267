"""Candidate generation by rhyme-preserving onset replacement.

Every word of a target command gets its initial consonant cluster swapped
for a different one from the shipped onset inventory (vowel-initial words
get one prefixed); the wake phrase additionally has the medial consonant
before its final "-le" ending replaced. Results colliding with the
reference lexicon are rejected and redrawn.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .inventory import KIRSCHENBAUM, XSAMPA, Inventory, default_inventory
from .lexicon import Lexicon
from .phonology import PhonUtterance, PhonWord, Syllable, emit, emit_word, parse, rhyme_key

REAL_WORD = "RealWord"
SAME_AS_ORIGINAL = "SameAsOriginal"

WAKE_ACTION = "WakeActivation"


class InventoryExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Rejected:
    """Retriable mangling outcome (not an error)."""

    reason: str  # REAL_WORD | SAME_AS_ORIGINAL


@dataclass(frozen=True)
class OnsetInventory:
    onsets: tuple[tuple[str, ...], ...]
    le_consonants: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.onsets)) != len(self.onsets):
            raise ValueError("duplicate onset clusters")
        for cluster in self.onsets:
            if not cluster:
                raise ValueError("empty onset cluster")


def load_onset_inventory(inventory: Inventory | None = None) -> OnsetInventory:
    inventory = inventory or default_inventory()

    def read_clusters(name):
        text = resources.files("garble.data").joinpath(name).read_text("utf-8")
        out = []
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                cluster = tuple(p.id for p in inventory.tokenize(line, KIRSCHENBAUM))
                if any(not inventory.get(i).is_consonant for i in cluster):
                    raise ValueError(f"non-consonant in onset {line!r}")
                out.append(cluster)
        return tuple(out)

    onsets = read_clusters("onsets.txt")
    le = tuple(c[0] for c in read_clusters("le_consonants.txt"))
    return OnsetInventory(onsets, le)


@lru_cache(maxsize=1)
def default_onset_inventory() -> OnsetInventory:
    return load_onset_inventory()


@dataclass(frozen=True)
class TargetCommand:
    text: str
    phonetic: PhonUtterance
    action_id: str
    category: str


def _target(text, kirsch, action, category):
    return TargetCommand(text, parse(KIRSCHENBAUM, kirsch), action, category)


def targets() -> tuple[TargetCommand, ...]:
    """The five shipped three-word target commands."""
    return (
        _target("what's my name", "w'0ts m'aI n'eIm", "GetUserName", "information_extraction"),
        _target("turn on light", "t'3:n '0n l'aIt", "LightOn", "cyber_physical"),
        _target("turn off light", "t'3:n '0f l'aIt", "LightOff", "cyber_physical"),
        _target("turn light red", "t'3:n l'aIt r'Ed", "SetColorRed", "data_input"),
        _target("turn light blue", "t'3:n l'aIt bl'u:", "SetColorBlue", "data_input"),
    )


def wake_target() -> TargetCommand:
    return _target("Hey Google", "h'eI g'u:g@L", WAKE_ACTION, "wake")


def who_am_i_target() -> TargetCommand:
    """Shipped but excluded from default runs (no known successful mangles)."""
    return _target("who am I", "h'u: '{m 'aI", "GetUserName", "information_extraction")


def target_by_action(action_id: str) -> TargetCommand:
    for t in targets():
        if t.action_id == action_id:
            return t
    raise KeyError(action_id)


@dataclass(frozen=True)
class Replacement:
    word_index: int
    position: str  # "initial" | "medial"
    original: tuple[str, ...]
    new: tuple[str, ...]


@dataclass(frozen=True)
class CandidateCommand:
    candidate_id: str
    target: TargetCommand
    utterance: PhonUtterance
    replacements: tuple[Replacement, ...]
    seed: int
    batch_index: int
    nonsense_verified: bool = False

    @property
    def kirschenbaum(self) -> str:
        return emit(self.utterance, KIRSCHENBAUM)

    @property
    def xsampa(self) -> str:
        return emit(self.utterance, XSAMPA)


@dataclass(frozen=True)
class CombinedCandidate:
    """Wake candidate + command candidate, carrying both provenances."""

    wake: CandidateCommand
    command: CandidateCommand

    @property
    def candidate_id(self) -> str:
        return f"{self.wake.candidate_id}+{self.command.candidate_id}"

    @property
    def utterance(self) -> PhonUtterance:
        return PhonUtterance(self.wake.utterance.words + self.command.utterance.words)


def _replace_onset(word: PhonWord, index: int, onset: tuple[str, ...], inventory) -> PhonWord:
    syllables = list(word.syllables)
    old = syllables[index]
    syllables[index] = Syllable(
        onset=tuple(inventory.get(i) for i in onset),
        nucleus=old.nucleus,
        coda=old.coda,
        stressed=old.stressed,
    )
    return PhonWord(tuple(syllables))


def mangle_word(
    word: PhonWord, rng: random.Random, inv: OnsetInventory, lex: Lexicon,
    inventory: Inventory | None = None,
):
    """One onset-replacement draw; rhyme is preserved by construction."""
    inventory = inventory or default_inventory()
    original = tuple(p.id for p in word.syllables[0].onset)
    draw = rng.choice(inv.onsets)
    if draw == original:
        return Rejected(SAME_AS_ORIGINAL)
    mangled = _replace_onset(word, 0, draw, inventory)
    if lex.contains(mangled.phoneme_ids):
        return Rejected(REAL_WORD)
    return mangled


def mangle_wake(
    rng: random.Random, inv: OnsetInventory, lex: Lexicon,
    inventory: Inventory | None = None,
):
    """Mangle "hey" (onset) and "google" (onset + medial "-le" consonant).

    Draw order: hey onset, google onset, google medial. The google word may
    keep its original onset when the medial consonant changes, but neither
    word may come out identical to the original.
    """
    inventory = inventory or default_inventory()
    wake = wake_target()
    hey, google = wake.phonetic.words

    hey_mangled = mangle_word(hey, rng, inv, lex, inventory)
    if isinstance(hey_mangled, Rejected):
        return hey_mangled

    onset_draw = rng.choice(inv.onsets)
    medial_draw = rng.choice(inv.le_consonants)
    google_onset = tuple(p.id for p in google.syllables[0].onset)
    google_medial = tuple(p.id for p in google.syllables[1].onset)
    if (onset_draw, (medial_draw,)) == (google_onset, google_medial):
        return Rejected(SAME_AS_ORIGINAL)
    google_mangled = _replace_onset(google, 0, onset_draw, inventory)
    google_mangled = _replace_onset(google_mangled, 1, (medial_draw,), inventory)
    if lex.contains(google_mangled.phoneme_ids):
        return Rejected(REAL_WORD)
    return PhonUtterance((hey_mangled, google_mangled))


def _mangle_command(target, rng, inv, lex, inventory):
    words = []
    for word in target.phonetic.words:
        outcome = mangle_word(word, rng, inv, lex, inventory)
        if isinstance(outcome, Rejected):
            return outcome
        words.append(outcome)
    return PhonUtterance(tuple(words))


def _replacements(target: TargetCommand, utterance: PhonUtterance) -> tuple[Replacement, ...]:
    out = []
    for i, (orig, new) in enumerate(zip(target.phonetic.words, utterance.words)):
        for s, (so, sn) in enumerate(zip(orig.syllables, new.syllables)):
            old_onset = tuple(p.id for p in so.onset)
            new_onset = tuple(p.id for p in sn.onset)
            if old_onset != new_onset:
                out.append(
                    Replacement(i, "initial" if s == 0 else "medial", old_onset, new_onset)
                )
    return tuple(out)


def _distinct_bound(target: TargetCommand, inv: OnsetInventory) -> int:
    """Pigeonhole upper bound on distinct manglings (ignores the lexicon)."""
    bound = 1
    if target.action_id == WAKE_ACTION:
        hey, google = target.phonetic.words
        hey_orig = tuple(p.id for p in hey.syllables[0].onset)
        bound *= len(inv.onsets) - (1 if hey_orig in inv.onsets else 0)
        bound *= len(inv.onsets) * len(inv.le_consonants) - 1
        return bound
    for word in target.phonetic.words:
        orig = tuple(p.id for p in word.syllables[0].onset)
        bound *= len(inv.onsets) - (1 if orig in inv.onsets else 0)
    return bound


MAX_DRAWS_PER_CANDIDATE = 1000


def generate_batch(
    target: TargetCommand,
    n: int,
    seed: int,
    inv: OnsetInventory | None = None,
    lex: Lexicon | None = None,
    inventory: Inventory | None = None,
) -> list[CandidateCommand]:
    """Exactly n distinct nonsense-verified candidates, deterministic per seed.

    The candidate at batch index i depends only on (seed, i) and the
    candidates before it, so re-runs reproduce the list element-wise.
    """
    from .lexicon import default_lexicon

    if n < 1:
        raise ValueError("n must be >= 1")
    inv = inv or default_onset_inventory()
    lex = lex or default_lexicon()
    inventory = inventory or default_inventory()
    if n > _distinct_bound(target, inv):
        raise InventoryExhausted(
            f"{n} candidates requested but at most {_distinct_bound(target, inv)} exist"
        )

    is_wake = target.action_id == WAKE_ACTION
    seen = set()
    out = []
    for index in range(n):
        rng = random.Random(f"{seed}:{index}")
        utterance = None
        for _ in range(MAX_DRAWS_PER_CANDIDATE):
            outcome = (
                mangle_wake(rng, inv, lex, inventory)
                if is_wake
                else _mangle_command(target, rng, inv, lex, inventory)
            )
            if isinstance(outcome, Rejected):
                continue
            key = tuple(w.phoneme_ids for w in outcome.words)
            if key in seen:
                continue
            utterance = outcome
            seen.add(key)
            break
        if utterance is None:
            raise InventoryExhausted(
                f"no distinct valid candidate after {MAX_DRAWS_PER_CANDIDATE} draws "
                f"(index {index}, target {target.text!r})"
            )
        out.append(
            CandidateCommand(
                candidate_id=f"{target.action_id.lower()}-{seed}-{index:04d}",
                target=target,
                utterance=utterance,
                replacements=_replacements(target, utterance),
                seed=seed,
                batch_index=index,
                nonsense_verified=True,
            )
        )
    return out


def combine(
    wake_cands: list[CandidateCommand], cmd_cands: list[CandidateCommand]
) -> list[CombinedCandidate]:
    """Full cartesian product, wake-major order."""
    if not wake_cands or not cmd_cands:
        raise ValueError("both candidate lists must be non-empty")
    return [CombinedCandidate(w, c) for w in wake_cands for c in cmd_cands]


def validate_candidate(
    utterance: PhonUtterance,
    target: TargetCommand,
    lex: Lexicon,
    inv: OnsetInventory | None = None,
) -> list[str]:
    """Violations of the candidate validity predicate (empty when valid).

    Command words must keep the target word's rhyme with a different,
    inventory-listed onset; the wake phrase's second word instead keeps its
    "-le" ending with an inventory onset and a listed medial consonant.
    Every word must be absent from the lexicon.
    """
    inv = inv or default_onset_inventory()
    problems = []
    if len(utterance.words) != len(target.phonetic.words):
        return [f"word count {len(utterance.words)} != {len(target.phonetic.words)}"]
    is_wake = target.action_id == WAKE_ACTION
    for i, (word, orig) in enumerate(zip(utterance.words, target.phonetic.words)):
        name = emit_word(word, KIRSCHENBAUM)
        if lex.contains(word.phoneme_ids):
            problems.append(f"word {i} {name!r} is a real word")
        if word.phoneme_ids == orig.phoneme_ids:
            problems.append(f"word {i} {name!r} identical to target word")
        onset = tuple(p.id for p in word.syllables[0].onset)
        if is_wake and i == 1:
            # wake "google" slot: "-le" ending preserved, medial from the le set
            if word.phoneme_ids[-1] != "l=":
                problems.append(f"word {i} {name!r} lost the -le ending")
            medial = tuple(p.id for p in word.syllables[-1].onset)
            if len(medial) != 1 or medial[0] not in inv.le_consonants:
                problems.append(f"word {i} {name!r} medial {medial} not a le-consonant")
            if word.syllables[0].nucleus.id != orig.syllables[0].nucleus.id:
                problems.append(f"word {i} {name!r} changed the stressed nucleus")
            if onset not in inv.onsets:
                problems.append(f"word {i} {name!r} onset {onset} not in inventory")
            continue
        if rhyme_key(word) != rhyme_key(orig):
            problems.append(f"word {i} {name!r} does not rhyme with the target word")
        orig_onset = tuple(p.id for p in orig.syllables[0].onset)
        if onset == orig_onset:
            problems.append(f"word {i} {name!r} kept the original onset")
        if onset not in inv.onsets:
            problems.append(f"word {i} {name!r} onset {onset} not in inventory")
    return problems


def write_manifest(candidates, path) -> None:
    """Line-delimited candidate manifest (one JSON object per line)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for c in candidates:
            fh.write(json.dumps(manifest_row(c), sort_keys=True) + "\n")


def manifest_row(c) -> dict:
    return {
        "candidate_id": c.candidate_id,
        "action": c.target.action_id if isinstance(c, CandidateCommand) else c.command.target.action_id,
        "kirschenbaum": emit(c.utterance, KIRSCHENBAUM),
        "xsampa": emit(c.utterance, XSAMPA),
        "seed": c.seed if isinstance(c, CandidateCommand) else c.command.seed,
        "batch_index": c.batch_index if isinstance(c, CandidateCommand) else c.command.batch_index,
        "nonsense_verified": (
            c.nonsense_verified
            if isinstance(c, CandidateCommand)
            else c.wake.nonsense_verified and c.command.nonsense_verified
        ),
    }


def read_manifest(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
