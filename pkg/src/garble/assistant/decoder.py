"""Confusion-weighted utterance decoding against the lexicon.

Each spoken word maps to one lexicon word at weighted-edit-distance cost;
hypotheses may insert a function word between spoken words at a fixed
cost; a bigram command language model reweights the search. decode() runs
a top-K lattice Viterbi; brute_force_decode() exhaustively enumerates the
same hypothesis space on small instances and must agree exactly, so both
share one hypothesis-extension routine (identical float arithmetic).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..inventory import default_inventory
from ..lexicon import Lexicon
from ..phonology import PhonUtterance
from .config import CalibrationConfig
from .confusion import ConfusionMatrix
from .langmodel import CommandLM, END, FUNCTION_WORDS, START
from .intent import match_intent

DECISION_COMMAND = "command"
DECISION_SEARCH = "web_search"
DECISION_INCOMPREHENSION = "incomprehension"


class EmptyUtterance(ValueError):
    pass


class WrongWordCount(ValueError):
    pass


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class RecognitionResult:
    transcript: str
    acoustic_cost: float
    lm_logprob: float
    combined_score: float
    decision: str


@dataclass(frozen=True)
class WakeResult:
    triggered: bool
    score: float


def edit_cost(spoken_ids, word_ids, cm: ConfusionMatrix) -> float:
    """Weighted edit distance between a spoken and a hypothesised word."""
    m, n = len(spoken_ids), len(word_ids)
    prev = [j * cm.ins_cost for j in range(n + 1)]
    for i in range(1, m + 1):
        cur = [i * cm.del_cost] + [0.0] * n
        for j in range(1, n + 1):
            cur[j] = min(
                prev[j - 1] + cm.sub_cost(spoken_ids[i - 1], word_ids[j - 1]),
                prev[j] + cm.del_cost,
                cur[j - 1] + cm.ins_cost,
            )
        prev = cur
    return prev[n]


class DecoderIndex:
    """Per-lexicon arrays for scoring one spoken word against all entries."""

    def __init__(self, lex: Lexicon, cm: ConfusionMatrix):
        self.lexicon = lex
        self.cm = cm
        seq_orths: dict[tuple[str, ...], list[str]] = {}
        for entry in lex.entries:
            seq_orths.setdefault(entry.phoneme_ids, []).append(entry.orthography)
        self.seqs = list(seq_orths)
        self.orths = [sorted(seq_orths[s]) for s in self.seqs]
        self._orth_seqs: dict[str, list[int]] = {}
        for k, orths in enumerate(self.orths):
            for o in orths:
                self._orth_seqs.setdefault(o, []).append(k)
        self._groups: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        by_len: dict[int, list[int]] = {}
        for k, seq in enumerate(self.seqs):
            by_len.setdefault(len(seq), []).append(k)
        for length, ks in by_len.items():
            mat = np.array([cm.encode(self.seqs[k]) for k in ks], dtype=np.int32)
            self._groups[length] = (np.array(ks, dtype=np.int64), mat)
        self._cost_cache: dict[tuple[str, ...], np.ndarray] = {}

    def seq_costs(self, spoken_ids: tuple[str, ...]) -> np.ndarray:
        """Edit cost from one spoken word to every unique entry sequence.

        Same DP recurrence as edit_cost(), batched per sequence length;
        float64 throughout, so the results are bit-identical.
        """
        cached = self._cost_cache.get(spoken_ids)
        if cached is not None:
            return cached
        cm = self.cm
        spoken = cm.encode(spoken_ids)
        m = len(spoken)
        out = np.empty(len(self.seqs), dtype=np.float64)
        for length, (ks, mat) in self._groups.items():
            n_words = mat.shape[0]
            prev = np.tile(
                np.arange(length + 1, dtype=np.float64) * cm.ins_cost, (n_words, 1)
            )
            for i in range(1, m + 1):
                cur = np.empty_like(prev)
                cur[:, 0] = i * cm.del_cost
                sub_row = cm.table[spoken[i - 1]]
                for j in range(1, length + 1):
                    cur[:, j] = np.minimum(
                        np.minimum(
                            prev[:, j - 1] + sub_row[mat[:, j - 1]],
                            prev[:, j] + cm.del_cost,
                        ),
                        cur[:, j - 1] + cm.ins_cost,
                    )
                prev = cur
            out[ks] = prev[:, length]
        self._cost_cache[spoken_ids] = out
        return out

    def word_candidates(
        self, spoken_ids: tuple[str, ...], cfg: CalibrationConfig, always_include=()
    ) -> dict[str, float]:
        """Top-K orthographies by acoustic cost, plus any forced words."""
        costs = self.seq_costs(spoken_ids)
        k = min(cfg.lattice_top_k, len(costs))
        picked = np.argpartition(costs, k - 1)[:k] if k < len(costs) else np.arange(len(costs))
        out: dict[str, float] = {}
        for idx in picked:
            cost = float(costs[idx])
            for orth in self.orths[idx]:
                if orth not in out or cost < out[orth]:
                    out[orth] = cost
        for orth in always_include:
            for idx in self._orth_seqs.get(orth, []):
                cost = float(costs[idx])
                if orth not in out or cost < out[orth]:
                    out[orth] = cost
        return out


# A hypothesis is (transcript, acoustic, lm_logprob); combined score is
# always recomputed as acoustic - lambda * lm so the published invariant
# holds exactly and decode/oracle comparisons share one float expression.


def _combined(acoustic: float, lm_logprob: float, cfg: CalibrationConfig) -> float:
    return acoustic - cfg.lambda_lm * lm_logprob


def _extend(
    transcript: tuple[str, ...],
    acoustic: float,
    lm_logprob: float,
    orth: str,
    word_cost: float,
    insert: str | None,
    lm: CommandLM,
    cfg: CalibrationConfig,
):
    context = transcript[-1] if transcript else START
    if insert is None:
        return (
            transcript + (orth,),
            acoustic + word_cost,
            lm_logprob + lm.logprob(orth, context),
        )
    return (
        transcript + (insert, orth),
        acoustic + cfg.insertion_cost + word_cost,
        lm_logprob + lm.logprob(insert, context) + lm.logprob(orth, insert),
    )


def _insert_options(position: int):
    return (None,) if position == 0 else (None,) + FUNCTION_WORDS


def _finalize(hypotheses, lm: CommandLM, cfg: CalibrationConfig):
    best = None
    for transcript, acoustic, lm_logprob in hypotheses:
        lp = lm_logprob + lm.logprob(END, transcript[-1])
        key = (_combined(acoustic, lp, cfg), transcript)
        if best is None or key < best[0]:
            best = (key, acoustic, lp)
    (combined, transcript), acoustic, lp = best
    return transcript, acoustic, lp, combined


def jitter_cost(u: PhonUtterance, rng: random.Random, scale: float) -> float:
    """Additive per-phoneme channel noise (half-normal), for over-the-air runs."""
    total = 0.0
    for word in u.words:
        for _ in word.phonemes:
            total += abs(rng.gauss(0.0, scale))
    return total


def _decide(transcript: str, combined: float, cfg: CalibrationConfig) -> str:
    if combined <= cfg.tau_cmd and match_intent(transcript) is not None:
        return DECISION_COMMAND
    if combined <= cfg.tau_search:
        return DECISION_SEARCH
    return DECISION_INCOMPREHENSION


def decode(
    u: PhonUtterance,
    lex: Lexicon,
    cm: ConfusionMatrix,
    lm: CommandLM,
    cfg: CalibrationConfig,
    index: DecoderIndex | None = None,
    jitter_rng: random.Random | None = None,
) -> RecognitionResult:
    """Minimum combined-score transcript for the utterance."""
    if len(u.words) == 0:
        raise EmptyUtterance("utterance has no words")
    if index is None or index.lexicon is not lex:
        index = DecoderIndex(lex, cm)
    in_lexicon_vocab = sorted(v for v in lm.vocab if v in index._orth_seqs)

    # states: last transcript word -> best (transcript, acoustic, lm) triple
    states: dict[str, tuple] = {START: ((), 0.0, 0.0)}
    for position, word in enumerate(u.words):
        candidates = index.word_candidates(
            tuple(word.phoneme_ids), cfg, always_include=in_lexicon_vocab
        )
        new_states: dict[str, tuple] = {}
        for transcript, acoustic, lm_logprob in states.values():
            for insert in _insert_options(position):
                for orth, word_cost in candidates.items():
                    h = _extend(
                        transcript, acoustic, lm_logprob, orth, word_cost, insert, lm, cfg
                    )
                    key = (_combined(h[1], h[2], cfg), h[0])
                    cur = new_states.get(orth)
                    if cur is None or key < (_combined(cur[1], cur[2], cfg), cur[0]):
                        new_states[orth] = h
        states = new_states

    transcript, acoustic, lp, combined = _finalize(states.values(), lm, cfg)
    if jitter_rng is not None and cfg.jitter_scale > 0:
        acoustic = acoustic + jitter_cost(u, jitter_rng, cfg.jitter_scale)
        combined = _combined(acoustic, lp, cfg)
    text = " ".join(transcript)
    return RecognitionResult(
        transcript=text,
        acoustic_cost=acoustic,
        lm_logprob=lp,
        combined_score=combined,
        decision=_decide(text, combined, cfg),
    )


def brute_force_decode(
    u: PhonUtterance,
    lex: Lexicon,
    cm: ConfusionMatrix,
    lm: CommandLM,
    cfg: CalibrationConfig,
) -> RecognitionResult:
    """Exhaustive test oracle over the full hypothesis space.

    Must equal decode() exactly, which is why it reuses _extend/_finalize.
    Guarded to small instances.
    """
    if len(u.words) == 0:
        raise EmptyUtterance("utterance has no words")
    if len(lex) == 0:
        raise OracleTooLarge("empty lexicon")
    if len(lex) > 50 or len(u.words) > 3:
        raise OracleTooLarge(f"{len(lex)} words x {len(u.words)} spoken words")

    per_word = []
    for word in u.words:
        costs: dict[str, float] = {}
        for entry in lex.entries:
            cost = edit_cost(word.phoneme_ids, entry.phoneme_ids, cm)
            if entry.orthography not in costs or cost < costs[entry.orthography]:
                costs[entry.orthography] = cost
        per_word.append(costs)

    hypotheses = [((), 0.0, 0.0)]
    for position, candidates in enumerate(per_word):
        extended = []
        for transcript, acoustic, lm_logprob in hypotheses:
            for insert in _insert_options(position):
                for orth, word_cost in candidates.items():
                    extended.append(
                        _extend(
                            transcript, acoustic, lm_logprob, orth, word_cost, insert, lm, cfg
                        )
                    )
        hypotheses = extended

    transcript, acoustic, lp, combined = _finalize(hypotheses, lm, cfg)
    text = " ".join(transcript)
    return RecognitionResult(
        transcript=text,
        acoustic_cost=acoustic,
        lm_logprob=lp,
        combined_score=combined,
        decision=_decide(text, combined, cfg),
    )


def wake_phrase_ids() -> tuple[tuple[str, ...], ...]:
    from ..mangle import wake_target

    return tuple(w.phoneme_ids for w in wake_target().phonetic.words)


def wake_detect(
    u: PhonUtterance,
    cm: ConfusionMatrix,
    cfg: CalibrationConfig,
    jitter_rng: random.Random | None = None,
) -> WakeResult:
    """Match a two-word utterance against the single-phrase wake grammar."""
    if len(u.words) != 2:
        raise WrongWordCount(f"wake detection expects 2 words, got {len(u.words)}")
    score = 0.0
    for word, phrase_ids in zip(u.words, wake_phrase_ids()):
        score += edit_cost(word.phoneme_ids, phrase_ids, cm)
    if jitter_rng is not None and cfg.jitter_scale > 0:
        score += jitter_cost(u, jitter_rng, cfg.jitter_scale)
    return WakeResult(triggered=score <= cfg.tau_wake, score=score)
