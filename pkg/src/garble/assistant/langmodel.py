"""Bigram language model over the command grammar.

Trained on the handful of recognized command sentences plus the wake
phrase; in-vocabulary transitions get add-alpha smoothed bigram
probabilities, everything else pays a flat open-vocabulary penalty.
"""

from __future__ import annotations

import math
from functools import lru_cache

START = "<s>"
END = "</s>"

FUNCTION_WORDS = ("the", "to")


class CommandLM:
    def __init__(self, sentences: list[str], alpha: float = 0.1, oov_logprob: float = -8.0):
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        self.alpha = alpha
        self.oov_logprob = oov_logprob
        self.sentences = tuple(s.lower() for s in sentences)
        vocab = set(FUNCTION_WORDS)
        for s in self.sentences:
            vocab.update(s.split())
        self.vocab = frozenset(vocab)
        self._bigrams: dict[tuple[str, str], int] = {}
        self._context_totals: dict[str, int] = {}
        for s in self.sentences:
            tokens = [START] + s.split() + [END]
            for a, b in zip(tokens, tokens[1:]):
                self._bigrams[(a, b)] = self._bigrams.get((a, b), 0) + 1
                self._context_totals[a] = self._context_totals.get(a, 0) + 1
        self._logprob_cache: dict[tuple[str, str], float] = {}

    def prob(self, word: str, context: str) -> float:
        """Smoothed in-vocabulary bigram probability (sums to 1 per context)."""
        outcomes = len(self.vocab) + 1  # + sentence end
        count = self._bigrams.get((context, word), 0)
        total = self._context_totals.get(context, 0)
        return (count + self.alpha) / (total + self.alpha * outcomes)

    def logprob(self, word: str, context: str) -> float:
        """log P(word | context); OOV on either side pays the flat penalty."""
        key = (word, context)
        cached = self._logprob_cache.get(key)
        if cached is not None:
            return cached
        if (context != START and context not in self.vocab) or (
            word != END and word not in self.vocab
        ):
            value = self.oov_logprob
        else:
            value = math.log(self.prob(word, context))
        self._logprob_cache[key] = value
        return value

    def sentence_logprob(self, words: list[str]) -> float:
        tokens = [START] + list(words) + [END]
        return sum(self.logprob(b, a) for a, b in zip(tokens, tokens[1:]))


def command_sentences() -> list[str]:
    from ..mangle import targets, wake_target, who_am_i_target

    return [t.text.lower() for t in targets()] + [
        wake_target().text.lower(),
        who_am_i_target().text.lower(),
    ]


@lru_cache(maxsize=4)
def default_command_lm(alpha: float = 0.1, oov_logprob: float = -8.0) -> CommandLM:
    return CommandLM(command_sentences(), alpha=alpha, oov_logprob=oov_logprob)
