"""Convenience bundle of lexicon, confusion matrix, LM, and calibration."""

from __future__ import annotations

import random

from ..inventory import default_inventory
from ..lexicon import Lexicon, default_lexicon
from ..phonology import PhonUtterance
from .config import CalibrationConfig, default_config
from .confusion import ConfusionMatrix
from .decoder import DecoderIndex, RecognitionResult, WakeResult, decode, wake_detect
from .intent import AssistantState, execute, match_intent
from .langmodel import CommandLM, default_command_lm


class Assistant:
    """One recognition stack with a shared decoder index and device state."""

    def __init__(
        self,
        lexicon: Lexicon | None = None,
        cfg: CalibrationConfig | None = None,
        lm: CommandLM | None = None,
    ):
        self.cfg = cfg or default_config()
        self.inventory = default_inventory()
        self.lexicon = lexicon if lexicon is not None else default_lexicon()
        self.cm = ConfusionMatrix(self.inventory, self.cfg)
        self.lm = lm or default_command_lm(self.cfg.lm_alpha, self.cfg.oov_logprob)
        self.index = DecoderIndex(self.lexicon, self.cm)
        self.state = AssistantState()

    def decode(self, u: PhonUtterance, jitter_rng: random.Random | None = None) -> RecognitionResult:
        return decode(
            u, self.lexicon, self.cm, self.lm, self.cfg, index=self.index, jitter_rng=jitter_rng
        )

    def wake_detect(self, u: PhonUtterance, jitter_rng: random.Random | None = None) -> WakeResult:
        return wake_detect(u, self.cm, self.cfg, jitter_rng=jitter_rng)

    def respond(self, transcript: str) -> str | None:
        """match_intent + execute against the held device state."""
        action = match_intent(transcript)
        if action is None:
            return None
        response, self.state = execute(action, self.state)
        return response
