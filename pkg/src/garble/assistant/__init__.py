"""Desk-scale stand-in for a voice assistant's recognition stack.

Decodes phoneme utterances into word transcripts by confusion-weighted
matching against the lexicon, biased by a command-grammar language model,
then applies loose intent matching and a tiny simulated device.
"""

from .config import CalibrationConfig, load_config, save_config, default_config
from .confusion import ConfusionMatrix
from .langmodel import CommandLM, default_command_lm
from .decoder import (
    DecoderIndex,
    EmptyUtterance,
    OracleTooLarge,
    RecognitionResult,
    WakeResult,
    WrongWordCount,
    brute_force_decode,
    decode,
    edit_cost,
    jitter_cost,
    wake_detect,
)
from .intent import (
    ACTIONS,
    AssistantState,
    execute,
    match_intent,
)
from .facade import Assistant

__all__ = [
    "ACTIONS",
    "Assistant",
    "AssistantState",
    "CalibrationConfig",
    "CommandLM",
    "ConfusionMatrix",
    "DecoderIndex",
    "EmptyUtterance",
    "OracleTooLarge",
    "RecognitionResult",
    "WakeResult",
    "WrongWordCount",
    "brute_force_decode",
    "decode",
    "default_command_lm",
    "default_config",
    "edit_cost",
    "execute",
    "jitter_cost",
    "load_config",
    "match_intent",
    "save_config",
    "wake_detect",
]
