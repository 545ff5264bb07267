"""Rhyming-nonsense voice command workbench.

Generates nonsense word sequences that rhyme with voice-assistant
commands, evaluates them against a simulated recognition stack, and
measures human comprehensibility through a listening-test survey.
"""

from .inventory import KIRSCHENBAUM, XSAMPA, Phoneme, default_inventory, load_inventory
from .phonology import (
    PhonUtterance,
    PhonWord,
    Syllable,
    convert,
    emit,
    parse,
    rhyme_key,
    syllabify,
)
from .lexicon import Lexicon, LexiconEntry, build_lexicon, default_lexicon

__version__ = "0.1.0"

__all__ = [
    "KIRSCHENBAUM",
    "XSAMPA",
    "Lexicon",
    "LexiconEntry",
    "Phoneme",
    "PhonUtterance",
    "PhonWord",
    "Syllable",
    "build_lexicon",
    "convert",
    "default_inventory",
    "default_lexicon",
    "emit",
    "load_inventory",
    "parse",
    "rhyme_key",
    "syllabify",
]
