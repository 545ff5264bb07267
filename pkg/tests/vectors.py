"""Shared test fixtures: published command strings and expected behaviors."""

from garble.golden import load_golden_commands

GOLDEN = load_golden_commands()
GOLDEN_WAKE = [g for g in GOLDEN if g.stage == "wake"]
GOLDEN_COMMAND = [g for g in GOLDEN if g.stage == "command"]
GOLDEN_COMBINED = [g for g in GOLDEN if g.stage == "combined"]

# nonsense probe that must never come out as a command
NEGATIVE_CONTROL = "v'u: t'3:g spr'0n"

# transcript -> expected action (None = no intent)
LOOSE_INTENT_FIXTURES = [
    ("switch on the light", "LightOn"),
    ("turns off the light", "LightOff"),
    ("turn lights to Red", "SetColorRed"),
    ("turn the lights blue", "SetColorBlue"),
    ("what's my car's paint", None),
]

# frozen data-file checksums (regenerate via scripts/, then review the diff)
DATA_SHA256 = {
    "phonemes.tsv": "3398636fae67156de54de68b4e34fa4a96cc15856fe953aed247217eb3db5556",
    "onsets.txt": "ee96222f07e136f16c01789298713a5d7be4ec3ba76060ea0dbe22675006eaba",
    "le_consonants.txt": "cf2b6946379e170b7182f876debaf94c44ba6e47117a36f02e0a7e18684aaf51",
    "lexicon.tsv": "6e859fda34b32bbaaf44869a2d6b7515058470749f5b102989268a0ecb554bb4",
    "wordlist.txt": "d05f0a2944c5fac6bf6b2f3b7e2e4699f602b39637ba302612dffa8bab791177",
}
