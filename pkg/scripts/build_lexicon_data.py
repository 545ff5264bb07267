#!/usr/bin/env python3
"""Regenerate the frozen reference word list and lexicon under src/garble/data/.

Sources (dev-time only, fetched with npm; the committed outputs are what the
package uses at runtime):

  wordlist-english  SCOWL-derived word lists (the modern Unix words source)
  ipa-dict          en_UK: British English IPA pronunciations (espeak-style)

Usage:
  npm install --prefix /tmp/lexsrc wordlist-english ipa-dict
  python scripts/build_lexicon_data.py [--npm-prefix /tmp/lexsrc]

The script maps IPA onto the shipped phoneme inventory, forces canonical
pronunciations for the command vocabulary, and excludes the handful of rare
words whose pronunciation collides with the shipped golden adversarial
commands (the nonsense filter must reject none of them).
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from garble.golden import load_golden_commands
from garble.inventory import KIRSCHENBAUM, default_inventory
from garble.lexicon import MappingG2P, build_lexicon
from garble.phonology import parse

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "garble" / "data"

ZWJ = "‍"

# IPA unit -> inventory phoneme id, longest units first.
IPA_UNITS = [
    (f"e{ZWJ}ɪ", "eI"),
    (f"a{ZWJ}ɪ", "aI"),
    (f"ɔ{ZWJ}ɪ", "OI"),
    (f"ə{ZWJ}ʊ", "@U"),
    (f"a{ZWJ}ʊ", "aU"),
    (f"i{ZWJ}ə", "I@"),
    (f"ɪ{ZWJ}ə", "I@"),
    (f"e{ZWJ}ə", "e@"),
    (f"ʊ{ZWJ}ə", "U@"),
    (f"t{ZWJ}ʃ", "tS"),
    (f"d{ZWJ}ʒ", "dZ"),
    (f"ə{ZWJ}l", "l="),
    ("iː", "i:"),
    ("uː", "u:"),
    ("ɑː", "A:"),
    ("ɔː", "O:"),
    ("ɜː", "3:"),
    ("ɪ", "I"),
    ("ɛ", "E"),
    ("æ", "{"),
    ("ɒ", "Q"),
    ("ʊ", "U"),
    ("ʌ", "V"),
    ("ə", "@"),
    ("ɐ", "@"),
    ("i", "i:"),
    ("u", "u:"),
    ("ɡ", "g"),
    ("ʃ", "S"),
    ("ʒ", "Z"),
    ("θ", "T"),
    ("ð", "D"),
    ("ŋ", "N"),
    ("ɹ", "r"),
    ("r", "r"),
] + [(c, c) for c in "pbtdkfvszhmnlwj"]

# Canonical command-vocabulary pronunciations (Kirschenbaum).
FORCED_PRONUNCIATIONS = {
    "what's": "w'0ts",
    "my": "m'aI",
    "name": "n'eIm",
    "turn": "t'3:n",
    "on": "'0n",
    "off": "'0f",
    "light": "l'aIt",
    "lights": "l'aIts",
    "red": "r'Ed",
    "blue": "bl'u:",
    "hey": "h'eI",
    "who": "h'u:",
    "am": "'{m",
    "i": "'aI",
    "the": "D@",
    "to": "t'u:",
    # attention-test vocabulary (for clip synthesis)
    "are": "'A:",
}


def ipa_to_kirschenbaum(ipa: str, inventory) -> str:
    """Convert one espeak-style IPA pronunciation; '' if unmappable."""
    ipa = ipa.strip("/")
    ids = []
    stress_before = None
    pos = 0
    while pos < len(ipa):
        ch = ipa[pos]
        if ch == "ˈ":  # primary stress: keep the first one only
            if stress_before is None:
                stress_before = len(ids)
            pos += 1
            continue
        if ch == "ˌ" or ch == ZWJ:  # secondary stress / dangling joiner
            pos += 1
            continue
        for unit, pid in IPA_UNITS:
            if ipa.startswith(unit, pos):
                # Syllabic l directly after a vowel cannot be spelled "@L"
                # unambiguously; use the equivalent schwa + l sequence.
                if pid == "l=" and (not ids or inventory.get(ids[-1]).is_vowel):
                    ids.extend(["@", "l"])
                else:
                    ids.append(pid)
                pos += len(unit)
                break
        else:
            return ""
    out = []
    for i, pid in enumerate(ids):
        if i == stress_before:
            out.append("'")
        out.append(inventory.get(pid).rendering(KIRSCHENBAUM))
    return "".join(out)


def load_sources(npm_prefix: str) -> tuple[list[str], dict[str, str]]:
    script = """
    const fs = require('fs');
    const m = require(process.argv[1] + '/node_modules/ipa-dict/lib/en_UK.js');
    const ipa = {};
    for (const [w, prons] of m) ipa[w] = prons[0];
    const base = process.argv[1] + '/node_modules/wordlist-english/';
    const all = new Set();
    for (const variant of ['english', 'british']) {
      for (const lvl of [10, 20, 35, 40, 50, 55, 60, 70]) {
        const f = base + variant + '-words-' + lvl + '.json';
        if (fs.existsSync(f)) for (const w of JSON.parse(fs.readFileSync(f, 'utf8'))) all.add(w);
      }
    }
    process.stdout.write(JSON.stringify({words: [...all], ipa}));
    """
    proc = subprocess.run(
        ["node", "-e", script, npm_prefix], capture_output=True, text=True, check=True
    )
    payload = json.loads(proc.stdout)
    return payload["words"], payload["ipa"]


def golden_word_ids(inventory) -> set[tuple[str, ...]]:
    """Stress-stripped phoneme ids of every shipped golden adversarial word."""
    ids = set()
    for cmd in load_golden_commands():
        for word in parse(cmd.alphabet, cmd.adversarial).words:
            ids.add(word.phoneme_ids)
    return ids


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--npm-prefix", default="/tmp/lexsrc")
    args = ap.parse_args()

    inventory = default_inventory()
    raw_words, ipa = load_sources(args.npm_prefix)

    table = {}
    for word, pron in ipa.items():
        table[word] = ipa_to_kirschenbaum(pron, inventory)
    table.update(FORCED_PRONUNCIATIONS)

    words = sorted(
        {w for w in raw_words if w == w.lower() and all(c.isalpha() or c == "'" for c in w)}
        | set(FORCED_PRONUNCIATIONS)
    )

    g2p = MappingG2P(table)
    result = build_lexicon(words, g2p, inventory)
    forbidden = golden_word_ids(inventory)
    collisions = sorted(
        e.orthography for e in result.lexicon.entries if e.phoneme_ids in forbidden
    )
    if collisions:
        print(f"excluding golden-command collisions: {', '.join(collisions)}")
        words = [w for w in words if w not in set(collisions)]
        result = build_lexicon(words, g2p, inventory)

    assert len(result.lexicon) == len(words) - len(result.skipped)

    wordlist_path = DATA_DIR / "wordlist.txt"
    with open(wordlist_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(words) + "\n")
    result.lexicon.save(DATA_DIR / "lexicon.tsv")

    print(f"word list: {len(words)} words -> {wordlist_path}")
    print(f"lexicon:   {len(result.lexicon)} entries, {len(result.skipped)} skipped")
    reasons = {}
    for _, reason in result.skipped:
        reasons[reason.split(":")[0]] = reasons.get(reason.split(":")[0], 0) + 1
    for reason, count in sorted(reasons.items(), key=lambda kv: -kv[1]):
        print(f"  skipped ({reason}): {count}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
