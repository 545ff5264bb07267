#!/usr/bin/env python3
"""Check the committed calibration against the golden command set.

Prints per-item margins for the wake threshold, the command threshold,
and the negative control; exits nonzero if anything regressed. Run after
touching the confusion-cost model, the language model, the lexicon data,
or src/garble/data/calibration.cfg.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from garble.assistant import Assistant
from garble.assistant.intent import match_intent
from garble.golden import load_golden_commands
from garble.mangle import targets
from garble.phonology import parse

NEGATIVE_CONTROL = "v'u: t'3:g spr'0n"


def main() -> int:
    assistant = Assistant()
    cfg = assistant.cfg
    failures = 0

    print(f"tau_wake={cfg.tau_wake}  tau_cmd={cfg.tau_cmd}  tau_search={cfg.tau_search}")
    print()

    for t in targets():
        r = assistant.decode(t.phonetic)
        ok = r.acoustic_cost == 0.0 and r.decision == "command" and match_intent(r.transcript) == t.action_id
        failures += not ok
        print(f"{'ok ' if ok else 'BAD'} plain {t.text!r}: ac={r.acoustic_cost:.3f} "
              f"combined={r.combined_score:.3f} margin={cfg.tau_cmd - r.combined_score:+.3f}")
    wake_plain = assistant.wake_detect(parse("kirschenbaum", "h'eI g'u:g@L"))
    ok = wake_plain.triggered and wake_plain.score == 0.0
    failures += not ok
    print(f"{'ok ' if ok else 'BAD'} plain wake: score={wake_plain.score:.3f}")
    print()

    for cmd in load_golden_commands():
        u = parse(cmd.alphabet, cmd.adversarial)
        if cmd.stage == "wake":
            r = assistant.wake_detect(u)
            ok = r.triggered
            failures += not ok
            print(f"{'ok ' if ok else 'BAD'} wake {cmd.adversarial!r}: score={r.score:.3f} "
                  f"margin={cfg.tau_wake - r.score:+.3f}")
        elif cmd.stage == "command":
            r = assistant.decode(u)
            action = match_intent(r.transcript) if r.decision == "command" else None
            ok = action == cmd.action
            failures += not ok
            print(f"{'ok ' if ok else 'BAD'} cmd  {cmd.adversarial!r}: -> {r.transcript!r} "
                  f"combined={r.combined_score:.3f} margin={cfg.tau_cmd - r.combined_score:+.3f}")
    print()

    r = assistant.decode(parse("kirschenbaum", NEGATIVE_CONTROL))
    ok = r.decision != "command"
    failures += not ok
    print(f"{'ok ' if ok else 'BAD'} control {NEGATIVE_CONTROL!r}: -> {r.transcript!r} "
          f"combined={r.combined_score:.3f} decision={r.decision}")

    print()
    print("all good" if failures == 0 else f"{failures} calibration failures")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
