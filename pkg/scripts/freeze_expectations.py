#!/usr/bin/env python3
"""Regenerate tests/data/expected_runs.json (seeded stage outcome counts).

Run when the calibration, lexicon data, or generation logic legitimately
changes, then review the diff before committing.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from garble.assistant import Assistant
from garble.experiment import run_stage_combined, run_stage_commands, run_stage_wake

SEED = 1
OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "expected_runs.json"


def main() -> int:
    assistant = Assistant()
    wake = run_stage_wake(assistant, seed=SEED, stop_at=15)
    cmds = run_stage_commands(assistant, seed=SEED, per_command=3)
    plain = run_stage_combined(assistant, wake, cmds, seed=SEED, jitter_on=False)
    jittered = run_stage_combined(assistant, wake, cmds, seed=SEED, jitter_on=True)
    payload = {
        "seed": SEED,
        "wake_successes": [c.kirschenbaum for c in wake],
        "command_successes": [c.kirschenbaum for c in cmds],
        "combined_trials": len(plain),
        "combined_successes": sum(r.success for r in plain),
        "combined_jittered_successes": sum(r.success for r in jittered),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")
    print(json.dumps({k: v for k, v in payload.items() if "successes" not in k or isinstance(v, int)}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
