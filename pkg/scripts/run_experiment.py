#!/usr/bin/env python3
"""Run the whole pipeline and leave a survey-ready output directory.

Stages: wake-word search, per-command search, 15x15 combination, report,
clip synthesis (null adapter by default), and a clips manifest the survey
backend can serve:

  python scripts/run_experiment.py --seed 1 --out-dir out/demo
  garble serve-survey --clips-manifest out/demo/clips/manifest.jsonl

Pass --synth-command "espeak-like {input} {output}" to drive a real local
synthesizer instead of silent placeholders.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from garble.assistant import Assistant
from garble.experiment import (
    RunLog,
    report,
    run_stage_combined,
    run_stage_commands,
    run_stage_wake,
)
from garble.lexicon import default_lexicon
from garble.survey import ATTENTION_TEXTS
from garble.synth import (
    Manifest,
    NullAdapter,
    SubprocessAdapter,
    concat_with_pause,
    request_for,
    synthesize,
)

PAUSE_MS = 300


def attention_kirschenbaum(text: str) -> str:
    lex = default_lexicon()
    by_orth = {}
    for e in lex.entries:
        by_orth.setdefault(e.orthography, e)
    return " ".join(by_orth[w].kirschenbaum for w in text.split())


class _TextCandidate:
    def __init__(self, candidate_id, kirschenbaum):
        self.candidate_id = candidate_id
        self.kirschenbaum = kirschenbaum


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out-dir", default="out/experiment")
    ap.add_argument("--jitter", action="store_true")
    ap.add_argument("--synth-command", help="local synthesizer template with {input} {output}")
    ap.add_argument("--voice", default="")
    args = ap.parse_args()

    out = Path(args.out_dir)
    clips_dir = out / "clips"
    clips_dir.mkdir(parents=True, exist_ok=True)
    assistant = Assistant()
    log = RunLog(out / "runlog.jsonl")

    wake = run_stage_wake(assistant, args.seed, stop_at=15, log=log)
    print(f"wake stage: {len(wake)} activations")
    cmds = run_stage_commands(assistant, args.seed, per_command=3, log=log)
    print(f"command stage: {len(cmds)} action-correct decodes")
    combined = run_stage_combined(
        assistant, wake, cmds, args.seed, jitter_on=args.jitter, log=log
    )
    combined_ok = [r for r in combined if r.success]
    print(f"combined stage: {len(combined_ok)}/{len(combined)} successful")

    (out / "report.md").write_text(report(log.records()), encoding="utf-8")
    print(f"report -> {out / 'report.md'}")

    adapter = (
        SubprocessAdapter(args.synth_command) if args.synth_command else NullAdapter(900)
    )
    manifest = Manifest(clips_dir / "manifest.jsonl")

    # survey clip set: 3 wake + 5 commands (one per action) + 4 combined,
    # mirroring a 12-clip listening test, plus the two attention clips
    chosen = []
    for c in wake[:3]:
        chosen.append((c, "", True))
    seen_actions = set()
    for c in cmds:
        if c.target.action_id not in seen_actions:
            seen_actions.add(c.target.action_id)
            chosen.append((c, c.target.text, True))

    combined_pick = combined_ok[:4]
    by_id = {c.candidate_id: c for c in wake + cmds}
    needed = {c.candidate_id for c, _, _ in chosen}
    for record in combined_pick:
        needed.update(record.candidate_id.split("+"))

    clip_paths = {}
    for cid in sorted(needed):
        req = request_for(by_id[cid], args.voice, clips_dir)
        clip_paths[cid] = synthesize(req, adapter, manifest)

    combined_rows = []
    for record in combined_pick:
        wake_id, cmd_id = record.candidate_id.split("+")
        joined = concat_with_pause(
            clip_paths[wake_id],
            clip_paths[cmd_id],
            PAUSE_MS,
            clips_dir / f"{record.candidate_id}.wav",
        )
        combined_rows.append((record, joined))

    rows = manifest.rows()
    extra = []
    for record, clip in combined_rows:
        extra.append(
            {
                "candidate_id": record.candidate_id,
                "clip_path": clip.path,
                "duration_ms": clip.duration_ms,
                "target_text": record.target,
                "machine_success": True,
            }
        )
    for i, text in enumerate(ATTENTION_TEXTS, start=1):
        candidate = _TextCandidate(f"attention-{i}", attention_kirschenbaum(text))
        req = request_for(candidate, args.voice, clips_dir)
        clip = synthesize(req, adapter, manifest)
        extra.append(
            {
                "candidate_id": candidate.candidate_id,
                "clip_path": clip.path,
                "duration_ms": clip.duration_ms,
                "is_attention": True,
                "expected_text": text,
            }
        )

    # enrich manifest rows with survey metadata
    by_cid = {r["candidate_id"]: r for r in rows}
    final = []
    for candidate, target_text, machine_success in chosen:
        row = by_cid[candidate.candidate_id]
        row["target_text"] = target_text
        row["machine_success"] = machine_success
        final.append(row)
    final.extend(extra)
    with open(clips_dir / "manifest.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for row in final:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    print(f"{len(final)} survey clips -> {clips_dir / 'manifest.jsonl'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
