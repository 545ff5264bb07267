"""Command-line entry points for the workbench.

Exit codes: 0 success, 2 budget exhausted, 1 any other error.
Environment: GARBLE_OUT_DIR overrides --out-dir, GARBLE_CONFIG the
calibration config path.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--config", default=os.environ.get("GARBLE_CONFIG"))
    parser.add_argument("--out-dir", default=os.environ.get("GARBLE_OUT_DIR", "out"))


def _config(args):
    from .assistant import load_config, default_config

    return load_config(args.config) if args.config else default_config()


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _assistant(args):
    from .assistant import Assistant

    return Assistant(cfg=_config(args))


def cmd_gen(args) -> int:
    from .mangle import generate_batch, targets, wake_target, write_manifest

    if args.target == "wake":
        target = wake_target()
    else:
        matches = [t for t in targets() if t.action_id == args.target or t.text == args.target]
        if not matches:
            known = ", ".join(t.action_id for t in targets())
            print(f"unknown target {args.target!r} (known: wake, {known})", file=sys.stderr)
            return EXIT_ERROR
        target = matches[0]
    batch = generate_batch(target, args.n, args.seed)
    path = _out_dir(args) / f"candidates-{target.action_id.lower()}-{args.seed}.jsonl"
    write_manifest(batch, path)
    print(f"{len(batch)} candidates -> {path}")
    return EXIT_OK


def cmd_lexicon_build(args) -> int:
    from .lexicon import SubprocessG2P, build_lexicon

    words = Path(args.wordlist).read_text("utf-8").split()
    result = build_lexicon(words, SubprocessG2P(args.g2p_command))
    result.lexicon.save(args.output)
    print(f"{len(result.lexicon)} entries -> {args.output} ({len(result.skipped)} skipped)")
    if args.skip_report:
        with open(args.skip_report, "w", encoding="utf-8", newline="\n") as fh:
            for word, reason in result.skipped:
                fh.write(f"{word}\t{reason}\n")
    return EXIT_OK


def cmd_stage_wake(args) -> int:
    from .experiment import RunLog, run_stage_wake
    from .mangle import write_manifest

    out = _out_dir(args)
    log = RunLog(out / "runlog.jsonl")
    successes = run_stage_wake(
        _assistant(args), args.seed, stop_at=args.stop_at, log=log, max_batches=args.max_batches
    )
    write_manifest(successes, out / "wake-successes.jsonl")
    print(f"{len(successes)} wake successes -> {out / 'wake-successes.jsonl'}")
    return EXIT_OK


def cmd_stage_commands(args) -> int:
    from .experiment import RunLog, run_stage_commands
    from .mangle import write_manifest

    out = _out_dir(args)
    log = RunLog(out / "runlog.jsonl")
    successes = run_stage_commands(
        _assistant(args), args.seed, per_command=args.per_command, log=log,
        max_batches=args.max_batches,
    )
    write_manifest(successes, out / "command-successes.jsonl")
    print(f"{len(successes)} command successes -> {out / 'command-successes.jsonl'}")
    return EXIT_OK


def _candidates_from_manifest(path):
    from .mangle import CandidateCommand, read_manifest, targets, wake_target, WAKE_ACTION
    from .phonology import parse

    by_action = {t.action_id: t for t in targets()}
    by_action[WAKE_ACTION] = wake_target()
    out = []
    for row in read_manifest(path):
        target = by_action[row["action"]]
        utterance = parse("kirschenbaum", row["kirschenbaum"])
        out.append(
            CandidateCommand(
                candidate_id=row["candidate_id"],
                target=target,
                utterance=utterance,
                replacements=(),
                seed=row["seed"],
                batch_index=row["batch_index"],
                nonsense_verified=row["nonsense_verified"],
            )
        )
    return out


def cmd_stage_combined(args) -> int:
    from .experiment import RunLog, run_stage_combined

    out = _out_dir(args)
    wake = _candidates_from_manifest(args.wake_manifest or out / "wake-successes.jsonl")
    cmds = _candidates_from_manifest(args.command_manifest or out / "command-successes.jsonl")
    log = RunLog(out / "runlog.jsonl")
    records = run_stage_combined(
        _assistant(args),
        wake,
        cmds,
        args.seed,
        trials_per_combo=args.trials_per_combo,
        jitter_on=args.jitter,
        log=log,
    )
    successes = sum(r.success for r in records)
    print(f"{successes} successful of {len(records)} combined trials")
    return EXIT_OK


def cmd_report(args) -> int:
    from .experiment import EmptyLog, RunLog, report

    log = RunLog(args.runlog or Path(args.out_dir) / "runlog.jsonl")
    try:
        print(report(log.records()))
    except EmptyLog:
        print("run log is empty", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_serve_survey(args) -> int:
    import uvicorn

    from .survey import SurveyStore, build_http_app, load_clips_manifest

    clips = load_clips_manifest(args.clips_manifest)
    store = SurveyStore(clips, out_dir=_out_dir(args))
    uvicorn.run(build_http_app(store), host=args.host, port=args.port)
    return EXIT_OK


def cmd_survey_metrics(args) -> int:
    from .survey import (
        SurveyResponse,
        SurveyStore,
        load_clips_manifest,
        survey_metrics,
        create_session,
    )

    clips = load_clips_manifest(args.clips_manifest)
    sessions = {}
    with open(args.responses, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            sid = row.pop("session_id")
            order = row.pop("clip_order", None)
            if sid not in sessions:
                sessions[sid] = create_session(clips, seed=sid, session_id=sid)
            sessions[sid].responses[row["clip_id"]] = SurveyResponse(**row)
    print(json.dumps(survey_metrics(list(sessions.values()), clips), indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="garble", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a candidate batch")
    _add_common(p)
    p.add_argument("--target", required=True, help="wake or an action id / command text")
    p.add_argument("--n", type=int, default=100)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("lexicon-build", help="build a lexicon with an external G2P")
    _add_common(p)
    p.add_argument("--wordlist", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--skip-report")
    p.add_argument("g2p_command", nargs="+", help="G2P command reading words on stdin")
    p.set_defaults(func=cmd_lexicon_build)

    p = sub.add_parser("stage-wake", help="wake-word stage")
    _add_common(p)
    p.add_argument("--stop-at", type=int, default=15)
    p.add_argument("--max-batches", type=int, default=50)
    p.set_defaults(func=cmd_stage_wake)

    p = sub.add_parser("stage-commands", help="command stage")
    _add_common(p)
    p.add_argument("--per-command", type=int, default=3)
    p.add_argument("--max-batches", type=int, default=50)
    p.set_defaults(func=cmd_stage_commands)

    p = sub.add_parser("stage-combined", help="combination stage")
    _add_common(p)
    p.add_argument("--wake-manifest")
    p.add_argument("--command-manifest")
    p.add_argument("--trials-per-combo", type=int, default=1)
    p.add_argument("--jitter", action="store_true", help="enable channel jitter")
    p.set_defaults(func=cmd_stage_combined)

    p = sub.add_parser("report", help="render run-log tables")
    _add_common(p)
    p.add_argument("--runlog")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve-survey", help="serve the listening-test backend")
    _add_common(p)
    p.add_argument("--clips-manifest", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve_survey)

    p = sub.add_parser("survey-metrics", help="aggregate survey responses")
    _add_common(p)
    p.add_argument("--clips-manifest", required=True)
    p.add_argument("--responses", required=True)
    p.set_defaults(func=cmd_survey_metrics)

    return parser


def main(argv=None) -> int:
    from .experiment import BudgetExhausted

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception as err:  # CLI boundary: fail with a message, not a trace
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
