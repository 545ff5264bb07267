"""Experiment orchestration: wake stage, command stage, combination stage.

Candidates are generated in batches of 100 and tested until the stage's
success quota is met; every trial (success or not) is appended to the run
log. Identical seeds and config reproduce the log byte-for-byte except
for timestamps.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .assistant import Assistant
from .assistant.intent import execute, AssistantState
from .mangle import (
    CandidateCommand,
    TargetCommand,
    combine,
    generate_batch,
    targets,
    wake_target,
    WAKE_ACTION,
)

BATCH_SIZE = 100

STAGE_WAKE = "wake_file"
STAGE_COMMAND = "command_file"
STAGE_COMBINED = "combined_air"


class BudgetExhausted(RuntimeError):
    def __init__(self, max_batches: int, message: str):
        self.max_batches = max_batches
        super().__init__(message)


class EmptyLog(ValueError):
    pass


@dataclass(frozen=True)
class TrialRecord:
    trial_id: str
    stage: str
    candidate_id: str
    target: str
    action_expected: str
    kirschenbaum: str
    transcript: str
    decision: str
    action_triggered: str
    success: bool
    seed: int
    timestamp: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class RunLog:
    """Append-only, line-delimited trial records."""

    def __init__(self, path):
        self.path = Path(path)

    def append(self, record: TrialRecord) -> None:
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write(record.to_json() + "\n")

    def records(self) -> list[TrialRecord]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    out.append(TrialRecord(**json.loads(line)))
        return out


def _batch_seed(seed: int, stage: str, batch: int) -> int:
    return random.Random(f"{seed}:{stage}:{batch}").getrandbits(32)


def run_stage_wake(
    assistant: Assistant,
    seed: int,
    stop_at: int = 15,
    log: RunLog | None = None,
    max_batches: int = 50,
) -> list[CandidateCommand]:
    """Generate and test wake-word candidates until stop_at activations."""
    wake = wake_target()
    successes: list[CandidateCommand] = []
    success_keys = set()
    trial = 0
    for batch_index in range(max_batches):
        if len(successes) >= stop_at:
            break
        batch = generate_batch(
            wake, BATCH_SIZE, _batch_seed(seed, STAGE_WAKE, batch_index), lex=assistant.lexicon
        )
        for candidate in batch:
            if len(successes) >= stop_at:
                break
            if candidate.kirschenbaum in success_keys:
                continue
            result = assistant.wake_detect(candidate.utterance)
            success = result.triggered
            if success:
                successes.append(candidate)
                success_keys.add(candidate.kirschenbaum)
            if log is not None:
                log.append(
                    TrialRecord(
                        trial_id=f"{STAGE_WAKE}-{seed}-{trial:06d}",
                        stage=STAGE_WAKE,
                        candidate_id=candidate.candidate_id,
                        target=wake.text,
                        action_expected=WAKE_ACTION,
                        kirschenbaum=candidate.kirschenbaum,
                        transcript="hey Google" if success else "",
                        decision="wake" if success else "no_wake",
                        action_triggered="assistant activated" if success else "",
                        success=success,
                        seed=seed,
                        timestamp=_now(),
                    )
                )
            trial += 1
    if len(successes) < stop_at:
        raise BudgetExhausted(
            max_batches, f"only {len(successes)}/{stop_at} wake successes in {max_batches} batches"
        )
    return successes


def run_stage_commands(
    assistant: Assistant,
    seed: int,
    per_command: int = 3,
    command_targets: tuple[TargetCommand, ...] | None = None,
    log: RunLog | None = None,
    max_batches: int = 50,
) -> list[CandidateCommand]:
    """Per target command, stop after per_command action-correct decodes."""
    command_targets = command_targets if command_targets is not None else targets()
    successes: list[CandidateCommand] = []
    for target in command_targets:
        found = 0
        trial = 0
        success_keys = set()
        for batch_index in range(max_batches):
            if found >= per_command:
                break
            batch = generate_batch(
                target,
                BATCH_SIZE,
                _batch_seed(seed, target.action_id, batch_index),
                lex=assistant.lexicon,
            )
            for candidate in batch:
                if found >= per_command:
                    break
                if candidate.kirschenbaum in success_keys:
                    continue
                result = assistant.decode(candidate.utterance)
                action = ""
                if result.decision == "command":
                    from .assistant.intent import match_intent

                    action = match_intent(result.transcript) or ""
                success = result.decision == "command" and action == target.action_id
                if success:
                    found += 1
                    successes.append(candidate)
                    success_keys.add(candidate.kirschenbaum)
                if log is not None:
                    log.append(
                        TrialRecord(
                            trial_id=f"{STAGE_COMMAND}-{target.action_id}-{seed}-{trial:06d}",
                            stage=STAGE_COMMAND,
                            candidate_id=candidate.candidate_id,
                            target=target.text,
                            action_expected=target.action_id,
                            kirschenbaum=candidate.kirschenbaum,
                            transcript=result.transcript,
                            decision=result.decision,
                            action_triggered=_response_for(action),
                            success=success,
                            seed=seed,
                            timestamp=_now(),
                        )
                    )
                trial += 1
        if found < per_command:
            raise BudgetExhausted(
                max_batches,
                f"only {found}/{per_command} successes for {target.text!r} "
                f"in {max_batches} batches",
            )
    return successes


def run_stage_combined(
    assistant: Assistant,
    wake_successes: list[CandidateCommand],
    cmd_successes: list[CandidateCommand],
    seed: int,
    trials_per_combo: int = 1,
    jitter_on: bool = False,
    log: RunLog | None = None,
) -> list[TrialRecord]:
    """Wake + command over one concatenated utterance, optional channel jitter."""
    from .assistant.intent import match_intent

    records = []
    combos = combine(wake_successes, cmd_successes)
    decode_cache: dict[str, object] = {}  # without jitter, repeats are identical
    for combo in combos:
        for attempt in range(trials_per_combo):
            jitter_rng = None
            if jitter_on:
                jitter_rng = random.Random(
                    f"{assistant.cfg.jitter_seed}:{combo.candidate_id}:{attempt}"
                )
            wake_result = assistant.wake_detect(combo.wake.utterance, jitter_rng=jitter_rng)
            if jitter_on:
                decode_result = assistant.decode(combo.command.utterance, jitter_rng=jitter_rng)
            else:
                key = combo.command.candidate_id
                decode_result = decode_cache.get(key)
                if decode_result is None:
                    decode_result = assistant.decode(combo.command.utterance)
                    decode_cache[key] = decode_result
            action = ""
            if wake_result.triggered and decode_result.decision == "command":
                action = match_intent(decode_result.transcript) or ""
            success = (
                wake_result.triggered and action == combo.command.target.action_id
            )
            record = TrialRecord(
                trial_id=f"{STAGE_COMBINED}-{seed}-{combo.candidate_id}-{attempt}",
                stage=STAGE_COMBINED,
                candidate_id=combo.candidate_id,
                target=f"{wake_target().text} {combo.command.target.text}",
                action_expected=combo.command.target.action_id,
                kirschenbaum=combo.wake.kirschenbaum + " " + combo.command.kirschenbaum,
                transcript=decode_result.transcript if wake_result.triggered else "",
                decision=decode_result.decision if wake_result.triggered else "not_activated",
                action_triggered=_response_for(action),
                success=success,
                seed=seed,
                timestamp=_now(),
            )
            records.append(record)
            if log is not None:
                log.append(record)
    return records


def _response_for(action: str) -> str:
    if not action:
        return ""
    response, _ = execute(action, AssistantState())
    return response


def report(records: list[TrialRecord]) -> str:
    """Per-stage success tables in the four-column layout, plus rates."""
    if not records:
        raise EmptyLog("no trial records")
    titles = {
        STAGE_WAKE: "Wake-word stage (audio file input)",
        STAGE_COMMAND: "Command stage (audio file input)",
        STAGE_COMBINED: "Combined stage (over the air)",
    }
    lines = []
    for stage in (STAGE_WAKE, STAGE_COMMAND, STAGE_COMBINED):
        stage_records = [r for r in records if r.stage == stage]
        if not stage_records:
            continue
        successes = [r for r in stage_records if r.success]
        lines.append(f"## {titles[stage]}")
        lines.append("")
        lines.append(
            f"{len(successes)} successful of {len(stage_records)} trials "
            f"({len(successes) / len(stage_records):.1%})"
        )
        lines.append("")
        lines.append("| Target Command | Adversarial Command | Text Transcribed | Action Triggered |")
        lines.append("| --- | --- | --- | --- |")
        for r in sorted(successes, key=lambda r: r.trial_id):
            lines.append(
                f"| {r.target} | {r.kirschenbaum} | {r.transcript} | {r.action_triggered} |"
            )
        lines.append("")
    return "\n".join(lines)
