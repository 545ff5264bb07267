"""Listening-test survey backend: sessions, responses, metrics, HTTP API.

Each session gets its own random clip order (experiment clips plus two
attention clips); a session is valid only if both attention clips were
transcribed correctly. Subjects never see clip provenance: the API
exposes opaque clip ids only.
"""

import json
import random
import re
import string
from dataclasses import dataclass, field, asdict
from pathlib import Path


class MissingAttentionClips(ValueError):
    pass


class UnknownClip(KeyError):
    pass


@dataclass(frozen=True)
class SurveyClip:
    clip_id: str
    path: str = ""
    is_attention: bool = False
    expected_text: str = ""  # attention clips: the transcription that counts
    target_text: str = ""  # experiment clips: the hidden target command
    machine_success: bool = True


@dataclass(frozen=True)
class SurveyResponse:
    clip_id: str
    heard_meaning: bool
    transcription: str = ""
    listen_count: int = 1

    def __post_init__(self):
        if self.heard_meaning and not self.transcription.strip():
            raise ValueError("heard_meaning requires a non-empty transcription")


@dataclass
class SurveySession:
    session_id: str
    clip_order: tuple[str, ...]
    responses: dict[str, SurveyResponse] = field(default_factory=dict)

    def is_complete(self) -> bool:
        return all(cid in self.responses for cid in self.clip_order)


def normalize_text(text: str) -> str:
    return re.sub(r"\s+", " ", text.lower().translate(str.maketrans("", "", string.punctuation))).strip()


def create_session(
    clips: list[SurveyClip], seed, session_id: str | None = None
) -> SurveySession:
    """Randomize clip order per session; attention clips land anywhere."""
    if not clips:
        raise MissingAttentionClips("empty clip set")
    if sum(c.is_attention for c in clips) < 2:
        raise MissingAttentionClips("need two attention clips")
    order = [c.clip_id for c in clips]
    random.Random(f"session:{seed}").shuffle(order)
    return SurveySession(
        session_id=session_id or f"session-{seed}",
        clip_order=tuple(order),
    )


def session_valid(session: SurveySession, clips_by_id: dict[str, SurveyClip]) -> bool:
    """Both attention clips transcribed correctly (case/punct-insensitive)."""
    for cid in session.clip_order:
        clip = clips_by_id[cid]
        if not clip.is_attention:
            continue
        response = session.responses.get(cid)
        if response is None or not response.heard_meaning:
            return False
        if normalize_text(response.transcription) != normalize_text(clip.expected_text):
            return False
    return True


def survey_metrics(sessions: list[SurveySession], clips: list[SurveyClip]) -> dict:
    """Aggregate comprehension metrics over attention-valid sessions."""
    clips_by_id = {c.clip_id: c for c in clips}
    valid = [s for s in sessions if session_valid(s, clips_by_id)]
    per_clip = {}
    for clip in clips:
        if clip.is_attention:
            continue
        responses = [s.responses[clip.clip_id] for s in valid if clip.clip_id in s.responses]
        n = len(responses)
        no_meaning = sum(not r.heard_meaning for r in responses)
        detected = sum(
            r.heard_meaning
            and normalize_text(r.transcription) == normalize_text(clip.target_text)
            for r in responses
        )
        unrelated = sum(
            r.heard_meaning
            and normalize_text(r.transcription) != normalize_text(clip.target_text)
            for r in responses
        )
        detection_fraction = detected / n if n else 0.0
        per_clip[clip.clip_id] = {
            "responses": n,
            "no_meaning_fraction": no_meaning / n if n else 0.0,
            "target_detection_fraction": detection_fraction,
            "unrelated_fraction": unrelated / n if n else 0.0,
            # machine success with human non-detection is a covert success
            "covert_success_rate": (1.0 - detection_fraction) if clip.machine_success else 0.0,
        }
    return {
        "sessions_total": len(sessions),
        "sessions_valid": len(valid),
        "clips": per_clip,
    }


class SurveyStore:
    """Concurrent-session state with an append-only response log."""

    def __init__(self, clips: list[SurveyClip], out_dir=None):
        if sum(c.is_attention for c in clips) < 2:
            raise MissingAttentionClips("need two attention clips")
        self.clips = list(clips)
        self.clips_by_id = {c.clip_id: c for c in clips}
        self.sessions: dict[str, SurveySession] = {}
        self._counter = 0
        self.response_log = Path(out_dir) / "responses.jsonl" if out_dir else None

    def create_session(self, seed=None) -> SurveySession:
        self._counter += 1
        if seed is None:
            seed = random.getrandbits(32)
        session = create_session(self.clips, seed, session_id=f"s{self._counter:05d}-{seed}")
        self.sessions[session.session_id] = session
        return session

    def get_session(self, session_id: str) -> SurveySession:
        return self.sessions[session_id]

    def submit(self, session_id: str, response: SurveyResponse) -> dict:
        """Idempotent per (session, clip): the first submission wins."""
        session = self.sessions[session_id]
        if response.clip_id not in session.clip_order:
            raise UnknownClip(response.clip_id)
        existing = session.responses.get(response.clip_id)
        if existing is not None:
            return {"stored": asdict(existing), "duplicate": True}
        session.responses[response.clip_id] = response
        if self.response_log is not None:
            with open(self.response_log, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(
                    json.dumps({"session_id": session_id, **asdict(response)}, sort_keys=True)
                    + "\n"
                )
        return {"stored": asdict(response), "duplicate": False}

    def metrics(self) -> dict:
        return survey_metrics(list(self.sessions.values()), self.clips)


def load_clips_manifest(path) -> list[SurveyClip]:
    """Clip set from a synthesis-manifest-style JSONL file."""
    clips = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            clips.append(
                SurveyClip(
                    clip_id=row["candidate_id"],
                    path=row.get("clip_path", ""),
                    is_attention=bool(row.get("is_attention", False)),
                    expected_text=row.get("expected_text", ""),
                    target_text=row.get("target_text", ""),
                    machine_success=bool(row.get("machine_success", True)),
                )
            )
    return clips


ATTENTION_TEXTS = ("hello how are you", "hi how are you")


def build_http_app(store: SurveyStore):
    """FastAPI app exposing create-session / fetch-clip / submit / metrics."""
    from fastapi import FastAPI, HTTPException
    from fastapi.responses import FileResponse, JSONResponse
    from pydantic import BaseModel

    class CreateSessionBody(BaseModel):
        seed: int | None = None

    class ResponseBody(BaseModel):
        clip_id: str
        heard_meaning: bool
        transcription: str = ""
        listen_count: int = 1

    app = FastAPI(title="listening-test survey")

    @app.post("/api/sessions")
    def create(body: CreateSessionBody | None = None):
        session = store.create_session(body.seed if body else None)
        return {"session_id": session.session_id, "clips": list(session.clip_order)}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            session = store.get_session(session_id)
        except KeyError:
            raise HTTPException(404, "unknown session")
        return {
            "session_id": session.session_id,
            "clips": list(session.clip_order),
            "answered": sorted(session.responses),
            "complete": session.is_complete(),
        }

    @app.get("/api/clips/{clip_id}")
    def fetch_clip(clip_id: str):
        clip = store.clips_by_id.get(clip_id)
        if clip is None:
            raise HTTPException(404, "unknown clip")
        if not clip.path or not Path(clip.path).exists():
            raise HTTPException(404, "clip audio missing")
        return FileResponse(clip.path, media_type="audio/wav")

    @app.post("/api/sessions/{session_id}/responses")
    def submit(session_id: str, body: ResponseBody):
        try:
            response = SurveyResponse(
                clip_id=body.clip_id,
                heard_meaning=body.heard_meaning,
                transcription=body.transcription,
                listen_count=body.listen_count,
            )
        except ValueError as err:
            raise HTTPException(422, str(err))
        try:
            result = store.submit(session_id, response)
        except KeyError:
            raise HTTPException(404, "unknown session or clip")
        return JSONResponse(result)

    @app.get("/api/metrics")
    def metrics():
        return store.metrics()

    return app
