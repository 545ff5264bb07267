"""Synthesis-side artifacts: SSML, WAV clips, and synthesizer adapters.

The null adapter (default) writes silent placeholder audio so the whole
pipeline runs with no network or audio stack; a subprocess adapter drives
a local synthesizer that reads Kirschenbaum input, and an HTTP adapter
posts SSML to a cloud voice endpoint.
"""

from __future__ import annotations

import json
import shlex
import struct
import subprocess
import wave
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .inventory import KIRSCHENBAUM, XSAMPA, default_inventory
from .phonology import ParseError, parse_word, emit_word

SAMPLE_RATE = 16000
BIT_DEPTH = 16
CHANNELS = 1


class ConversionFailure(ValueError):
    pass


class FormatMismatch(ValueError):
    pass


class AdapterUnavailable(RuntimeError):
    pass


class SynthesisRejected(RuntimeError):
    pass


class DuplicateCandidate(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisRequest:
    candidate_id: str
    kirschenbaum: str
    xsampa_words: tuple[str, ...]
    voice: str
    output_path: str


@dataclass(frozen=True)
class AudioClip:
    path: str
    duration_ms: int
    sample_rate: int = SAMPLE_RATE
    bit_depth: int = BIT_DEPTH
    channels: int = CHANNELS
    candidate_id: str = ""
    synthesizer_id: str = ""

    @property
    def format_key(self):
        return (self.sample_rate, self.bit_depth, self.channels)


# Display-only romanization for SSML fallback text.
_ROMAN = {
    "tS": "ch", "dZ": "j", "T": "th", "D": "dh", "S": "sh", "Z": "zh", "N": "ng",
    "j": "y", "l=": "le",
    "i:": "ee", "I": "i", "E": "e", "{": "a", "A:": "ah", "Q": "o", "O:": "aw",
    "U": "u", "u:": "oo", "V": "u", "3:": "ur", "@": "e", "eI": "ay", "aI": "ai",
    "OI": "oy", "@U": "oh", "aU": "ow", "I@": "eer", "e@": "air", "U@": "oor",
}


def romanize(kirschenbaum_word: str) -> str:
    word = parse_word(kirschenbaum_word, KIRSCHENBAUM)
    return "".join(_ROMAN.get(p.id, p.id) for p in word.phonemes)


def emit_ssml(candidate, voice: str = "") -> str:
    """One speak-document; each word is a phoneme element with its X-SAMPA form."""
    elements = []
    for kirsch in candidate.kirschenbaum.split(" "):
        try:
            word = parse_word(kirsch, KIRSCHENBAUM)
        except (ParseError, ValueError) as err:
            raise ConversionFailure(f"{candidate.candidate_id}: {kirsch!r}: {err}") from None
        ph = emit_word(word, XSAMPA)
        elements.append(
            f"<phoneme alphabet=\"x-sampa\" ph={quoteattr(ph)}>{escape(romanize(kirsch))}</phoneme>"
        )
    return "<speak>" + " ".join(elements) + "</speak>"


def write_wav(path, pcm: bytes, sample_rate: int = SAMPLE_RATE) -> None:
    with wave.open(str(path), "wb") as fh:
        fh.setnchannels(CHANNELS)
        fh.setsampwidth(BIT_DEPTH // 8)
        fh.setframerate(sample_rate)
        fh.writeframes(pcm)


def read_wav(path) -> tuple[bytes, int, int, int]:
    """(frames, sample_rate, bit_depth, channels)"""
    with wave.open(str(path), "rb") as fh:
        return (
            fh.readframes(fh.getnframes()),
            fh.getframerate(),
            fh.getsampwidth() * 8,
            fh.getnchannels(),
        )


def silence(duration_ms: int, sample_rate: int = SAMPLE_RATE) -> bytes:
    frames = sample_rate * duration_ms // 1000
    return b"\x00\x00" * frames * CHANNELS


def clip_from_file(path, candidate_id: str = "", synthesizer_id: str = "") -> AudioClip:
    with wave.open(str(path), "rb") as fh:
        duration_ms = round(fh.getnframes() * 1000 / fh.getframerate())
        return AudioClip(
            path=str(path),
            duration_ms=duration_ms,
            sample_rate=fh.getframerate(),
            bit_depth=fh.getsampwidth() * 8,
            channels=fh.getnchannels(),
            candidate_id=candidate_id,
            synthesizer_id=synthesizer_id,
        )


def concat_with_pause(wake: AudioClip, cmd: AudioClip, pause_ms: int, out_path) -> AudioClip:
    """wake + digital silence + command, all in the wake clip's format."""
    if wake.format_key != cmd.format_key:
        raise FormatMismatch(f"{wake.format_key} != {cmd.format_key}")
    wake_pcm, rate, _, _ = read_wav(wake.path)
    cmd_pcm, _, _, _ = read_wav(cmd.path)
    write_wav(out_path, wake_pcm + silence(pause_ms, rate) + cmd_pcm, rate)
    return clip_from_file(
        out_path,
        candidate_id=f"{wake.candidate_id}+{cmd.candidate_id}",
        synthesizer_id=wake.synthesizer_id,
    )


class Manifest:
    """Append-only synthesis manifest; exactly one row per candidate."""

    def __init__(self, path):
        self.path = Path(path)
        self._seen = {row["candidate_id"] for row in self.rows()} if self.path.exists() else set()

    def rows(self) -> list[dict]:
        if not self.path.exists():
            return []
        with open(self.path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]

    def append(self, row: dict) -> None:
        if row["candidate_id"] in self._seen:
            raise DuplicateCandidate(row["candidate_id"])
        self._seen.add(row["candidate_id"])
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(row, sort_keys=True) + "\n")


class NullAdapter:
    """Writes a silent placeholder clip; the desk-scale default."""

    synthesizer_id = "null"

    def __init__(self, duration_ms: int = 1000):
        self.duration_ms = duration_ms

    def __call__(self, req: SynthesisRequest) -> AudioClip:
        write_wav(req.output_path, silence(self.duration_ms))
        return clip_from_file(req.output_path, req.candidate_id, self.synthesizer_id)


class SubprocessAdapter:
    """Drives a local synthesizer taking Kirschenbaum text.

    The command template gets {input} (Kirschenbaum string) and {output}
    (WAV path) substituted per request.
    """

    synthesizer_id = "subprocess"

    def __init__(self, command_template: str):
        self.command_template = command_template

    def __call__(self, req: SynthesisRequest) -> AudioClip:
        command = [
            part.replace("{input}", req.kirschenbaum).replace("{output}", req.output_path)
            for part in shlex.split(self.command_template)
        ]
        try:
            proc = subprocess.run(command, capture_output=True, text=True, check=False)
        except OSError as err:
            raise AdapterUnavailable(f"cannot run {command[0]!r}: {err}") from None
        if proc.returncode != 0:
            raise SynthesisRejected(f"{command[0]} exited {proc.returncode}: {proc.stderr[:200]}")
        if not Path(req.output_path).exists():
            raise SynthesisRejected(f"{command[0]} produced no output file")
        return clip_from_file(req.output_path, req.candidate_id, self.synthesizer_id)


class HttpAdapter:
    """POSTs SSML to a cloud voice endpoint that returns WAV bytes."""

    synthesizer_id = "http"

    def __init__(self, url: str, timeout: float = 10.0):
        self.url = url
        self.timeout = timeout

    def __call__(self, req: SynthesisRequest) -> AudioClip:
        import httpx

        try:
            response = httpx.post(
                self.url,
                content=emit_ssml(req, req.voice).encode("utf-8"),
                headers={"content-type": "application/ssml+xml"},
                timeout=self.timeout,
            )
        except httpx.TransportError as err:
            raise AdapterUnavailable(f"{self.url}: {err}") from None
        if response.status_code != 200:
            raise SynthesisRejected(f"{self.url} returned {response.status_code}")
        Path(req.output_path).write_bytes(response.content)
        return clip_from_file(req.output_path, req.candidate_id, self.synthesizer_id)


def request_for(candidate, voice: str, output_dir) -> SynthesisRequest:
    words = []
    for kirsch in candidate.kirschenbaum.split(" "):
        try:
            words.append(emit_word(parse_word(kirsch, KIRSCHENBAUM), XSAMPA))
        except (ParseError, ValueError) as err:
            raise ConversionFailure(f"{candidate.candidate_id}: {err}") from None
    return SynthesisRequest(
        candidate_id=candidate.candidate_id,
        kirschenbaum=candidate.kirschenbaum,
        xsampa_words=tuple(words),
        voice=voice,
        output_path=str(Path(output_dir) / f"{candidate.candidate_id}.wav"),
    )


def synthesize(req: SynthesisRequest, adapter, manifest: Manifest) -> AudioClip:
    """Run one synthesis request and record it exactly once."""
    clip = adapter(req)
    manifest.append(
        {
            "candidate_id": req.candidate_id,
            "voice": req.voice,
            "xsampa": " ".join(req.xsampa_words),
            "clip_path": clip.path,
            "duration_ms": clip.duration_ms,
            "synthesizer": clip.synthesizer_id,
        }
    )
    return clip
