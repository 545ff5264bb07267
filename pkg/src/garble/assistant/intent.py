"""Loose intent grammar and the simulated device.

The transcript does not need to match a target command exactly: verb and
noun classes are collapsed, articles dropped, and colors accepted with or
without a leading "to".
"""

from __future__ import annotations

from dataclasses import dataclass, replace

GET_USER_NAME = "GetUserName"
LIGHT_ON = "LightOn"
LIGHT_OFF = "LightOff"
SET_COLOR_RED = "SetColorRed"
SET_COLOR_BLUE = "SetColorBlue"

ACTIONS = (GET_USER_NAME, LIGHT_ON, LIGHT_OFF, SET_COLOR_RED, SET_COLOR_BLUE)

_VERBS = {"turn": "turn", "turns": "turn", "switch": "turn", "switches": "turn"}
_NOUNS = {"light": "light", "lights": "light", "device": "light", "led": "light"}
_COLORS = {"red": SET_COLOR_RED, "blue": SET_COLOR_BLUE}
_DROPPED = {"the", "a"}


def _normalize(transcript: str) -> list[str]:
    tokens = []
    for raw in transcript.lower().split():
        word = raw.strip(".,!?")
        if word in _DROPPED:
            continue
        word = _VERBS.get(word, word)
        word = _NOUNS.get(word, word)
        tokens.append(word)
    return tokens


def match_intent(transcript: str) -> str | None:
    """Action id for the transcript, or None when nothing matches."""
    if not transcript:
        raise ValueError("empty transcript")
    t = _normalize(transcript)
    if t in (["what's", "my", "name"], ["whats", "my", "name"], ["who", "am", "i"]):
        return GET_USER_NAME
    if t in (["turn", "on", "light"], ["turn", "light", "on"]):
        return LIGHT_ON
    if t in (["turn", "off", "light"], ["turn", "light", "off"]):
        return LIGHT_OFF
    if len(t) >= 3 and t[0] == "turn" and t[1] == "light":
        color = t[2:]
        if len(color) == 2 and color[0] == "to":
            color = color[1:]
        if len(color) == 1 and color[0] in _COLORS:
            return _COLORS[color[0]]
    return None


@dataclass(frozen=True)
class AssistantState:
    username: str = "MK"
    light_on: bool = False
    light_color: str = "white"  # color and power are independent


def execute(action: str, state: AssistantState) -> tuple[str, AssistantState]:
    """Apply an action; returns the spoken response and the new state."""
    if action == GET_USER_NAME:
        return f"You told me your name was {state.username}", state
    if action == LIGHT_ON:
        return "Turning device on", replace(state, light_on=True)
    if action == LIGHT_OFF:
        return "Turning device off", replace(state, light_on=False)
    if action == SET_COLOR_RED:
        return "color is red", replace(state, light_color="red")
    if action == SET_COLOR_BLUE:
        return "color is blue", replace(state, light_color="blue")
    raise ValueError(f"unknown action {action!r}")
