"""Chord label parsing and pitch-class semantics.

A chord label is written `Root Nature? ("/" Bass)?` where Root and Bass are
note names A..G with an optional accidental (# or b), and Nature is a token
from the alias table below (empty = major).  Examples: "Am", "C", "G/B",
"Asus4", "C#maj7".

Enharmonic spellings collapse to a single pitch class 0..11 (C=0 ... B=11);
formatting always prefers sharps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class ChordError(ValueError):
    """Base class for chord-label parse errors."""


class MalformedRoot(ChordError):
    pass


class UnknownNature(ChordError):
    pass


class MalformedBass(ChordError):
    pass


NOTE_NAMES = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"]

_NOTE_BASE = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_ACCIDENTAL = {"": 0, "#": 1, "b": -1}

# canonical token -> interval set (semitones above the root, always with 0)
NATURE_INTERVALS: dict[str, frozenset[int]] = {
    "maj": frozenset({0, 4, 7}),
    "m": frozenset({0, 3, 7}),
    "5": frozenset({0, 7}),
    "7": frozenset({0, 4, 7, 10}),
    "m7": frozenset({0, 3, 7, 10}),
    "maj7": frozenset({0, 4, 7, 11}),
    "sus2": frozenset({0, 2, 7}),
    "sus4": frozenset({0, 5, 7}),
    "dim": frozenset({0, 3, 6}),
    "dim7": frozenset({0, 3, 6, 9}),
    "aug": frozenset({0, 4, 8}),
    "6": frozenset({0, 4, 7, 9}),
    "m6": frozenset({0, 3, 7, 9}),
    "add9": frozenset({0, 2, 4, 7}),
    "9": frozenset({0, 2, 4, 7, 10}),
    "m9": frozenset({0, 2, 3, 7, 10}),
    "11": frozenset({0, 2, 4, 5, 7, 10}),
    "13": frozenset({0, 2, 4, 5, 7, 9, 10}),
    "7sus4": frozenset({0, 5, 7, 10}),
    "m7b5": frozenset({0, 3, 6, 10}),
}

# alias -> canonical token (canonical tokens map to themselves)
NATURE_ALIASES: dict[str, str] = {name: name for name in NATURE_INTERVALS}
NATURE_ALIASES.update(
    {
        "": "maj",
        "M": "maj",
        "min": "m",
        "-": "m",
        "min7": "m7",
        "-7": "m7",
        "7M": "maj7",
        "M7": "maj7",
        "o": "dim",
        "o7": "dim7",
        "+": "aug",
        "-7b5": "m7b5",
    }
)

_NOTE_RE = re.compile(r"([A-G])([#b]?)")


@dataclass(frozen=True)
class ChordNature:
    name: str

    @property
    def intervals(self) -> frozenset[int]:
        return NATURE_INTERVALS[self.name]


@dataclass(frozen=True)
class ChordLabel:
    root: int  # pitch class 0..11
    nature: ChordNature
    bass: int  # pitch class 0..11, equals root unless slash chord

    def __post_init__(self):
        if not 0 <= self.root <= 11:
            raise MalformedRoot(f"root pitch class out of range: {self.root}")
        if not 0 <= self.bass <= 11:
            raise MalformedBass(f"bass pitch class out of range: {self.bass}")


def _parse_note(text: str) -> int:
    m = _NOTE_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"not a note name: {text!r}")
    return (_NOTE_BASE[m.group(1)] + _ACCIDENTAL[m.group(2)]) % 12


def parse_label(text: str) -> ChordLabel:
    """Parse a chord-label string such as "Am", "G/B" or "C#maj7".

    Raises MalformedRoot, UnknownNature or MalformedBass on invalid input;
    unknown nature tokens are a hard error, never a fallback to major.
    """
    head, sep, bass_text = text.partition("/")
    m = _NOTE_RE.match(head)
    if m is None:
        raise MalformedRoot(f"chord label must start with a note name A..G: {text!r}")
    root = (_NOTE_BASE[m.group(1)] + _ACCIDENTAL[m.group(2)]) % 12
    nature_token = head[m.end() :]
    canonical = NATURE_ALIASES.get(nature_token)
    if canonical is None:
        raise UnknownNature(f"unknown chord nature {nature_token!r} in {text!r}")
    if sep:
        try:
            bass = _parse_note(bass_text)
        except ValueError:
            raise MalformedBass(f"bad bass note {bass_text!r} in {text!r}") from None
    else:
        bass = root
    return ChordLabel(root=root, nature=ChordNature(canonical), bass=bass)


def pitch_classes(label: ChordLabel) -> frozenset[int]:
    """Pitch-class content of the chord; the bass is included even when it
    is not part of the nature's interval set (inverted chords sound it)."""
    pcs = {(label.root + i) % 12 for i in label.nature.intervals}
    pcs.add(label.bass)
    return frozenset(pcs)


def format_label(label: ChordLabel) -> str:
    """Render a label back to text.  Sharps preferred; major renders with no
    nature token; the bass suffix appears only for slash chords."""
    text = NOTE_NAMES[label.root]
    if label.nature.name != "maj":
        text += label.nature.name
    if label.bass != label.root:
        text += "/" + NOTE_NAMES[label.bass]
    return text


def transpose(label: ChordLabel, semitones: int) -> ChordLabel:
    return ChordLabel(
        root=(label.root + semitones) % 12,
        nature=label.nature,
        bass=(label.bass + semitones) % 12,
    )
