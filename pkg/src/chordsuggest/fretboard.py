"""Fretboard diagrams: the "x.0.2.2.1.0" text notation, pitch mapping,
fret shifting and a deterministic fingering heuristic.

String index 0 is the lowest-pitched string (E2), index 5 the highest (E4).
A string state is either muted (None) or a fret 0..24, fret 0 being the
open string.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

MAX_FRET = 24
NUM_STRINGS = 6

STANDARD_TUNING = (40, 45, 50, 55, 59, 64)  # E2 A2 D3 G3 B3 E4


class DiagramError(ValueError):
    """Base class for fingering-notation errors."""


class WrongStringCount(DiagramError):
    pass


class FretOutOfRange(DiagramError):
    pass


class AllMuted(DiagramError):
    pass


class OpenStringUnshiftable(DiagramError):
    pass


@dataclass(frozen=True)
class Diagram:
    """Six per-string states, low string first.  None = muted."""

    strings: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.strings) != NUM_STRINGS:
            raise WrongStringCount(f"expected {NUM_STRINGS} strings, got {len(self.strings)}")
        for s in self.strings:
            if s is not None and not 0 <= s <= MAX_FRET:
                raise FretOutOfRange(f"fret {s} outside 0..{MAX_FRET}")
        if all(s is None for s in self.strings):
            raise AllMuted("all six strings muted")

    def fretted(self) -> list[tuple[int, int]]:
        """(string, fret) pairs with fret >= 1."""
        return [(i, f) for i, f in enumerate(self.strings) if f is not None and f >= 1]

    def sounding(self) -> list[tuple[int, int]]:
        """(string, fret) pairs of all non-muted strings."""
        return [(i, f) for i, f in enumerate(self.strings) if f is not None]

    def index_fret(self) -> int:
        """Fret held by the index finger: the minimum fretted fret, or 0
        when nothing is fretted."""
        frets = [f for _, f in self.fretted()]
        return min(frets) if frets else 0


def parse_fingering(text: str) -> Diagram:
    """Parse "x.0.2.2.1.0"-style notation (6 dot-separated tokens,
    "x"/"X" or a fret number, low string first)."""
    tokens = text.split(".")
    if len(tokens) != NUM_STRINGS:
        raise WrongStringCount(f"expected {NUM_STRINGS} tokens in {text!r}, got {len(tokens)}")
    strings: list[Optional[int]] = []
    for tok in tokens:
        if tok in ("x", "X"):
            strings.append(None)
        else:
            try:
                fret = int(tok)
            except ValueError:
                raise FretOutOfRange(f"bad token {tok!r} in {text!r}") from None
            if not 0 <= fret <= MAX_FRET:
                raise FretOutOfRange(f"fret {fret} outside 0..{MAX_FRET} in {text!r}")
            strings.append(fret)
    return Diagram(tuple(strings))


def format_fingering(diagram: Diagram) -> str:
    return ".".join("x" if s is None else str(s) for s in diagram.strings)


def sounding_pitches(diagram: Diagram, tuning: tuple[int, ...] = STANDARD_TUNING) -> list[int]:
    """MIDI note numbers of all sounding strings, low string first."""
    return [tuning[i] + f for i, f in diagram.sounding()]


def sounding_pitch_classes(diagram: Diagram, tuning: tuple[int, ...] = STANDARD_TUNING) -> frozenset[int]:
    return frozenset(p % 12 for p in sounding_pitches(diagram, tuning))


def shift(diagram: Diagram, offset: int) -> Diagram:
    """Move every fretted position by `offset` frets.  Diagrams containing
    open strings cannot be shifted in either direction (the hand shape
    would change)."""
    if any(s == 0 for s in diagram.strings):
        raise OpenStringUnshiftable(f"cannot shift {format_fingering(diagram)}: open string")
    shifted: list[Optional[int]] = []
    for s in diagram.strings:
        if s is None:
            shifted.append(None)
        else:
            f = s + offset
            if not 1 <= f <= MAX_FRET:
                raise FretOutOfRange(f"shift by {offset} pushes fret {s} outside 1..{MAX_FRET}")
            shifted.append(f)
    return Diagram(tuple(shifted))


@dataclass(frozen=True)
class Barre:
    fret: int
    from_string: int
    to_string: int


@dataclass(frozen=True)
class Fingering:
    """Finger assignments for a diagram.

    assignments maps fretted positions to fingers 1..4; when a barre is
    present it is held by the index finger (finger 1) and covers every
    min-fret position in its string range.
    """

    assignments: tuple[tuple[int, int, int], ...]  # (finger, string, fret)
    barre: Optional[Barre] = None

    def finger_positions(self) -> dict[int, tuple[int, int]]:
        """finger -> (string, fret); a barre finger sits at its lowest
        covered string."""
        positions: dict[int, tuple[int, int]] = {}
        if self.barre is not None:
            positions[1] = (self.barre.from_string, self.barre.fret)
        for finger, string, fret in self.assignments:
            positions.setdefault(finger, (string, fret))
        return positions


UNFINGERABLE = None  # sentinel: assign_fingering returns None when no valid assignment exists


def assign_fingering(diagram: Diagram) -> Optional[Fingering]:
    """Deterministic fingering heuristic.

    An index barre is placed at the minimum fretted fret when at least two
    strings share it or more than four positions are fretted; it covers
    from the lowest such string up to string 5.  Every other position gets
    its own finger, starting at 1 + (fret - min fret) and increasing with
    ties, in ascending (fret, string) order.  Returns None (unfingerable)
    when a position would need a finger beyond the pinky.
    """
    fretted = diagram.fretted()
    if not fretted:
        return Fingering(assignments=())
    min_fret = min(f for _, f in fretted)
    at_min = [i for i, f in fretted if f == min_fret]
    barre: Optional[Barre] = None
    if len(at_min) >= 2 or len(fretted) > 4:
        barre = Barre(fret=min_fret, from_string=min(at_min), to_string=NUM_STRINGS - 1)
        remaining = [(i, f) for i, f in fretted if not (f == min_fret and i >= barre.from_string)]
    else:
        remaining = fretted

    assignments: list[tuple[int, int, int]] = []
    last_finger = 1 if barre is not None else 0
    for string, fret in sorted(remaining, key=lambda p: (p[1], p[0])):
        finger = max(1 + (fret - min_fret), last_finger + 1)
        if finger > 4:
            return UNFINGERABLE
        assignments.append((finger, string, fret))
        last_finger = finger
    return Fingering(assignments=tuple(assignments), barre=barre)
