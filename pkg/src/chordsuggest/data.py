"""Dataset pipeline: JSONL ingestion, transition extraction, fret-shift
augmentation, deterministic splits and corpus statistics.

Track file format (one JSON object per line, UTF-8):

    {"track_id": str, "events": [{"bar": int, "label": str, "fingering": str}, ...]}

Transitions file format (one JSON object per line):

    {"prev_label": str, "prev_diagram": str, "next_label": str,
     "next_diagram": str, "track_id": str}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from statistics import median
from typing import Iterable, Iterator, Optional, TextIO

import numpy as np

from chordsuggest import chords, fretboard
from chordsuggest.chords import parse_label, format_label, transpose
from chordsuggest.fretboard import parse_fingering, format_fingering, shift

BAR_WINDOW = 2  # max bar distance between paired chord events
MAX_AUGMENT_FRET = 15


class ParseError(ValueError):
    """Malformed track or transition record; carries position context."""


class TooFewTransitions(ValueError):
    pass


@dataclass(frozen=True)
class TrackEvents:
    track_id: str
    events: tuple[tuple[int, str, str], ...]  # (bar_index, label, fingering)


@dataclass(frozen=True)
class Transition:
    prev_label: str
    prev_diagram: str
    next_label: str
    next_diagram: str
    track_id: str


@dataclass(frozen=True)
class SplitSpec:
    seed: int = 0
    split_index: int = 0
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2)


def read_tracks(fh: TextIO) -> Iterator[TrackEvents]:
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            events = tuple(
                sorted((e["bar"], e["label"], e["fingering"]) for e in obj["events"])
            )
            yield TrackEvents(track_id=obj["track_id"], events=events)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"line {lineno}: bad track record ({exc})") from exc


def read_transitions(fh: TextIO) -> list[Transition]:
    out = []
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            out.append(Transition(**json.loads(line)))
        except (json.JSONDecodeError, TypeError) as exc:
            raise ParseError(f"line {lineno}: bad transition record ({exc})") from exc
    return out


def write_transitions(transitions: Iterable[Transition], fh: TextIO) -> None:
    for t in transitions:
        fh.write(json.dumps(asdict(t), sort_keys=True) + "\n")


def extract_transitions(track: TrackEvents) -> list[Transition]:
    """Consecutive event pairs within the bar window, one occurrence per
    unique transition per track.  Cross-track duplicates are kept by the
    caller merging lists."""
    out: list[Transition] = []
    seen = set()
    for pos, ((bar1, label1, fing1), (bar2, label2, fing2)) in enumerate(
        zip(track.events, track.events[1:])
    ):
        try:
            parse_label(label1), parse_label(label2)
            parse_fingering(fing1), parse_fingering(fing2)
        except (chords.ChordError, fretboard.DiagramError) as exc:
            raise ParseError(f"track {track.track_id!r} event {pos}: {exc}") from exc
        if bar2 - bar1 > BAR_WINDOW:
            continue
        key = (label1, fing1, label2, fing2)
        if key in seen:
            continue
        seen.add(key)
        out.append(
            Transition(
                prev_label=label1,
                prev_diagram=fing1,
                next_label=label2,
                next_diagram=fing2,
                track_id=track.track_id,
            )
        )
    return out


def _shift_transition(t: Transition, offset: int) -> Transition:
    return Transition(
        prev_label=format_label(transpose(parse_label(t.prev_label), offset)),
        prev_diagram=format_fingering(shift(parse_fingering(t.prev_diagram), offset)),
        next_label=format_label(transpose(parse_label(t.next_label), offset)),
        next_diagram=format_fingering(shift(parse_fingering(t.next_diagram), offset)),
        track_id=t.track_id,
    )


def augment(transitions: Iterable[Transition]) -> list[Transition]:
    """Fret-shift augmentation.

    Transitions whose diagrams have no open strings are copied one fret
    down at a time while every fretted position stays at fret 1 or above,
    and one fret up at a time while no fretted position exceeds fret 15.
    Labels are transposed by the same number of semitones.  Originals are
    always kept; transitions containing an open string pass through
    untouched.
    """
    out: list[Transition] = []
    for t in transitions:
        out.append(t)
        d1 = parse_fingering(t.prev_diagram)
        d2 = parse_fingering(t.next_diagram)
        if any(s == 0 for s in d1.strings) or any(s == 0 for s in d2.strings):
            continue
        min_fret = min(d1.index_fret(), d2.index_fret())
        max_fret = max(
            max(f for _, f in d1.fretted()),
            max(f for _, f in d2.fretted()),
        )
        for offset in range(-1, -min_fret, -1):
            out.append(_shift_transition(t, offset))
        for offset in range(1, MAX_AUGMENT_FRET - max_fret + 1):
            out.append(_shift_transition(t, offset))
    return out


def split(
    transitions: list[Transition], spec: SplitSpec
) -> tuple[list[Transition], list[Transition], list[Transition]]:
    """Deterministic 60-20-20 partition keyed by (seed, split_index).
    Augmentation, when wanted, is applied to the returned train portion
    afterwards so transposed copies never leak across partitions."""
    if len(transitions) < 5:
        raise TooFewTransitions(f"need at least 5 transitions, got {len(transitions)}")
    rng = np.random.default_rng([spec.seed, spec.split_index])
    order = rng.permutation(len(transitions))
    n_train = int(len(transitions) * spec.ratios[0])
    n_val = int(len(transitions) * spec.ratios[1])
    shuffled = [transitions[i] for i in order]
    return (
        shuffled[:n_train],
        shuffled[n_train : n_train + n_val],
        shuffled[n_train + n_val :],
    )


def stats(transitions: list[Transition]) -> dict:
    """Corpus statistics: root-note and nature histograms over every chord
    occurrence (both ends of each transition), and the distinct-diagram
    inventory per label with its median size."""
    if not transitions:
        raise ValueError("no transitions")
    root_hist: dict[str, int] = {}
    nature_hist: dict[str, int] = {}
    diagrams_per_label: dict[str, set[str]] = {}
    for t in transitions:
        for label_text, fingering in (
            (t.prev_label, t.prev_diagram),
            (t.next_label, t.next_diagram),
        ):
            label = parse_label(label_text)
            root = chords.NOTE_NAMES[label.root]
            root_hist[root] = root_hist.get(root, 0) + 1
            nature_hist[label.nature.name] = nature_hist.get(label.nature.name, 0) + 1
            diagrams_per_label.setdefault(label_text, set()).add(fingering)
    counts = {label: len(d) for label, d in diagrams_per_label.items()}
    return {
        "root_histogram": dict(sorted(root_hist.items(), key=lambda kv: -kv[1])),
        "nature_histogram": dict(sorted(nature_hist.items(), key=lambda kv: -kv[1])),
        "diagrams_per_label": dict(sorted(counts.items(), key=lambda kv: -kv[1])),
        "median_diagrams_per_label": float(median(counts.values())),
    }


def encode_transitions(transitions: list[Transition], topology: str) -> tuple[np.ndarray, np.ndarray]:
    """Encoded (inputs, targets) arrays ready for training."""
    from chordsuggest import encoding
    from chordsuggest.model import BASELINE

    inputs, targets = [], []
    for t in transitions:
        label = parse_label(t.next_label)
        if topology == BASELINE:
            inputs.append(encoding.encode_label(label))
        else:
            inputs.append(encoding.encode_input(parse_fingering(t.prev_diagram), label))
        targets.append(encoding.encode_diagram(parse_fingering(t.next_diagram)))
    return np.array(inputs), np.array(targets)
