"""Evaluation metrics for suggested diagrams.

Covers set-overlap scores on pitch classes and string/fret pairs, an
anatomical playability score with an unplayable threshold, a chord-change
ease measure built from wrist and finger movements, per-diagram texture
profiles, and the batch evaluation harness used by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import mean, pstdev
from typing import Iterable, Optional

import numpy as np

from chordsuggest import encoding
from chordsuggest.chords import ChordLabel, pitch_classes
from chordsuggest.fretboard import (
    Diagram,
    NUM_STRINGS,
    assign_fingering,
    sounding_pitch_classes,
)
from chordsuggest.model import SuggestionModel, BASELINE, forward

UNPLAYABLE_THRESHOLD = 0.2


class EmptyTestSet(ValueError):
    pass


@dataclass(frozen=True)
class SetScores:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_sets(cls, predicted: frozenset, reference: frozenset) -> "SetScores":
        hits = len(predicted & reference)
        p = hits / len(predicted) if predicted else 0.0
        r = hits / len(reference) if reference else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(precision=p, recall=r, f1=f1)


def pitch_scores(pred: Diagram, label: ChordLabel) -> SetScores:
    """Overlap between the diagram's sounding pitch classes and the pitch
    classes the label calls for."""
    return SetScores.from_sets(sounding_pitch_classes(pred), pitch_classes(label))


def string_fret_scores(pred: Diagram, ref: Diagram) -> SetScores:
    """Overlap of (string, fret) pairs over sounding strings; muted strings
    are absence of a note and contribute no pair."""
    return SetScores.from_sets(frozenset(pred.sounding()), frozenset(ref.sounding()))


def anatomical_score(diagram: Diagram) -> float:
    """Ease-of-playing estimate in [0, 1] from finger stretch.

    Unfingerable diagrams score 0.  Otherwise the score decreases linearly
    with the fret span beyond 2 frets, reaching 0 at a span of 5.  A barre
    with a fretted note below its fret is impossible (0); a fretted note on
    a string below the barre's range halves the score.
    """
    fingering = assign_fingering(diagram)
    if fingering is None:
        return 0.0
    fretted = diagram.fretted()
    if not fretted:
        return 1.0
    frets = [f for _, f in fretted]
    span = max(frets) - min(frets)
    score = min(max(1.0 - max(0, span - 2) / 3.0, 0.0), 1.0)
    if fingering.barre is not None:
        if any(f < fingering.barre.fret for _, f in fretted):
            return 0.0
        if any(i < fingering.barre.from_string for i, _ in fretted):
            score *= 0.5
    return score


def is_unplayable(diagram: Diagram) -> bool:
    return anatomical_score(diagram) < UNPLAYABLE_THRESHOLD


def chord_change_ease(d1: Diagram, d2: Diagram) -> float:
    """Transition ease in (0, 1]: 1 / (1 + wrist + fingers).

    Wrist movement is the absolute index-finger fret difference; finger
    movement sums Manhattan distances of each finger's (string, fret)
    between the two fingerings, counting 1 for a finger placed in only one
    of them.  An unfingerable diagram contributes an empty fingering.
    """
    m_wrist = abs(d1.index_fret() - d2.index_fret())
    f1 = assign_fingering(d1)
    f2 = assign_fingering(d2)
    pos1 = f1.finger_positions() if f1 is not None else {}
    pos2 = f2.finger_positions() if f2 is not None else {}
    m_fingers = 0
    for finger in range(1, 5):
        in1, in2 = finger in pos1, finger in pos2
        if in1 and in2:
            (s1, fr1), (s2, fr2) = pos1[finger], pos2[finger]
            m_fingers += abs(s1 - s2) + abs(fr1 - fr2)
        elif in1 or in2:
            m_fingers += 1
    return 1.0 / (1.0 + m_wrist + m_fingers)


@dataclass(frozen=True)
class TextureProfile:
    muted_ratio: float
    open_ratio: float
    string_centroid: float
    unique_note_ratio: float

    def as_dict(self) -> dict[str, float]:
        return {
            "muted_ratio": self.muted_ratio,
            "open_ratio": self.open_ratio,
            "string_centroid": self.string_centroid,
            "unique_note_ratio": self.unique_note_ratio,
        }


def texture(diagram: Diagram) -> TextureProfile:
    """Sound-character profile of a diagram; all components in [0, 1].

    The string centroid averages sounding string indices (low E = 0) and
    normalizes by 5; unique notes count pitch classes once even when
    repeated across octaves.
    """
    sounding = diagram.sounding()
    muted = NUM_STRINGS - len(sounding)
    open_count = sum(1 for _, f in sounding if f == 0)
    centroid = mean(i for i, _ in sounding) / (NUM_STRINGS - 1)
    unique = len(sounding_pitch_classes(diagram)) / len(sounding)
    return TextureProfile(
        muted_ratio=muted / NUM_STRINGS,
        open_ratio=open_count / NUM_STRINGS,
        string_centroid=centroid,
        unique_note_ratio=unique,
    )


def texture_delta(d1: Diagram, d2: Diagram) -> dict[str, float]:
    """Componentwise absolute texture difference; symmetric."""
    t1, t2 = texture(d1).as_dict(), texture(d2).as_dict()
    return {k: abs(t1[k] - t2[k]) for k in t1}


def slotwise_f1(pred: Diagram, ref: Diagram) -> float:
    """F1 between the 156-slot encodings of two diagrams (the plain F1 of
    a one-hot-per-string structured prediction)."""
    p = encoding.encode_diagram(pred)
    r = encoding.encode_diagram(ref)
    tp = float(np.sum((p == 1) & (r == 1)))
    fp = float(np.sum((p == 1) & (r == 0)))
    fn = float(np.sum((p == 0) & (r == 1)))
    denom = 2 * tp + fp + fn
    return 2 * tp / denom if denom > 0 else 0.0


def dedup_test_transitions(transitions: Iterable) -> list:
    """Keep one transition per (next label, next diagram): pairs identical
    in what is being predicted are duplicates at test time."""
    seen = set()
    kept = []
    for t in transitions:
        key = (t.next_label, t.next_diagram)
        if key not in seen:
            seen.add(key)
            kept.append(t)
    return kept


def _predict(model: SuggestionModel, prev: Diagram, label: ChordLabel) -> Diagram:
    if model.topology == BASELINE:
        x = encoding.encode_label(label)
    else:
        x = encoding.encode_input(prev, label)
    probs = encoding.normalize_rows(forward(model, x))
    return encoding.decode_probabilities(probs)


_TEXTURE_KEYS = ["muted_ratio", "open_ratio", "string_centroid", "unique_note_ratio"]


def evaluate_split(model: SuggestionModel, transitions: list) -> dict[str, float]:
    """Metrics of a model over one test split of transitions (after
    test-time dedup).  Returns a flat metric -> value mapping."""
    from chordsuggest.chords import parse_label
    from chordsuggest.fretboard import parse_fingering

    kept = dedup_test_transitions(transitions)
    if not kept:
        raise EmptyTestSet("no transitions left after dedup")

    rows: dict[str, list[float]] = {}

    def add(key: str, value: float) -> None:
        rows.setdefault(key, []).append(value)

    for t in kept:
        prev = parse_fingering(t.prev_diagram)
        ref = parse_fingering(t.next_diagram)
        label = parse_label(t.next_label)
        pred = _predict(model, prev, label)

        add("f1", slotwise_f1(pred, ref))
        add("pitch_f1", pitch_scores(pred, label).f1)
        add("sf_f1", string_fret_scores(pred, ref).f1)
        add("unplayable", float(is_unplayable(pred)))
        add("ease", chord_change_ease(prev, pred))
        add("test_unplayable", float(is_unplayable(ref)))
        add("test_ease", chord_change_ease(prev, ref))
        pred_texture = texture(pred).as_dict()
        ref_texture = texture(ref).as_dict()
        pred_delta = texture_delta(prev, pred)
        ref_delta = texture_delta(prev, ref)
        for k in _TEXTURE_KEYS:
            add(f"texture_{k}", pred_texture[k])
            add(f"texture_delta_{k}", pred_delta[k])
            add(f"test_texture_{k}", ref_texture[k])
            add(f"test_texture_delta_{k}", ref_delta[k])

    return {k: mean(v) for k, v in rows.items()}


def aggregate_splits(split_results: list[dict[str, float]]) -> dict[str, dict[str, float]]:
    """mean and std of each metric across splits (population std; std 0
    for a single split)."""
    if not split_results:
        raise EmptyTestSet("no split results to aggregate")
    keys = split_results[0].keys()
    return {
        k: {
            "mean": mean(r[k] for r in split_results),
            "std": pstdev([r[k] for r in split_results]) if len(split_results) > 1 else 0.0,
        }
        for k in keys
    }


def format_report(aggregated: dict[str, dict[str, float]]) -> str:
    """Machine-readable key-value report, one `metric mean std` line each,
    sorted by metric name."""
    lines = [
        f"{k} {v['mean']:.6f} {v['std']:.6f}" for k, v in sorted(aggregated.items())
    ]
    return "\n".join(lines) + "\n"
