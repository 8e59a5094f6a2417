"""Ranked diagram suggestions from model outputs, plus chained
suggestion over a label sequence."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

import numpy as np

from chordsuggest import encoding, metrics
from chordsuggest.chords import ChordLabel
from chordsuggest.fretboard import Diagram, AllMuted
from chordsuggest.model import SuggestionModel, BASELINE, forward


class MissingContext(ValueError):
    """Full model called without a previous diagram."""


@dataclass(frozen=True)
class Suggestion:
    diagram: Diagram
    score: float  # product of per-string normalized slot probabilities
    playability: float
    unplayable: bool
    pitch_f1: float
    chord_change_ease: Optional[float]  # None when no previous diagram


def annotate(diagram: Diagram, score: float, label: ChordLabel, prev: Optional[Diagram]) -> Suggestion:
    return Suggestion(
        diagram=diagram,
        score=score,
        playability=metrics.anatomical_score(diagram),
        unplayable=metrics.is_unplayable(diagram),
        pitch_f1=metrics.pitch_scores(diagram, label).f1,
        chord_change_ease=metrics.chord_change_ease(prev, diagram) if prev is not None else None,
    )


def _enumerate_diagrams(grid: np.ndarray, k: int) -> list[tuple[Diagram, float]]:
    """Top candidates under per-string independence, by best-first search
    flipping one string at a time to its next-best slot.

    `grid` is the 6x26 row-normalized probability grid.  May return fewer
    than k entries when candidates collapse (all-muted repair) or run out.
    """
    # per string, slot indices by descending probability, ties toward low slots
    order = [sorted(range(grid.shape[1]), key=lambda s: (-row[s], s)) for row in grid]
    ranked = np.array([[row[s] for s in order_i] for row, order_i in zip(grid, order)])

    def log_score(ranks: tuple[int, ...]) -> float:
        return float(sum(np.log(ranked[i, r]) for i, r in enumerate(ranks)))

    start = (0,) * grid.shape[0]
    heap = [(-log_score(start), start)]
    visited = {start}
    out: list[tuple[Diagram, float]] = []
    emitted = set()
    while heap and len(out) < k:
        neg, ranks = heapq.heappop(heap)
        slots = [order[i][r] for i, r in enumerate(ranks)]
        strings = tuple(None if s == encoding.MUTED_SLOT else s for s in slots)
        try:
            diagram = Diagram(strings)
        except AllMuted:
            # replace the muted slot on the row most confident about a fret
            fret_grid = grid[:, : encoding.MUTED_SLOT]
            i = int(np.argmax(np.max(fret_grid, axis=1)))
            repaired = list(strings)
            repaired[i] = int(np.argmax(fret_grid[i]))
            diagram = Diagram(tuple(repaired))
        key = diagram.strings
        if key not in emitted:
            emitted.add(key)
            out.append((diagram, float(np.exp(-neg))))
        for i in range(grid.shape[0]):
            if ranks[i] + 1 < grid.shape[1]:
                nxt = ranks[:i] + (ranks[i] + 1,) + ranks[i + 1 :]
                if nxt not in visited:
                    visited.add(nxt)
                    heapq.heappush(heap, (-log_score(nxt), nxt))
    return out


def suggest(
    model: SuggestionModel,
    label: ChordLabel,
    prev: Optional[Diagram] = None,
    k: int = 5,
) -> list[Suggestion]:
    """Top-k diagram suggestions, ranked by descending score.  The full
    model requires the previous diagram; the baseline ignores it."""
    if model.topology == BASELINE:
        x = encoding.encode_label(label)
    else:
        if prev is None:
            raise MissingContext("full model needs the previous diagram")
        x = encoding.encode_input(prev, label)
    grid = encoding.normalize_rows(forward(model, x)).reshape(6, encoding.NUM_SLOTS)
    return [annotate(d, score, label, prev) for d, score in _enumerate_diagrams(grid, k)]


def continue_sequence(
    model: SuggestionModel,
    labels: list[ChordLabel],
    first: Diagram,
) -> list[Diagram]:
    """Chain top-1 suggestions over a label sequence, starting from a
    caller-chosen first diagram."""
    if not labels:
        raise ValueError("labels must be non-empty")
    diagrams = [first]
    for label in labels[1:]:
        diagrams.append(suggest(model, label, prev=diagrams[-1], k=1)[0].diagram)
    return diagrams
