"""Vector encodings between chord labels / diagrams and model I/O.

Layouts (stable across training, inference and model files; the layout tag
below is written into model file headers):

  label vector, 24 values:   [bass one-hot 12 | pitch-class many-hot 12]
  diagram vector, 156 values: 6 rows of 26 flattened row-major; per row,
      slots 0..24 are frets and slot 25 is the muted flag (exactly one hot)
  model input, 180 values:   [previous diagram 156 | label 24]
"""

from __future__ import annotations

import numpy as np

from chordsuggest.chords import ChordLabel, pitch_classes
from chordsuggest.fretboard import Diagram

NUM_SLOTS = 26  # frets 0..24 plus the muted flag at slot 25
MUTED_SLOT = 25
LABEL_WIDTH = 24
DIAGRAM_WIDTH = 6 * NUM_SLOTS  # 156
INPUT_WIDTH = DIAGRAM_WIDTH + LABEL_WIDTH  # 180

INPUT_LAYOUT_TAG = "prev156+bass12+nature12/v1"


def encode_label(label: ChordLabel) -> np.ndarray:
    """24-value label vector: bass one-hot then pitch-class many-hot."""
    vec = np.zeros(LABEL_WIDTH)
    vec[label.bass] = 1.0
    for pc in pitch_classes(label):
        vec[12 + pc] = 1.0
    return vec


def encode_diagram(diagram: Diagram) -> np.ndarray:
    """156-value diagram vector, one hot slot per string."""
    grid = np.zeros((6, NUM_SLOTS))
    for i, s in enumerate(diagram.strings):
        grid[i, MUTED_SLOT if s is None else s] = 1.0
    return grid.reshape(-1)


def encode_input(prev: Diagram, label: ChordLabel) -> np.ndarray:
    """180-value model input for the full model."""
    return np.concatenate([encode_diagram(prev), encode_label(label)])


def decode_probabilities(probs: np.ndarray) -> Diagram:
    """Per-string argmax decode of 156 probabilities; ties break toward the
    lowest slot index (open string over higher frets, fret over muted)."""
    grid = np.asarray(probs).reshape(6, NUM_SLOTS)
    strings = []
    for row in grid:
        slot = int(np.argmax(row))  # np.argmax returns the first maximum
        strings.append(None if slot == MUTED_SLOT else slot)
    if all(s is None for s in strings):
        # a diagram must sound at least one string: give the muted row with
        # the strongest fret preference its best fret instead
        fret_grid = grid[:, :MUTED_SLOT]
        i = int(np.argmax(np.max(fret_grid, axis=1)))
        strings[i] = int(np.argmax(fret_grid[i]))
    return Diagram(tuple(strings))


def normalize_rows(probs: np.ndarray) -> np.ndarray:
    """Divide each 26-slot row by its sum, turning raw sigmoid outputs into
    per-string probability distributions."""
    grid = np.asarray(probs, dtype=float).reshape(6, NUM_SLOTS)
    return (grid / grid.sum(axis=1, keepdims=True)).reshape(-1)
