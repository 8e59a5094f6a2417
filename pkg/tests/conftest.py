import json

import pytest

from chordsuggest.data import Transition, write_transitions

# small synthetic corpus: open shapes after open context, barre shapes after
# barre context, enough variety for train/eval smoke tests
SHAPES = [
    ("Am", "x.0.2.2.1.0", "5.7.7.5.5.5"),
    ("C", "x.3.2.0.1.0", "8.10.10.9.8.8"),
    ("G", "3.2.0.0.0.3", "3.5.5.4.3.3"),
    ("D", "x.x.0.2.3.2", "5.5.7.7.7.5"),
    ("E", "0.2.2.1.0.0", "x.7.9.9.9.7"),
    ("F", "1.3.3.2.1.1", "x.8.10.10.10.8"),
]


def context_corpus(n=120):
    """Each label maps to its open shape after open context and its barre
    shape after barre context."""
    out = []
    for i in range(n):
        prev_label, prev_open, prev_barre = SHAPES[i % len(SHAPES)]
        next_label, next_open, next_barre = SHAPES[(i + 1 + i // len(SHAPES)) % len(SHAPES)]
        if i % 2 == 0:
            out.append(Transition(prev_label, prev_open, next_label, next_open, f"t{i}"))
        else:
            out.append(Transition(prev_label, prev_barre, next_label, next_barre, f"t{i}"))
    return out


@pytest.fixture
def transitions_file(tmp_path):
    path = tmp_path / "transitions.jsonl"
    with open(path, "w") as fh:
        write_transitions(context_corpus(), fh)
    return path


@pytest.fixture
def tracks_file(tmp_path):
    path = tmp_path / "tracks.jsonl"
    track = {
        "track_id": "demo",
        "events": [
            {"bar": 0, "label": "Am", "fingering": "x.0.2.2.1.0"},
            {"bar": 1, "label": "F", "fingering": "1.3.3.2.1.1"},
            {"bar": 2, "label": "C", "fingering": "x.3.2.0.1.0"},
            {"bar": 3, "label": "G", "fingering": "3.2.0.0.0.3"},
        ],
    }
    with open(path, "w") as fh:
        fh.write(json.dumps(track) + "\n")
    return path
