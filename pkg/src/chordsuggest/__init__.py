"""Context-aware guitar chord diagram suggestion.

Given a chord label and the previously played diagram, suggest fretboard
diagrams via a small trained network, and evaluate them with pitch,
fretboard, playability, transition-ease and texture metrics.
"""

from chordsuggest.chords import ChordLabel, parse_label, format_label, pitch_classes
from chordsuggest.fretboard import Diagram, parse_fingering, format_fingering

__all__ = [
    "ChordLabel",
    "parse_label",
    "format_label",
    "pitch_classes",
    "Diagram",
    "parse_fingering",
    "format_fingering",
]

__version__ = "0.1.0"
