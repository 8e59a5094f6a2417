"""HTTP service exposing suggestion, sequence continuation and health
endpoints; optionally serves the built web UI under /.

Fingering strings ("x.0.2.2.1.0") are the wire representation of
diagrams.  The loaded model is immutable shared state; requests are
stateless and safe to handle concurrently.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from chordsuggest import suggest as suggest_mod
from chordsuggest.chords import ChordError, MalformedBass, MalformedRoot, UnknownNature, parse_label
from chordsuggest.fretboard import DiagramError, format_fingering, parse_fingering
from chordsuggest.model import FORMAT_VERSION, SuggestionModel, load

MAX_K = 25


class SuggestRequest(BaseModel):
    label: str
    prev_fingering: Optional[str] = None
    k: int = Field(default=5, ge=1, le=MAX_K)


class ContinueRequest(BaseModel):
    labels: list[str] = Field(min_length=1)
    first_fingering: str


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _chord_error_code(exc: ChordError) -> str:
    if isinstance(exc, MalformedRoot):
        return "MalformedRoot"
    if isinstance(exc, UnknownNature):
        return "UnknownNature"
    if isinstance(exc, MalformedBass):
        return "MalformedBass"
    return "MalformedLabel"


def _suggestion_payload(s: suggest_mod.Suggestion) -> dict:
    payload = {
        "fingering": format_fingering(s.diagram),
        "score": s.score,
        "playability": s.playability,
        "unplayable": s.unplayable,
        "pitch_f1": s.pitch_f1,
    }
    if s.chord_change_ease is not None:
        payload["chord_change_ease"] = s.chord_change_ease
    return payload


def create_app(
    model_path: Optional[str] = None,
    model: Optional[SuggestionModel] = None,
    static_dir: Optional[str] = None,
    allow_cors: bool = False,
) -> FastAPI:
    app = FastAPI(title="chordsuggest")
    loaded = model if model is not None else (load(model_path) if model_path else None)

    if allow_cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
        )

    @app.get("/api/health")
    def health():
        if loaded is None:
            return _error(503, "ModelNotLoaded", "no model loaded")
        return {
            "status": "ok",
            "model_topology": loaded.topology,
            "format_version": FORMAT_VERSION,
        }

    @app.post("/api/suggest")
    def api_suggest(req: SuggestRequest):
        if loaded is None:
            return _error(503, "ModelNotLoaded", "no model loaded")
        try:
            label = parse_label(req.label)
        except ChordError as exc:
            return _error(400, _chord_error_code(exc), str(exc))
        prev = None
        if req.prev_fingering is not None:
            try:
                prev = parse_fingering(req.prev_fingering)
            except DiagramError as exc:
                return _error(400, "MalformedFingering", str(exc))
        try:
            suggestions = suggest_mod.suggest(loaded, label, prev=prev, k=req.k)
        except suggest_mod.MissingContext as exc:
            return _error(400, "MissingContext", str(exc))
        return {"suggestions": [_suggestion_payload(s) for s in suggestions]}

    @app.post("/api/continue")
    def api_continue(req: ContinueRequest):
        if loaded is None:
            return _error(503, "ModelNotLoaded", "no model loaded")
        labels = []
        for i, text in enumerate(req.labels):
            try:
                labels.append(parse_label(text))
            except ChordError as exc:
                return _error(400, _chord_error_code(exc), f"label {i}: {exc}")
        try:
            first = parse_fingering(req.first_fingering)
        except DiagramError as exc:
            return _error(400, "MalformedFingering", str(exc))
        try:
            diagrams = suggest_mod.continue_sequence(loaded, labels, first)
        except suggest_mod.MissingContext as exc:
            return _error(400, "MissingContext", str(exc))
        steps = []
        for i, diagram in enumerate(diagrams):
            prev = diagrams[i - 1] if i > 0 else None
            payload = _suggestion_payload(suggest_mod.annotate(diagram, 1.0, labels[i], prev))
            del payload["score"]
            steps.append(payload)
        return {
            "fingerings": [format_fingering(d) for d in diagrams],
            "annotations": steps,
        }

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
