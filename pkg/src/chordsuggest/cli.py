"""Command-line entry point: ingest, stats, augment, train, eval,
suggest, continue, serve."""

from __future__ import annotations

import argparse
import json
import sys

from chordsuggest import data, metrics, model as model_mod, suggest as suggest_mod
from chordsuggest.chords import ChordError, parse_label
from chordsuggest.data import SplitSpec, Transition
from chordsuggest.fretboard import DiagramError, format_fingering, parse_fingering
from chordsuggest.model import BASELINE, FULL, TrainConfig


def _write_out(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_ingest(args) -> int:
    transitions: list[Transition] = []
    with open(args.data) as fh:
        for track in data.read_tracks(fh):
            transitions.extend(data.extract_transitions(track))
    with open(args.out, "w") as fh:
        data.write_transitions(transitions, fh)
    print(f"wrote {len(transitions)} transitions to {args.out}")
    return 0


def cmd_stats(args) -> int:
    with open(args.data) as fh:
        transitions = data.read_transitions(fh)
    result = data.stats(transitions)
    if args.top:
        result["nature_histogram"] = dict(list(result["nature_histogram"].items())[: args.top])
        result["diagrams_per_label"] = dict(list(result["diagrams_per_label"].items())[: args.top])
    _write_out(json.dumps(result, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_augment(args) -> int:
    with open(args.data) as fh:
        transitions = data.read_transitions(fh)
    augmented = data.augment(transitions)
    with open(args.out, "w") as fh:
        data.write_transitions(augmented, fh)
    print(f"{len(transitions)} transitions -> {len(augmented)} after augmentation")
    return 0


def _augment_default(topology: str) -> bool:
    # augmentation hurts the baseline, so it is on only for the full model
    return topology == FULL


def cmd_train(args) -> int:
    with open(args.data) as fh:
        transitions = data.read_transitions(fh)
    spec = SplitSpec(seed=args.seed, split_index=args.split_index)
    train_part, val_part, _ = data.split(transitions, spec)
    do_augment = args.augment if args.augment is not None else _augment_default(args.topology)
    if do_augment:
        train_part = data.augment(train_part)
    cfg = TrainConfig(seed=args.seed, max_epochs=args.max_epochs, batch_size=args.batch_size)
    trained, report = model_mod.train(
        data.encode_transitions(train_part, args.topology),
        data.encode_transitions(val_part, args.topology),
        cfg,
        topology=args.topology,
    )
    model_mod.save(trained, args.out)
    print(
        f"trained {args.topology} model for {report.epochs_run} epochs "
        f"(early stop: {report.stopped_early}), final val loss "
        f"{report.val_losses[-1]:.6f}, saved to {args.out}"
    )
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(
                {
                    "epochs_run": report.epochs_run,
                    "train_losses": report.train_losses,
                    "val_losses": report.val_losses,
                    "stopped_early": report.stopped_early,
                },
                fh,
                indent=2,
            )
    return 0


def cmd_eval(args) -> int:
    trained = model_mod.load(args.model)
    with open(args.data) as fh:
        transitions = data.read_transitions(fh)
    results = []
    for split_index in range(args.splits):
        spec = SplitSpec(seed=args.seed, split_index=split_index)
        _, _, test_part = data.split(transitions, spec)
        results.append(metrics.evaluate_split(trained, test_part))
    report = metrics.format_report(metrics.aggregate_splits(results))
    _write_out(report, args.out)
    return 0


def cmd_suggest(args) -> int:
    trained = model_mod.load(args.model)
    label = parse_label(args.label)
    prev = parse_fingering(args.prev) if args.prev else None
    suggestions = suggest_mod.suggest(trained, label, prev=prev, k=args.k)
    for s in suggestions:
        ease = f" ease={s.chord_change_ease:.3f}" if s.chord_change_ease is not None else ""
        star = " *" if s.unplayable else ""
        print(
            f"{format_fingering(s.diagram)} score={s.score:.4f} "
            f"playability={s.playability:.2f} pitch_f1={s.pitch_f1:.2f}{ease}{star}"
        )
    return 0


def cmd_continue(args) -> int:
    trained = model_mod.load(args.model)
    labels = [parse_label(t) for t in args.labels]
    first = parse_fingering(args.first)
    diagrams = suggest_mod.continue_sequence(trained, labels, first)
    for label_text, diagram in zip(args.labels, diagrams):
        print(f"{label_text}\t{format_fingering(diagram)}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from chordsuggest.server import create_app

    app = create_app(model_path=args.model, static_dir=args.static, allow_cors=args.cors)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordsuggest",
        description="Context-aware guitar chord diagram suggestion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="extract transitions from a tracks JSONL file")
    p.add_argument("--data", required=True, help="tracks JSONL path")
    p.add_argument("--out", required=True, help="transitions JSONL output path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="corpus statistics (root/nature histograms, diagrams per label)")
    p.add_argument("--data", required=True, help="transitions JSONL path")
    p.add_argument("--top", type=int, default=0, help="truncate histograms to the top N entries")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("augment", help="fret-shift augmentation of a transitions file")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("train", help="train a suggestion model")
    p.add_argument("--data", required=True, help="transitions JSONL path")
    p.add_argument("--out", required=True, help="model file output path")
    p.add_argument("--topology", choices=[BASELINE, FULL], default=FULL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split-index", type=int, default=0)
    p.add_argument("--max-epochs", type=int, default=200)
    p.add_argument("--batch-size", type=int, default=None)
    p.add_argument("--report", default=None, help="write the per-epoch loss report here")
    aug = p.add_mutually_exclusive_group()
    aug.add_argument("--augment", dest="augment", action="store_true", default=None)
    aug.add_argument("--no-augment", dest="augment", action="store_false")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model over test splits")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--splits", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("suggest", help="suggest diagrams for one chord label")
    p.add_argument("--model", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--prev", default=None, help="previous diagram fingering")
    p.add_argument("--k", type=int, default=5)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("continue", help="chain suggestions over a label sequence")
    p.add_argument("--model", required=True)
    p.add_argument("--first", required=True, help="fingering of the first diagram")
    p.add_argument("labels", nargs="+", help="chord labels in order")
    p.set_defaults(func=cmd_continue)

    p = sub.add_parser("serve", help="start the HTTP suggestion service")
    p.add_argument("--model", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", default=None, help="directory with the built web UI")
    p.add_argument("--cors", action="store_true", help="permissive cross-origin policy (development)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ChordError, DiagramError, data.ParseError, data.TooFewTransitions,
            metrics.EmptyTestSet, model_mod.ModelError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
