"""Batch entry points: augment a corpus, measure a technique's gain,
optimize its parameters, and compare corpus statistics.

Every run takes an explicit --seed (no wall-clock default), and outputs
are fully determined by the recorded manifest: rerunning with the same
flags reproduces every output byte for byte, at any worker count.
Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import Corpus, CorpusParseError, CorpusValidationError, load_corpus, serialize_corpus
from .evaluation import GAIN_CSV_HEADER, cross_validate
from .lexicon import LexiconError, builtin_lexicon, load_lexicon
from .providers import ProviderError, make_provider
from .stats import (
    DELTA_CSV_HEADER,
    STATS_CSV_HEADER,
    compare_stats,
    corpus_stats,
    delta_csv_row,
    stats_csv_row,
)
from .techniques import (
    ConfigError,
    TechniqueConfig,
    UnknownTechniqueError,
    augment_corpus,
    list_techniques,
    resolve_technique,
)
from .tpe import optimize, trials_csv


class UsageError(Exception):
    pass


def _parse_value(text: str):
    for caster in (int, float):
        try:
            return caster(text)
        except ValueError:
            pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def _parse_params(pairs) -> dict:
    params = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--params entries must look like key=value, got {pair!r}")
        params[key] = _parse_value(value)
    return params


def _build_config(technique_id: str, params: dict) -> TechniqueConfig:
    resolve_technique(technique_id)  # fail early with the offending id
    n_aug = params.pop("n_aug", 1)
    return TechniqueConfig(technique_id, params, n_aug=n_aug)


def _load_inputs(args):
    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else builtin_lexicon()
    provider = make_provider(args.provider)
    return corpus, lexicon, provider


def _write_outputs(out_dir: Path, files: dict[str, bytes], manifest: dict) -> None:
    """All content is built in memory first; nothing is written until every
    output exists, so failures leave no partial files."""
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {"artifact": "spanaug", "version": __version__, **manifest}
    manifest["outputs"] = sorted(files)
    files = dict(files)
    files["manifest.json"] = (
        json.dumps(manifest, sort_keys=True, indent=2) + "\n"
    ).encode("utf-8")
    for name, content in files.items():
        (out_dir / name).write_bytes(content)


def _options_dict(args, keys) -> dict:
    # workers is deliberately absent: it changes wall time, never outputs,
    # so manifests stay byte-identical across worker counts
    return {key: getattr(args, key) for key in keys}


def cmd_augment(args) -> int:
    corpus, lexicon, provider = _load_inputs(args)
    config = _build_config(args.technique, _parse_params(args.params))
    synthetic = augment_corpus(
        corpus, config, args.seed, lexicon=lexicon, provider=provider, workers=args.workers
    )
    combined = Corpus(
        corpus.documents + tuple(synthetic), corpus.mention_types, corpus.relation_types
    )
    delta = compare_stats(
        corpus, Corpus(tuple(synthetic), corpus.mention_types, corpus.relation_types)
    )
    files = {
        "augmented.json": serialize_corpus(combined),
        "stats_delta.csv": f"{DELTA_CSV_HEADER}\n{delta_csv_row(args.technique, delta)}\n".encode(),
    }
    manifest = {
        "command": "augment",
        "options": _options_dict(
            args, ("corpus", "technique", "params", "seed", "provider", "lexicon")
        ),
    }
    _write_outputs(Path(args.out), files, manifest)
    return 0


def _report_files(report) -> dict[str, bytes]:
    obj = dataclasses.asdict(report)
    return {
        "gain_report.json": (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode(),
        "gain_report.csv": "\n".join([GAIN_CSV_HEADER] + report.csv_rows() + [""]).encode(),
    }


def cmd_evaluate(args) -> int:
    corpus, lexicon, provider = _load_inputs(args)
    config = (
        _build_config(args.technique, _parse_params(args.params)) if args.technique else None
    )
    tasks = ("md", "re") if args.task == "both" else (args.task,)
    report = cross_validate(
        corpus,
        args.folds,
        config,
        args.seed,
        tasks=tasks,
        epochs=args.epochs,
        window=args.window,
        lexicon=lexicon,
        provider=provider,
        workers=args.workers,
    )
    manifest = {
        "command": "evaluate",
        "options": _options_dict(
            args,
            (
                "corpus",
                "technique",
                "params",
                "task",
                "folds",
                "epochs",
                "window",
                "seed",
                "provider",
                "lexicon",
            ),
        ),
    }
    _write_outputs(Path(args.out), _report_files(report), manifest)
    return 0


def cmd_optimize(args) -> int:
    corpus, lexicon, provider = _load_inputs(args)
    resolve_technique(args.technique)
    best, history = optimize(
        args.technique,
        corpus,
        args.task,
        n_trials=args.trials,
        seed=args.seed,
        k=args.folds,
        epochs=args.epochs,
        window=args.window,
        lexicon=lexicon,
        provider=provider,
        workers=args.workers,
    )
    best_record = max(
        (t for t in history if t.status == "complete"),
        key=lambda t: (t.objective, -t.trial_index),
    )
    best_obj = {
        "technique_id": best.technique_id,
        "task": args.task,
        "params": dict(best.params),
        "n_aug": best.n_aug,
        "objective": best_record.objective,
        "trial_index": best_record.trial_index,
    }
    files = {
        "trials.csv": trials_csv(history, args.task).encode(),
        "best_config.json": (json.dumps(best_obj, sort_keys=True, indent=2) + "\n").encode(),
    }
    manifest = {
        "command": "optimize",
        "options": _options_dict(
            args,
            (
                "corpus",
                "technique",
                "task",
                "trials",
                "folds",
                "epochs",
                "window",
                "seed",
                "provider",
                "lexicon",
            ),
        ),
    }
    _write_outputs(Path(args.out), files, manifest)
    return 0


def cmd_analyze(args) -> int:
    original = load_corpus(args.corpus)
    augmented = load_corpus(args.augmented)
    delta = compare_stats(original, augmented)
    stats_rows = [
        STATS_CSV_HEADER,
        stats_csv_row("original", corpus_stats(original)),
        stats_csv_row("augmented", corpus_stats(augmented)),
        "",
    ]
    files = {
        "stats.csv": "\n".join(stats_rows).encode(),
        "stats_delta.csv": f"{DELTA_CSV_HEADER}\n{delta_csv_row(args.technique, delta)}\n".encode(),
    }
    manifest = {
        "command": "analyze",
        "options": _options_dict(args, ("corpus", "augmented", "technique")),
    }
    _write_outputs(Path(args.out), files, manifest)
    return 0


def _add_common(parser, *, seed: bool = True) -> None:
    parser.add_argument("--corpus", required=True, help="corpus JSON file")
    parser.add_argument("--out", required=True, help="output directory")
    if seed:
        parser.add_argument("--seed", type=int, required=True, help="run seed (mandatory)")
        parser.add_argument(
            "--provider", default="stub", help="'stub' or a rewrite service base URL"
        )
        parser.add_argument("--lexicon", default=None, help="lexicon directory (default: bundled)")
        parser.add_argument(
            "--workers", type=int, default=1, help="parallel workers (wall time only)"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spanaug",
        description="Annotation-preserving augmentation for span/relation corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("augment", help="write originals plus synthetic documents")
    _add_common(p)
    p.add_argument("--technique", required=True, help="technique name or alias")
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.set_defaults(fn=cmd_augment)

    p = sub.add_parser("evaluate", help="cross-validated gain for one configuration")
    _add_common(p)
    p.add_argument("--technique", default=None)
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--task", choices=("md", "re", "both"), default="both")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--window", type=int, default=1)
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("optimize", help="TPE search over a technique's parameters")
    _add_common(p)
    p.add_argument("--technique", required=True)
    p.add_argument("--task", choices=("md", "re"), required=True)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--window", type=int, default=1)
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("analyze", help="stats deltas between two corpora")
    _add_common(p, seed=False)
    p.add_argument("--augmented", required=True, help="augmented corpus JSON file")
    p.add_argument("--technique", default="unknown", help="label for the delta CSV row")
    p.set_defaults(fn=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UnknownTechniqueError as e:
        print(
            f"error: unknown technique {e.args[0]!r}; known: {', '.join(list_techniques())}",
            file=sys.stderr,
        )
        return 2
    except (UsageError, ConfigError, FileNotFoundError, NotADirectoryError, ValueError) as e:
        if isinstance(e, (CorpusParseError, CorpusValidationError, LexiconError)):
            print(f"error: {e}", file=sys.stderr)
            return 1
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ProviderError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
