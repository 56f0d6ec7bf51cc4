"""Command-line interface.

Subcommands cover the common workflows: build embeddings for a dataset,
merge train sets for cross-lingual training, run a full track, score a
prediction file against gold, and plot predictions.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .corpus import load_dataset, load_predictions, merge_train_sets, write_dataset
from .errors import AlignmentError, SemrelError
from .featurize import fit_ppmi, ppmi_embed, save_embeddings, tfidf_embed
from .metrics import spearman
from .pipeline import emit_scatter, load_config, run
from .tokenizer import fit_vocab, tokenize


def _dataset_tokens(paths: list[Path]) -> list[list[str]]:
    tokens: list[list[str]] = []
    for path in paths:
        ds = load_dataset(path, has_gold=False)
        tokens.extend(tokenize(text) for _, text in ds.sentences())
    return tokens


def _cmd_featurize(args: argparse.Namespace) -> int:
    data = load_dataset(args.data, has_gold=False)
    fit_paths = [Path(p) for p in (args.fit_data or [args.data])]
    vocab = fit_vocab(_dataset_tokens(fit_paths), min_df=args.min_df)
    if args.method == "tfidf":
        embeddings = tfidf_embed(data, vocab)
    else:
        model = fit_ppmi(_dataset_tokens(fit_paths), vocab, window=args.window)
        embeddings = ppmi_embed(data, model)
    save_embeddings(embeddings, args.out)
    print(f"wrote {len(embeddings.vectors)} vectors (dim {embeddings.dim}) to {args.out}")
    return 0


def _cmd_merge_train(args: argparse.Namespace) -> int:
    sources = []
    for entry in args.source:
        lang, sep, path = entry.partition("=")
        if not sep or not lang or not path:
            raise SemrelError(f"malformed --source {entry!r}, expected <lang>=<path>")
        sources.append(load_dataset(path, has_gold=True, language=lang, split="train"))
    merged = merge_train_sets(sources, args.target)
    write_dataset(merged, args.out)
    print(f"wrote {len(merged)} merged pairs for target {args.target!r} to {args.out}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.track:
        cfg.track = args.track
    if args.out_dir:
        cfg.out_dir = Path(args.out_dir)
    if args.seed is not None:
        cfg.seed = args.seed
    report = run(cfg)
    dev = report.ensemble_dev_spearman
    test = report.ensemble_test_spearman
    failed = sum(1 for m in report.members if m.failed)
    print(f"track {report.track} ({report.language}): "
          f"{len(report.members)} members ({failed} failed)")
    print(f"ensemble dev spearman: {'undefined' if dev is None else f'{dev:.4f}'}")
    print(f"ensemble test spearman: {'undefined' if test is None else f'{test:.4f}'}")
    print(f"report: {cfg.out_dir / 'report.json'}")
    return 0


def _aligned_gold_pred(gold_path: str, pred_path: str):
    gold_ds = load_dataset(gold_path, has_gold=True)
    ids, preds = load_predictions(pred_path)
    by_id = dict(zip(ids, preds))
    missing = [p.pair_id for p in gold_ds.pairs if p.pair_id not in by_id]
    if missing:
        raise AlignmentError(
            f"predictions missing {len(missing)} gold pair ids (first: {missing[0]!r})"
        )
    gold = np.asarray(gold_ds.gold)
    pred = np.asarray([by_id[p.pair_id] for p in gold_ds.pairs])
    return gold, pred


def _cmd_evaluate(args: argparse.Namespace) -> int:
    gold, pred = _aligned_gold_pred(args.gold, args.pred)
    report = spearman(pred, gold)
    value = "undefined" if report.spearman is None else f"{report.spearman:.6f}"
    print(f"n {report.n}")
    print(f"spearman {value}")
    return 0


def _cmd_scatter(args: argparse.Namespace) -> int:
    gold, pred = _aligned_gold_pred(args.gold, args.pred)
    emit_scatter(gold, pred, args.out)
    base = Path(args.out)
    print(f"wrote {base.with_suffix('.csv')} and {base.with_suffix('.svg')}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semrel",
        description="Sentence-pair relatedness: embeddings, regression, ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("featurize", help="embed a dataset's sentences to a TSV file")
    p.add_argument("--data", required=True, help="dataset CSV to embed")
    p.add_argument("--fit-data", action="append",
                   help="dataset CSV(s) to fit on (default: --data)")
    p.add_argument("--method", required=True, choices=("tfidf", "ppmi"))
    p.add_argument("--out", required=True, help="output embedding TSV path")
    p.add_argument("--min-df", type=int, default=1)
    p.add_argument("--window", type=int, default=2,
                   help="co-occurrence window for ppmi")
    p.set_defaults(func=_cmd_featurize)

    p = sub.add_parser("merge-train", help="merge train sets for a target language")
    p.add_argument("--target", required=True, help="target language code")
    p.add_argument("--source", action="append", required=True,
                   help="<lang>=<path>, repeatable")
    p.add_argument("--out", required=True, help="output dataset CSV path")
    p.set_defaults(func=_cmd_merge_train)

    p = sub.add_parser("run", help="run a full track from a config file")
    p.add_argument("--track", choices=("a", "b", "c"),
                   help="override the config's track")
    p.add_argument("--config", required=True, help="key = value config file")
    p.add_argument("--out-dir", help="override the config's out_dir")
    p.add_argument("--seed", type=int, help="override the config's seed")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("evaluate", help="Spearman of a prediction file against gold")
    p.add_argument("--gold", required=True, help="dataset CSV with Score column")
    p.add_argument("--pred", required=True, help="predictions CSV")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("scatter", help="write gold-vs-predicted CSV and SVG")
    p.add_argument("--gold", required=True, help="dataset CSV with Score column")
    p.add_argument("--pred", required=True, help="predictions CSV")
    p.add_argument("--out", required=True, help="output basename (.csv/.svg added)")
    p.set_defaults(func=_cmd_scatter)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SemrelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
