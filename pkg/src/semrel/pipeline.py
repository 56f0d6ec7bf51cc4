"""End-to-end track protocols: featurize, fit, predict, evaluate, ensemble.

Three protocols share one machinery:

* track A (supervised): per embedding source, fit ElasticNet and OLS on
  the train split, predict dev/test, clip, then a dev-Spearman-weighted
  ensemble.
* track B (unsupervised): per source, the pair cosine mapped to [0, 1] by
  (cos + 1) / 2; no model is fitted and gold is touched only by
  evaluation. Uniform ensemble.
* track C (cross-lingual): train on a merge of other languages' train
  sets, fit both regressors per source, uniform ensemble.

Reports are JSON and deterministic: rerunning an identical config and
seed reproduces the same bytes. Wall-clock timing is therefore kept on
the in-memory report only, never serialized.
"""

from __future__ import annotations

import csv
import json
import random
import re
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import corpus as corpus_mod
from .corpus import PairDataset, load_dataset, merge_train_sets, write_predictions
from .ensemble import combine, dev_weighted_spec, uniform_spec
from .errors import AlignmentError, ConfigError, IntegrityError, SemrelError
from .featurize import (
    EmbeddingSet,
    fit_ppmi,
    load_external_embeddings,
    merge_embedding_sets,
    ppmi_embed,
    tfidf_embed,
)
from .metrics import spearman
from .pairsim import build_pair_features
from .regress import clip_unit, fit_elasticnet, fit_ols, predict
from .tokenizer import fit_vocab, tokenize

TRACKS = ("a", "b", "c")

SCATTER_PLOT = 400
SCATTER_MARGIN = 40


@dataclass
class EmbeddingSource:
    """One embedding route: built-in (tfidf, ppmi) or an external TSV set."""

    kind: str  # tfidf | ppmi | external
    label: str
    paths: list[Path] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.kind not in ("tfidf", "ppmi", "external"):
            raise ConfigError(f"unknown embedding source kind {self.kind!r}")
        if self.kind == "external" and not self.paths:
            raise ConfigError(f"external source {self.label!r} needs at least one path")


@dataclass
class RunConfig:
    """Everything a track run needs; validated per track by :meth:`validate`."""

    track: str
    language: str
    sources: list[EmbeddingSource]
    out_dir: Path
    train: Path | None = None
    dev: Path | None = None
    test: Path | None = None
    merge_train: list[tuple[str, Path]] = field(default_factory=list)
    feature_mode: str | None = None  # default: rich for a/c, cosine_only for b
    alpha: float = 0.1
    l1_ratio: float = 0.5
    tol: float = 1e-6
    max_iter: int = 1000
    grid_alphas: list[float] = field(default_factory=list)
    min_df: int = 1
    ppmi_window: int = 2
    ensemble_rule: str | None = None
    seed: int = 0
    separator: str = corpus_mod.DEFAULT_SEPARATOR

    def validate(self) -> None:
        if self.track not in TRACKS:
            raise ConfigError(f"track must be one of {TRACKS}, got {self.track!r}")
        if not self.language:
            raise ConfigError("language is required")
        if not self.sources:
            raise ConfigError("at least one embedding source is required")
        if self.ensemble_rule not in (None, "dev_weighted", "uniform"):
            raise ConfigError(f"unknown ensemble rule {self.ensemble_rule!r}")
        if self.track == "a":
            for name in ("train", "dev", "test"):
                if getattr(self, name) is None:
                    raise ConfigError(f"track A requires a {name} path")
        elif self.track == "b":
            for name in ("dev", "test"):
                if getattr(self, name) is None:
                    raise ConfigError(f"track B requires a {name} path")
        else:
            for name in ("dev", "test"):
                if getattr(self, name) is None:
                    raise ConfigError(f"track C requires a {name} path")
            if not self.merge_train:
                raise ConfigError("track C requires a non-empty merge_train list")
            for lang, _ in self.merge_train:
                if lang == self.language:
                    raise ConfigError(
                        f"merge_train source {lang!r} equals the target language"
                    )

    @property
    def resolved_feature_mode(self) -> str:
        if self.feature_mode is not None:
            return self.feature_mode
        return "cosine_only" if self.track == "b" else "rich"

    @property
    def resolved_ensemble_rule(self) -> str:
        if self.ensemble_rule is not None:
            return self.ensemble_rule
        return "dev_weighted" if self.track == "a" else "uniform"

    def echo(self) -> dict:
        """Config as a JSON-ready dict, embedded in the run report."""

        def path_str(p: Path | None):
            return str(p) if p is not None else None

        return {
            "track": self.track,
            "language": self.language,
            "train": path_str(self.train),
            "dev": path_str(self.dev),
            "test": path_str(self.test),
            "merge_train": [[lang, str(p)] for lang, p in self.merge_train],
            "sources": [
                {"kind": s.kind, "label": s.label, "paths": [str(p) for p in s.paths]}
                for s in self.sources
            ],
            "feature_mode": self.resolved_feature_mode,
            "alpha": self.alpha,
            "l1_ratio": self.l1_ratio,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "grid_alphas": list(self.grid_alphas),
            "min_df": self.min_df,
            "ppmi_window": self.ppmi_window,
            "ensemble_rule": self.resolved_ensemble_rule,
            "seed": self.seed,
            "separator": self.separator.encode("unicode_escape").decode("ascii"),
            "out_dir": str(self.out_dir),
        }


_SEPARATOR_WORDS = {"newline": "\n", "tab": "\t", "\\n": "\n", "\\t": "\t"}

_CONFIG_KEYS = {
    "track",
    "language",
    "train",
    "dev",
    "test",
    "merge_train",
    "sources",
    "out_dir",
    "seed",
    "alpha",
    "l1_ratio",
    "tol",
    "max_iter",
    "grid_alphas",
    "feature_mode",
    "ensemble_rule",
    "min_df",
    "ppmi_window",
    "separator",
}


def parse_sources(text: str, base: Path) -> list[EmbeddingSource]:
    """Parse the config ``sources`` value.

    Comma-separated entries: ``tfidf``, ``ppmi``, or
    ``external:<name>=<path>[;<path>...]``. Relative paths resolve
    against ``base``.
    """
    sources: list[EmbeddingSource] = []
    for entry in (part.strip() for part in text.split(",")):
        if not entry:
            continue
        if entry in ("tfidf", "ppmi"):
            sources.append(EmbeddingSource(kind=entry, label=entry))
        elif entry.startswith("external:"):
            body = entry[len("external:") :]
            name, sep, path_text = body.partition("=")
            if not sep or not name or not path_text:
                raise ConfigError(
                    f"malformed external source {entry!r}, expected external:<name>=<path>"
                )
            paths = [base / p.strip() for p in path_text.split(";") if p.strip()]
            sources.append(EmbeddingSource(kind="external", label=name, paths=paths))
        else:
            raise ConfigError(f"unknown embedding source {entry!r}")
    return sources


def load_config(path: str | Path) -> RunConfig:
    """Read a flat ``key = value`` config file into a RunConfig.

    Lines starting with ``#`` and blank lines are ignored. Relative paths
    resolve against the config file's directory.
    """
    path = Path(path)
    base = path.parent
    raw: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{line_no}: unknown config key {key!r}")
            raw[key] = value.strip()

    def get_path(key: str) -> Path | None:
        if key not in raw or not raw[key]:
            return None
        return base / raw[key]

    merge_train: list[tuple[str, Path]] = []
    if raw.get("merge_train"):
        for entry in raw["merge_train"].split(","):
            entry = entry.strip()
            if not entry:
                continue
            lang, sep, p = entry.partition("=")
            if not sep or not lang.strip() or not p.strip():
                raise ConfigError(
                    f"malformed merge_train entry {entry!r}, expected <lang>=<path>"
                )
            merge_train.append((lang.strip(), base / p.strip()))

    separator = corpus_mod.DEFAULT_SEPARATOR
    if raw.get("separator"):
        separator = _SEPARATOR_WORDS.get(raw["separator"], raw["separator"])

    grid_alphas: list[float] = []
    if raw.get("grid_alphas"):
        grid_alphas = [float(v) for v in raw["grid_alphas"].split(",") if v.strip()]

    out_dir = get_path("out_dir")
    if out_dir is None:
        raise ConfigError(f"{path}: config must set out_dir")
    if "sources" not in raw:
        raise ConfigError(f"{path}: config must set sources")

    return RunConfig(
        track=raw.get("track", "").lower(),
        language=raw.get("language", ""),
        sources=parse_sources(raw["sources"], base),
        out_dir=out_dir,
        train=get_path("train"),
        dev=get_path("dev"),
        test=get_path("test"),
        merge_train=merge_train,
        feature_mode=raw.get("feature_mode") or None,
        alpha=float(raw.get("alpha", 0.1)),
        l1_ratio=float(raw.get("l1_ratio", 0.5)),
        tol=float(raw.get("tol", 1e-6)),
        max_iter=int(raw.get("max_iter", 1000)),
        grid_alphas=grid_alphas,
        min_df=int(raw.get("min_df", 1)),
        ppmi_window=int(raw.get("ppmi_window", 2)),
        ensemble_rule=raw.get("ensemble_rule") or None,
        seed=int(raw.get("seed", 0)),
        separator=separator,
    )


@dataclass
class MemberReport:
    """One ensemble member: an embedding source, optionally with a regressor."""

    name: str
    source: str
    regressor: str | None
    dev_spearman: float | None = None
    test_spearman: float | None = None
    weight: float = 0.0
    failed: bool = False
    error: str | None = None
    alpha: float | None = None


@dataclass
class RunReport:
    """Evaluation summary of one track run.

    ``timing_seconds`` is intentionally excluded from the serialized
    report so identical runs serialize to identical bytes.
    """

    track: str
    language: str
    sizes: dict[str, int]
    members: list[MemberReport]
    ensemble_rule: str
    ensemble_dev_spearman: float | None
    ensemble_test_spearman: float | None
    config: dict
    merge_sources: list[str] = field(default_factory=list)
    timing_seconds: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "track": self.track,
            "language": self.language,
            "sizes": self.sizes,
            "members": [
                {
                    "name": m.name,
                    "source": m.source,
                    "regressor": m.regressor,
                    "dev_spearman": m.dev_spearman,
                    "test_spearman": m.test_spearman,
                    "weight": m.weight,
                    "failed": m.failed,
                    "error": m.error,
                    "alpha": m.alpha,
                }
                for m in self.members
            ],
            "ensemble": {
                "rule": self.ensemble_rule,
                "dev_spearman": self.ensemble_dev_spearman,
                "test_spearman": self.ensemble_test_spearman,
            },
            "merge_sources": self.merge_sources,
            "config": self.config,
        }


def report_json(report: RunReport) -> str:
    """Canonical JSON for a report: sorted keys, stable float rendering."""
    return json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"


def emit_scatter(gold, pred, path: str | Path) -> None:
    """Write gold-vs-predicted plot data: ``<path>.csv`` and ``<path>.svg``.

    The SVG is self-contained, with both axes spanning [0, 1] and a
    dashed identity line for reference.
    """
    gold = np.asarray(gold, dtype=float)
    pred = np.asarray(pred, dtype=float)
    if gold.shape != pred.shape:
        raise AlignmentError(f"gold has shape {gold.shape}, pred {pred.shape}")
    base = Path(path)
    with open(base.with_suffix(".csv"), "w", encoding="utf-8", newline="") as fh:
        fh.write("gold,pred\n")
        for g, p in zip(gold, pred):
            fh.write(f"{g:.9g},{p:.9g}\n")

    m, s = SCATTER_MARGIN, SCATTER_PLOT
    size = 2 * m + s

    def px(v: float) -> float:
        return m + v * s

    def py(v: float) -> float:
        return m + s - v * s

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="12">',
        f'<rect x="{m}" y="{m}" width="{s}" height="{s}" fill="none" stroke="#555"/>',
        f'<line x1="{px(0):.3f}" y1="{py(0):.3f}" x2="{px(1):.3f}" y2="{py(1):.3f}" '
        f'stroke="#999" stroke-dasharray="5 4"/>',
    ]
    for tick in (0.0, 0.5, 1.0):
        x = px(tick)
        y = py(tick)
        parts.append(
            f'<line x1="{x:.3f}" y1="{m + s}" x2="{x:.3f}" y2="{m + s + 5}" stroke="#555"/>'
        )
        parts.append(
            f'<text x="{x:.3f}" y="{m + s + 18}" text-anchor="middle">{tick:g}</text>'
        )
        parts.append(
            f'<line x1="{m - 5}" y1="{y:.3f}" x2="{m}" y2="{y:.3f}" stroke="#555"/>'
        )
        parts.append(
            f'<text x="{m - 8}" y="{y + 4:.3f}" text-anchor="end">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{m + s / 2:.3f}" y="{size - 6}" text-anchor="middle">gold</text>'
    )
    parts.append(
        f'<text x="14" y="{m + s / 2:.3f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {m + s / 2:.3f})">predicted</text>'
    )
    for g, p in zip(gold, pred):
        parts.append(
            f'<circle cx="{px(g):.3f}" cy="{py(p):.3f}" r="3" '
            f'fill="#1f77b4" fill-opacity="0.55"/>'
        )
    parts.append("</svg>")
    with open(base.with_suffix(".svg"), "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(parts) + "\n")


def _peek_has_score(path: Path) -> bool:
    with open(path, encoding="utf-8", newline="") as fh:
        header = next(csv.reader(fh), None)
    return header is not None and "Score" in [h.strip() for h in header]


def _load_split(cfg: RunConfig, path: Path, split: str) -> PairDataset:
    return load_dataset(
        path,
        has_gold=_peek_has_score(path),
        language=cfg.language,
        split=split,
        separator=cfg.separator,
    )


def _tokens_of(datasets: list[PairDataset]) -> list[list[str]]:
    return [tokenize(text) for ds in datasets for _, text in ds.sentences()]


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name)


def _spearman_or_none(pred: np.ndarray, dataset: PairDataset) -> float | None:
    if not dataset.has_gold:
        return None
    return spearman(pred, np.asarray(dataset.gold)).spearman


def _build_source_embeddings(
    source: EmbeddingSource,
    splits: dict[str, PairDataset],
    fit_corpus: list[PairDataset],
    cfg: RunConfig,
) -> dict[str, EmbeddingSet]:
    """Embeddings per split for one source; external sets are shared."""
    if source.kind == "external":
        merged = merge_embedding_sets(
            [load_external_embeddings(p, source.label) for p in source.paths]
        )
        for ds in splits.values():
            merged.require_coverage(ds)
        return {split: merged for split in splits}
    vocab = fit_vocab(_tokens_of(fit_corpus), min_df=cfg.min_df)
    if source.kind == "tfidf":
        return {split: tfidf_embed(ds, vocab) for split, ds in splits.items()}
    model = fit_ppmi(_tokens_of(fit_corpus), vocab, window=cfg.ppmi_window)
    return {split: ppmi_embed(ds, model) for split, ds in splits.items()}


def _fit_elasticnet_with_grid(
    X: np.ndarray,
    y: np.ndarray,
    dev_X: np.ndarray,
    dev: PairDataset,
    cfg: RunConfig,
    rng: random.Random,
):
    """Fit ElasticNet, optionally selecting alpha on dev Spearman.

    The grid applies only when configured and dev gold exists; exact ties
    are broken by the run's seeded RNG.
    """
    if not cfg.grid_alphas or not dev.has_gold:
        model = fit_elasticnet(
            X, y, alpha=cfg.alpha, l1_ratio=cfg.l1_ratio, tol=cfg.tol, max_iter=cfg.max_iter
        )
        return model, cfg.alpha
    scored = []
    for candidate in cfg.grid_alphas:
        model = fit_elasticnet(
            X, y, alpha=candidate, l1_ratio=cfg.l1_ratio, tol=cfg.tol, max_iter=cfg.max_iter
        )
        dev_pred = clip_unit(predict(model, dev_X))
        sc = _spearman_or_none(dev_pred, dev)
        scored.append((candidate, model, -np.inf if sc is None else sc))
    best = max(score for _, _, score in scored)
    top = [(candidate, model) for candidate, model, score in scored if score == best]
    candidate, model = top[rng.randrange(len(top))] if len(top) > 1 else top[0]
    return model, candidate


def _finalize(
    cfg: RunConfig,
    report: RunReport,
    members: list[MemberReport],
    dev_preds: dict[str, np.ndarray],
    test_preds: dict[str, np.ndarray],
    datasets: dict[str, PairDataset],
) -> RunReport:
    """Weight surviving members, combine, evaluate, and write all outputs."""
    survivors = [m for m in members if not m.failed]
    if not survivors:
        raise SemrelError("every ensemble member failed; nothing to combine")
    names = [m.name for m in survivors]
    dev_scores = [m.dev_spearman for m in survivors]
    if cfg.resolved_ensemble_rule == "dev_weighted":
        spec = dev_weighted_spec(names, dev_scores)
    else:
        spec = uniform_spec(names, dev_scores)
    for member, weight in zip(survivors, spec.weights):
        member.weight = weight

    dev, test = datasets["dev"], datasets["test"]
    ens_dev = combine(spec, [dev_preds[n] for n in names])
    ens_test = combine(spec, [test_preds[n] for n in names])
    report.ensemble_rule = spec.rule
    report.ensemble_dev_spearman = _spearman_or_none(ens_dev, dev)
    report.ensemble_test_spearman = _spearman_or_none(ens_test, test)
    report.members = members

    out = cfg.out_dir
    out.mkdir(parents=True, exist_ok=True)
    members_dir = out / "members"
    members_dir.mkdir(exist_ok=True)
    write_predictions(dev, ens_dev, out / "ensemble_dev.csv")
    write_predictions(test, ens_test, out / "ensemble_test.csv")
    for name in names:
        write_predictions(dev, dev_preds[name], members_dir / f"{_safe_name(name)}_dev.csv")
        write_predictions(test, test_preds[name], members_dir / f"{_safe_name(name)}_test.csv")
    if dev.has_gold:
        emit_scatter(np.asarray(dev.gold), ens_dev, out / "scatter_dev")
    if test.has_gold:
        emit_scatter(np.asarray(test.gold), ens_test, out / "scatter_test")
    with open(out / "report.json", "w", encoding="utf-8", newline="") as fh:
        fh.write(report_json(report))
    return report


def _run_supervised(cfg: RunConfig, train: PairDataset, merge_sources: list[str]) -> RunReport:
    """Shared machinery of tracks A and C: fit both regressors per source."""
    started = time.perf_counter()
    dev = _load_split(cfg, cfg.dev, "dev")
    test = _load_split(cfg, cfg.test, "test")
    if not train.has_gold:
        raise ConfigError("supervised training requires gold scores in the train set")
    datasets = {"train": train, "dev": dev, "test": test}
    y = np.asarray(train.gold)
    rng = random.Random(cfg.seed)
    mode = cfg.resolved_feature_mode

    members: list[MemberReport] = []
    dev_preds: dict[str, np.ndarray] = {}
    test_preds: dict[str, np.ndarray] = {}
    for source in cfg.sources:
        member_names = {
            "elasticnet": f"{source.label}+elasticnet",
            "ols": f"{source.label}+ols",
        }
        try:
            embeddings = _build_source_embeddings(source, datasets, [train], cfg)
            feats = {
                split: build_pair_features(ds, embeddings[split], mode)
                for split, ds in datasets.items()
            }
        except Exception as exc:  # degrade to weight 0, keep the run alive
            for regressor, name in member_names.items():
                members.append(
                    MemberReport(
                        name=name,
                        source=source.label,
                        regressor=regressor,
                        failed=True,
                        error=str(exc),
                    )
                )
            continue
        for regressor, name in member_names.items():
            member = MemberReport(name=name, source=source.label, regressor=regressor)
            try:
                if regressor == "elasticnet":
                    model, used_alpha = _fit_elasticnet_with_grid(
                        feats["train"].matrix, y, feats["dev"].matrix, dev, cfg, rng
                    )
                    member.alpha = used_alpha
                else:
                    model = fit_ols(feats["train"].matrix, y)
                dev_pred = clip_unit(predict(model, feats["dev"].matrix))
                test_pred = clip_unit(predict(model, feats["test"].matrix))
            except Exception as exc:
                member.failed = True
                member.error = str(exc)
                members.append(member)
                continue
            member.dev_spearman = _spearman_or_none(dev_pred, dev)
            member.test_spearman = _spearman_or_none(test_pred, test)
            dev_preds[name] = dev_pred
            test_preds[name] = test_pred
            members.append(member)

    report = RunReport(
        track=cfg.track,
        language=cfg.language,
        sizes={"train": len(train), "dev": len(dev), "test": len(test)},
        members=[],
        ensemble_rule=cfg.resolved_ensemble_rule,
        ensemble_dev_spearman=None,
        ensemble_test_spearman=None,
        config=cfg.echo(),
        merge_sources=merge_sources,
    )
    report = _finalize(cfg, report, members, dev_preds, test_preds, datasets)
    report.timing_seconds = time.perf_counter() - started
    return report


def run_track_a(cfg: RunConfig) -> RunReport:
    """Supervised protocol: 2 regressors x K sources, dev-weighted ensemble."""
    cfg.validate()
    if cfg.track != "a":
        raise ConfigError(f"run_track_a called with track {cfg.track!r}")
    train = load_dataset(
        cfg.train, has_gold=True, language=cfg.language, split="train",
        separator=cfg.separator,
    )
    return _run_supervised(cfg, train, merge_sources=[])


def run_track_b(cfg: RunConfig) -> RunReport:
    """Unsupervised protocol: per-source cosine scores, uniform ensemble.

    Members are fit-free by construction; gold scores are only ever read
    by the evaluation step.
    """
    cfg.validate()
    if cfg.track != "b":
        raise ConfigError(f"run_track_b called with track {cfg.track!r}")
    started = time.perf_counter()
    dev = _load_split(cfg, cfg.dev, "dev")
    test = _load_split(cfg, cfg.test, "test")
    datasets = {"dev": dev, "test": test}
    mode = cfg.resolved_feature_mode

    members: list[MemberReport] = []
    dev_preds: dict[str, np.ndarray] = {}
    test_preds: dict[str, np.ndarray] = {}
    for source in cfg.sources:
        member = MemberReport(name=source.label, source=source.label, regressor=None)
        try:
            embeddings = _build_source_embeddings(source, datasets, [dev, test], cfg)
            preds = {}
            for split, ds in datasets.items():
                feats = build_pair_features(ds, embeddings[split], mode)
                cos = feats.matrix[:, feats.cosine_col]
                preds[split] = clip_unit((cos + 1.0) / 2.0)
        except Exception as exc:
            member.failed = True
            member.error = str(exc)
            members.append(member)
            continue
        member.dev_spearman = _spearman_or_none(preds["dev"], dev)
        member.test_spearman = _spearman_or_none(preds["test"], test)
        dev_preds[member.name] = preds["dev"]
        test_preds[member.name] = preds["test"]
        members.append(member)

    report = RunReport(
        track="b",
        language=cfg.language,
        sizes={"dev": len(dev), "test": len(test)},
        members=[],
        ensemble_rule=cfg.resolved_ensemble_rule,
        ensemble_dev_spearman=None,
        ensemble_test_spearman=None,
        config=cfg.echo(),
    )
    report = _finalize(cfg, report, members, dev_preds, test_preds, datasets)
    report.timing_seconds = time.perf_counter() - started
    return report


def run_track_c(cfg: RunConfig) -> RunReport:
    """Cross-lingual protocol: merged foreign train sets, uniform ensemble."""
    cfg.validate()
    if cfg.track != "c":
        raise ConfigError(f"run_track_c called with track {cfg.track!r}")
    sources = [
        load_dataset(path, has_gold=True, language=lang, split="train",
                     separator=cfg.separator)
        for lang, path in cfg.merge_train
    ]
    train = merge_train_sets(sources, cfg.language)
    prefix = cfg.language + ":"
    for pair in train.pairs:
        if pair.pair_id.startswith(prefix):
            raise IntegrityError(
                f"merged train set contains target-language pair {pair.pair_id!r}"
            )
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    corpus_mod.write_dataset(train, cfg.out_dir / "merged_train.csv",
                             separator=cfg.separator)
    return _run_supervised(cfg, train, merge_sources=[ds.language for ds in sources])


def run(cfg: RunConfig) -> RunReport:
    """Dispatch to the track protocol selected by ``cfg.track``."""
    cfg.validate()
    runner = {"a": run_track_a, "b": run_track_b, "c": run_track_c}[cfg.track]
    return runner(cfg)
