"""Cosine similarity and per-pair regression features."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import PairDataset
from .errors import AlignmentError, ConfigError
from .featurize import EmbeddingSet

FEATURE_MODES = ("cosine_only", "rich")


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """dot(a, b) / (|a| |b|), with 0 for a zero vector on either side."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise AlignmentError(f"cosine dim mismatch: {a.shape} vs {b.shape}")
    norm_a = math.sqrt(float(a @ a))
    norm_b = math.sqrt(float(b @ b))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return float(a @ b) / (norm_a * norm_b)


@dataclass
class PairFeatures:
    """Per-pair feature rows aligned to a dataset's pair order.

    ``matrix`` is n_pairs x n_features; column ``cosine_col`` holds the
    cosine similarity and always lies in [-1, 1].
    """

    provenance: str
    feature_names: list[str]
    matrix: np.ndarray
    cosine_col: int = 0

    @property
    def n_pairs(self) -> int:
        return self.matrix.shape[0]


def build_pair_features(
    dataset: PairDataset,
    embeddings: EmbeddingSet,
    mode: str = "rich",
) -> PairFeatures:
    """Build the regression feature matrix for every pair of ``dataset``.

    ``cosine_only`` yields the single column ``[cos]``. ``rich`` appends
    the element-wise absolute difference and product of the two sentence
    vectors, for 1 + 2*dim features.
    """
    if mode not in FEATURE_MODES:
        raise ConfigError(f"unknown feature mode {mode!r}, expected one of {FEATURE_MODES}")
    dim = embeddings.dim
    if mode == "cosine_only":
        names = ["cos"]
    else:
        names = (
            ["cos"]
            + [f"absdiff_{i}" for i in range(dim)]
            + [f"prod_{i}" for i in range(dim)]
        )
    rows = np.empty((len(dataset.pairs), len(names)))
    for r, pair in enumerate(dataset.pairs):
        a = embeddings.get(pair.pair_id + "#a")
        b = embeddings.get(pair.pair_id + "#b")
        rows[r, 0] = cosine(a, b)
        if mode == "rich":
            rows[r, 1 : 1 + dim] = np.abs(a - b)
            rows[r, 1 + dim :] = a * b
    return PairFeatures(
        provenance=embeddings.provenance,
        feature_names=names,
        matrix=rows,
        cosine_col=0,
    )


def save_pair_features(features: PairFeatures, path: str | Path) -> None:
    """Dump a feature matrix as CSV with feature names in the header."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(features.feature_names) + "\n")
        for row in features.matrix:
            fh.write(",".join(format(v, ".9g") for v in row) + "\n")
