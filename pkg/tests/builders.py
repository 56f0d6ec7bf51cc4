"""Shared synthetic-data builders for the test suite.

The builders make small sentence-pair corpora whose gold scores are a
noisy monotone function of lexical overlap, plus deterministic external
embedding files keyed by a token hash (crc32, so independent from
Python's randomized string hash).
"""

from __future__ import annotations

import csv
import random
import zlib
from pathlib import Path

import numpy as np

from semrel.corpus import PairDataset, SentencePair

WORDS = [
    "sun", "moon", "river", "stone", "bird", "cloud", "tree", "wind",
    "fire", "rain", "light", "dark", "road", "house", "sea", "hill",
    "song", "leaf", "snow", "star", "boat", "field", "night", "storm",
]


def make_pair_rows(rng: random.Random, n: int, prefix: str, words=WORDS,
                   noise: float = 0.05):
    """Rows (pair_id, sentence_a, sentence_b, score) with overlap-driven gold."""
    rows = []
    for i in range(n):
        a_tokens = [rng.choice(words) for _ in range(rng.randint(3, 8))]
        if rng.random() < 0.5:
            keep = rng.randint(1, len(a_tokens))
            b_tokens = a_tokens[:keep] + [rng.choice(words)
                                          for _ in range(rng.randint(0, 3))]
        else:
            b_tokens = [rng.choice(words) for _ in range(rng.randint(3, 8))]
        a = " ".join(a_tokens)
        b = " ".join(b_tokens)
        union = set(a_tokens) | set(b_tokens)
        overlap = len(set(a_tokens) & set(b_tokens)) / len(union)
        score = 0.15 + 0.7 * overlap + rng.gauss(0.0, noise)
        rows.append((f"{prefix}{i:04d}", a, b, min(1.0, max(0.0, score))))
    return rows


def write_dataset_csv(rows, path: Path, with_score: bool = True) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["PairID", "Text", "Score"] if with_score
                        else ["PairID", "Text"])
        for pair_id, a, b, score in rows:
            row = [pair_id, a + "\n" + b]
            if with_score:
                row.append(f"{score:.9g}")
            writer.writerow(row)
    return path


def rows_as_dataset(rows, language="eng", split="train",
                    with_score=True) -> PairDataset:
    pairs = [SentencePair(pid, a, b) for pid, a, b, _ in rows]
    gold = [score for _, _, _, score in rows] if with_score else None
    return PairDataset(language=language, split=split, pairs=pairs, gold=gold)


def token_vector(token: str, dim: int, salt: int = 0) -> np.ndarray:
    """A reproducible pseudo-random vector for a token (crc32-seeded)."""
    seed = zlib.crc32(f"{salt}:{token}".encode("utf-8"))
    return np.random.default_rng(seed).standard_normal(dim)


def sentence_vector(text: str, dim: int, salt: int = 0) -> np.ndarray:
    tokens = text.split()
    if not tokens:
        return np.zeros(dim)
    return np.mean([token_vector(t, dim, salt) for t in tokens], axis=0)


def write_hash_embeddings(rows_groups, path: Path, dim: int = 8,
                          salt: int = 0) -> Path:
    """External-embedding TSV covering every pair in every group of rows."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"#dim {dim}\n")
        for rows in rows_groups:
            for pair_id, a, b, _ in rows:
                for suffix, text in (("#a", a), ("#b", b)):
                    vec = sentence_vector(text, dim, salt)
                    values = "\t".join(repr(float(v)) for v in vec)
                    fh.write(f"{pair_id}{suffix}\t{values}\n")
    return path
