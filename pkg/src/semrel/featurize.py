"""Sentence embeddings by three routes: TF-IDF, PPMI, external files.

All routes produce an :class:`EmbeddingSet` keyed by ``<pair_id>#a`` /
``<pair_id>#b``. TF-IDF and PPMI vectors are L2-normalized; sentences
whose tokens are all out of vocabulary get a zero vector, and cosine
against a zero vector is defined as 0 downstream.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import PairDataset
from .errors import (
    CoverageError,
    EmptyVocabularyError,
    FormatError,
    IntegrityError,
    ValidationError,
)
from .tokenizer import Vocabulary, tokenize


@dataclass
class EmbeddingSet:
    """Map from sentence key to a fixed-dimension dense vector.

    ``provenance`` is one of ``tfidf``, ``ppmi``, or ``external:<name>``.
    Every stored vector has exactly ``dim`` finite entries.
    """

    provenance: str
    dim: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, key: str) -> np.ndarray:
        try:
            return self.vectors[key]
        except KeyError:
            raise CoverageError(
                f"embedding set {self.provenance!r} has no vector for key {key!r}"
            ) from None

    def require_coverage(self, dataset: PairDataset) -> None:
        """Check that both sentences of every pair have a vector."""
        for pair in dataset.pairs:
            for key in (pair.pair_id + "#a", pair.pair_id + "#b"):
                if key not in self.vectors:
                    raise CoverageError(
                        f"embedding set {self.provenance!r} does not cover pair "
                        f"{pair.pair_id!r} (missing key {key!r})"
                    )


def merge_embedding_sets(sets: list[EmbeddingSet]) -> EmbeddingSet:
    """Merge sets with identical provenance and dim; duplicate keys are an error."""
    if not sets:
        raise ValueError("no embedding sets to merge")
    first = sets[0]
    if len(sets) == 1:
        return first
    vectors: dict[str, np.ndarray] = {}
    for part in sets:
        if part.provenance != first.provenance:
            raise IntegrityError(
                f"cannot merge provenance {part.provenance!r} into {first.provenance!r}"
            )
        if part.dim != first.dim:
            raise FormatError(
                f"dim mismatch while merging {part.provenance!r}: "
                f"{part.dim} != {first.dim}"
            )
        for key, vec in part.vectors.items():
            if key in vectors:
                raise IntegrityError(f"duplicate key {key!r} while merging embedding sets")
            vectors[key] = vec
    return EmbeddingSet(provenance=first.provenance, dim=first.dim, vectors=vectors)


def _l2_normalize(vec: np.ndarray) -> np.ndarray:
    norm = math.sqrt(float(vec @ vec))
    if norm > 0.0:
        return vec / norm
    return vec


def tfidf_embed(dataset: PairDataset, vocab: Vocabulary) -> EmbeddingSet:
    """Embed every sentence of ``dataset`` as an L2-normalized tf-idf vector.

    Weight of term t in a sentence: tf(t) * idf(t), with tf the raw count
    in the sentence and idf = ln((1 + n_docs) / (1 + doc_freq)) + 1 from
    the fitting corpus behind ``vocab``. Out-of-vocabulary tokens are
    ignored; a sentence with no in-vocabulary token maps to the zero vector.
    """
    if len(vocab) == 0:
        raise EmptyVocabularyError("tfidf_embed needs a non-empty vocabulary")
    idf = np.array(
        [math.log((1 + vocab.n_docs) / (1 + vocab.doc_freq[t])) + 1.0 for t in vocab.terms]
    )
    vectors: dict[str, np.ndarray] = {}
    for key, text in dataset.sentences():
        vec = np.zeros(len(vocab))
        counts = Counter(tokenize(text))
        for token, tf in counts.items():
            col = vocab.index.get(token)
            if col is not None:
                vec[col] = tf * idf[col]
        vectors[key] = _l2_normalize(vec)
    return EmbeddingSet(provenance="tfidf", dim=len(vocab), vectors=vectors)


@dataclass
class PpmiModel:
    """Sparse positive PMI rows over a vocabulary.

    ``ppmi_rows[w][c]`` holds PPMI(w, c) for the co-occurrence pair; zero
    and clamped entries are omitted, so all stored values are > 0. The
    underlying co-occurrence relation is symmetric.
    """

    vocab: Vocabulary
    ppmi_rows: dict[str, dict[str, float]]
    window: int


def fit_ppmi(corpus: list[list[str]], vocab: Vocabulary, window: int = 2) -> PpmiModel:
    """Fit PPMI rows from co-occurrence counts within sentences.

    Counts use a symmetric window of ``window`` tokens on each side,
    never crossing sentence boundaries; window distance is measured on
    the tokenized sentence, and only in-vocabulary tokens are counted.
    With total the grand sum of co-occurrence counts and count(x) the row
    sum for x:

        PPMI(w, c) = max(0, ln(cooc(w, c) * total / (count(w) * count(c))))
    """
    if not corpus:
        raise ValueError("cannot fit PPMI on an empty corpus")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    cooc: dict[str, Counter[str]] = defaultdict(Counter)
    for tokens in corpus:
        n = len(tokens)
        for i, w in enumerate(tokens):
            if w not in vocab:
                continue
            for j in range(max(0, i - window), min(n, i + window + 1)):
                if j == i:
                    continue
                c = tokens[j]
                if c in vocab:
                    cooc[w][c] += 1
    total = sum(sum(row.values()) for row in cooc.values())
    counts = {w: sum(row.values()) for w, row in cooc.items()}
    ppmi_rows: dict[str, dict[str, float]] = {}
    for w in sorted(cooc):
        row: dict[str, float] = {}
        for c in sorted(cooc[w]):
            value = math.log(cooc[w][c] * total / (counts[w] * counts[c]))
            if value > 0.0:
                row[c] = value
        if row:
            ppmi_rows[w] = row
    return PpmiModel(vocab=vocab, ppmi_rows=ppmi_rows, window=window)


def ppmi_embed(dataset: PairDataset, model: PpmiModel) -> EmbeddingSet:
    """Embed sentences as the L2-normalized mean of their tokens' PPMI rows.

    The mean runs over in-vocabulary token instances, so repeating a token
    does not change a one-token sentence. All-OOV sentences map to the
    zero vector.
    """
    vocab = model.vocab
    dim = len(vocab)
    vectors: dict[str, np.ndarray] = {}
    for key, text in dataset.sentences():
        vec = np.zeros(dim)
        in_vocab = 0
        for token in tokenize(text):
            if token not in vocab:
                continue
            in_vocab += 1
            row = model.ppmi_rows.get(token)
            if row:
                for context, value in row.items():
                    vec[vocab.index[context]] += value
        if in_vocab > 0:
            vec /= in_vocab
        vectors[key] = _l2_normalize(vec)
    return EmbeddingSet(provenance="ppmi", dim=dim, vectors=vectors)


def load_external_embeddings(path: str | Path, name: str) -> EmbeddingSet:
    """Load an embedding TSV produced by an external encoder.

    Format: first line ``#dim D``, then one ``key<TAB>v1<TAB>...<TAB>vD``
    row per sentence. Every row must carry exactly D finite values and a
    key not seen before.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith("#dim "):
            raise FormatError(f"{path}: expected '#dim D' header, got {header!r}")
        try:
            dim = int(header.split()[1])
        except (IndexError, ValueError):
            raise FormatError(f"{path}: malformed '#dim' header") from None
        if dim < 1:
            raise FormatError(f"{path}: dim must be >= 1, got {dim}")
        vectors: dict[str, np.ndarray] = {}
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            key = fields[0]
            if len(fields) - 1 != dim:
                raise FormatError(
                    f"{path}:{line_no}: expected {dim} values, got {len(fields) - 1}"
                )
            if key in vectors:
                raise IntegrityError(f"{path}:{line_no}: duplicate key {key!r}")
            try:
                vec = np.array([float(v) for v in fields[1:]])
            except ValueError:
                raise FormatError(f"{path}:{line_no}: unparsable value") from None
            if not np.all(np.isfinite(vec)):
                raise ValidationError(f"{path}:{line_no}: non-finite value for key {key!r}")
            vectors[key] = vec
    return EmbeddingSet(provenance=f"external:{name}", dim=dim, vectors=vectors)


def save_embeddings(embeddings: EmbeddingSet, path: str | Path) -> None:
    """Write an embedding set in the TSV format read back by the loader.

    Values are rendered with ``repr(float)``, so a write/load round trip
    is bit-exact.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"#dim {embeddings.dim}\n")
        for key, vec in embeddings.vectors.items():
            fh.write(key)
            for value in vec:
                fh.write("\t" + repr(float(value)))
            fh.write("\n")
