"""Deterministic tokenization and vocabulary fitting.

The same tokenizer is applied to every language: Unicode lowercasing,
whitespace splitting, and stripping of leading/trailing punctuation
(Unicode category P). No stemming, no stopword removal.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, EmptyVocabularyError, FormatError


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, strip edge punctuation, drop empties."""
    tokens = []
    for raw in text.lower().split():
        start, end = 0, len(raw)
        while start < end and _is_punct(raw[start]):
            start += 1
        while end > start and _is_punct(raw[end - 1]):
            end -= 1
        if end > start:
            tokens.append(raw[start:end])
    return tokens


@dataclass
class Vocabulary:
    """Lexicographically ordered term list with document frequencies.

    ``index`` maps each term to its column id, a bijection onto
    ``range(len(terms))``. ``doc_freq[t]`` counts the distinct fitting
    documents containing ``t`` and satisfies 1 <= df <= n_docs.
    """

    terms: list[str]
    doc_freq: dict[str, int]
    n_docs: int
    index: dict[str, int] = field(init=False)

    def __post_init__(self) -> None:
        self.index = {term: i for i, term in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


def fit_vocab(corpus: list[list[str]], min_df: int = 1) -> Vocabulary:
    """Build a Vocabulary over a corpus of tokenized documents.

    Terms with document frequency >= ``min_df`` are retained in
    lexicographic order. Document frequency counts distinct documents,
    so repeated tokens within one document count once.
    """
    if not corpus:
        raise ConfigError("cannot fit a vocabulary on an empty corpus")
    if min_df < 1:
        raise ConfigError(f"min_df must be >= 1, got {min_df}")
    df: Counter[str] = Counter()
    for doc in corpus:
        df.update(set(doc))
    terms = sorted(t for t, count in df.items() if count >= min_df)
    if not terms:
        raise EmptyVocabularyError(
            f"no term has document frequency >= {min_df} over {len(corpus)} documents"
        )
    return Vocabulary(
        terms=terms,
        doc_freq={t: df[t] for t in terms},
        n_docs=len(corpus),
    )


def save_vocab(vocab: Vocabulary, path: str | Path) -> None:
    """Write a vocabulary as TSV rows ``term<TAB>doc_freq`` under a ``#n_docs`` header."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"#n_docs {vocab.n_docs}\n")
        for term in vocab.terms:
            fh.write(f"{term}\t{vocab.doc_freq[term]}\n")


def load_vocab(path: str | Path) -> Vocabulary:
    """Read a vocabulary written by :func:`save_vocab`."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline()
        if not header.startswith("#n_docs "):
            raise FormatError(f"{path}: expected '#n_docs N' header")
        try:
            n_docs = int(header.split()[1])
        except (IndexError, ValueError):
            raise FormatError(f"{path}: malformed '#n_docs' header") from None
        terms: list[str] = []
        doc_freq: dict[str, int] = {}
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                term, df_text = line.split("\t")
                df_value = int(df_text)
            except ValueError:
                raise FormatError(f"{path}:{line_no}: expected 'term<TAB>count'") from None
            terms.append(term)
            doc_freq[term] = df_value
    if not terms:
        raise EmptyVocabularyError(f"{path}: vocabulary file holds no terms")
    return Vocabulary(terms=terms, doc_freq=doc_freq, n_docs=n_docs)
