"""Sentence-pair datasets: loading, validation, merging, prediction files.

File contract: UTF-8 CSV with RFC-4180 quoting and a header row. Input
datasets carry ``PairID,Text[,Score]`` where ``Text`` holds the two
sentences of a pair joined by a separator character (a literal newline
inside the quoted field by default, tab as fallback). Prediction files
carry ``PairID,Pred_Score``.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    AlignmentError,
    ConfigError,
    FormatError,
    IntegrityError,
    ValidationError,
)

SPLITS = ("train", "dev", "test")

DEFAULT_SEPARATOR = "\n"
FALLBACK_SEPARATOR = "\t"

_NAME_RE = re.compile(r"^([A-Za-z]{2,4})_(train|dev|test)\b")


@dataclass(frozen=True)
class SentencePair:
    """One sentence pair, keyed by an opaque id unique within its dataset."""

    pair_id: str
    sentence_a: str
    sentence_b: str


@dataclass
class PairDataset:
    """An ordered collection of sentence pairs with optional gold scores.

    Order is preserved from the source file; prediction files must align
    row for row. ``gold``, when present, parallels ``pairs`` with scores
    in [0, 1].
    """

    language: str
    split: str
    pairs: list[SentencePair]
    gold: list[float] | None = None

    def __post_init__(self) -> None:
        if self.split not in SPLITS:
            raise ConfigError(f"unknown split {self.split!r}, expected one of {SPLITS}")
        if self.gold is not None and len(self.gold) != len(self.pairs):
            raise AlignmentError(
                f"gold has {len(self.gold)} scores for {len(self.pairs)} pairs"
            )

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def has_gold(self) -> bool:
        return self.gold is not None

    def sentence_keys(self):
        """Yield the embedding keys ``<pair_id>#a`` / ``<pair_id>#b`` in order."""
        for pair in self.pairs:
            yield pair.pair_id + "#a"
            yield pair.pair_id + "#b"

    def sentences(self):
        """Yield (key, text) for every sentence in dataset order."""
        for pair in self.pairs:
            yield pair.pair_id + "#a", pair.sentence_a
            yield pair.pair_id + "#b", pair.sentence_b


def _infer_from_name(path: Path) -> tuple[str | None, str | None]:
    m = _NAME_RE.match(path.stem)
    if m:
        return m.group(1).lower(), m.group(2)
    return None, None


def _split_text_field(text: str, separator: str, fallback: str | None) -> tuple[str, str] | None:
    if separator in text:
        a, _, b = text.partition(separator)
        return a, b
    if fallback and fallback in text:
        a, _, b = text.partition(fallback)
        return a, b
    return None


def load_dataset(
    path: str | Path,
    has_gold: bool = True,
    *,
    language: str | None = None,
    split: str | None = None,
    separator: str = DEFAULT_SEPARATOR,
    fallback_separator: str | None = FALLBACK_SEPARATOR,
) -> PairDataset:
    """Load a dataset CSV into a :class:`PairDataset`.

    The ``Text`` field of each row is split on the first occurrence of
    ``separator`` (then ``fallback_separator``) into the two sentences.
    ``language`` and ``split`` default to values inferred from a filename
    of the form ``<lang>_<split>*.csv``; otherwise "und" / "train".

    Raises FormatError for a missing column or an unsplittable row,
    ValidationError for a score outside [0, 1], IntegrityError for a
    duplicate pair id.
    """
    path = Path(path)
    inferred_lang, inferred_split = _infer_from_name(path)
    language = language or inferred_lang or "und"
    split = split or inferred_split or "train"

    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty file, expected a header row") from None
        columns = {name.strip(): i for i, name in enumerate(header)}
        for required in ("PairID", "Text"):
            if required not in columns:
                raise FormatError(f"{path}: missing required column {required!r}")
        if has_gold and "Score" not in columns:
            raise FormatError(f"{path}: missing required column 'Score'")
        id_col = columns["PairID"]
        text_col = columns["Text"]
        score_col = columns["Score"] if has_gold else None

        pairs: list[SentencePair] = []
        gold: list[float] | None = [] if has_gold else None
        seen: set[str] = set()
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) <= max(id_col, text_col, score_col or 0):
                raise FormatError(f"{path}:{line_no}: row has too few fields")
            pair_id = row[id_col].strip()
            if not pair_id:
                raise FormatError(f"{path}:{line_no}: empty PairID")
            if pair_id in seen:
                raise IntegrityError(f"{path}:{line_no}: duplicate PairID {pair_id!r}")
            seen.add(pair_id)

            parts = _split_text_field(row[text_col], separator, fallback_separator)
            if parts is None:
                raise FormatError(
                    f"{path}:{line_no}: pair {pair_id!r}: no sentence separator in Text field"
                )
            sentence_a, sentence_b = (p.strip() for p in parts)
            if not sentence_a or not sentence_b:
                raise FormatError(
                    f"{path}:{line_no}: pair {pair_id!r}: empty sentence after trimming"
                )
            pairs.append(SentencePair(pair_id, sentence_a, sentence_b))

            if has_gold:
                raw = row[score_col].strip()
                try:
                    score = float(raw)
                except ValueError:
                    raise FormatError(
                        f"{path}:{line_no}: pair {pair_id!r}: unparsable score {raw!r}"
                    ) from None
                if not 0.0 <= score <= 1.0:
                    raise ValidationError(
                        f"{path}:{line_no}: pair {pair_id!r}: score {score} outside [0, 1]"
                    )
                gold.append(score)

    return PairDataset(language=language, split=split, pairs=pairs, gold=gold)


def write_dataset(
    dataset: PairDataset,
    path: str | Path,
    *,
    separator: str = DEFAULT_SEPARATOR,
) -> None:
    """Write a dataset back to the ``PairID,Text[,Score]`` CSV format."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if dataset.has_gold:
            writer.writerow(["PairID", "Text", "Score"])
            for pair, score in zip(dataset.pairs, dataset.gold):
                text = pair.sentence_a + separator + pair.sentence_b
                writer.writerow([pair.pair_id, text, format(score, ".9g")])
        else:
            writer.writerow(["PairID", "Text"])
            for pair in dataset.pairs:
                text = pair.sentence_a + separator + pair.sentence_b
                writer.writerow([pair.pair_id, text])


def merge_train_sets(sources: list[PairDataset], target_language: str) -> PairDataset:
    """Concatenate train sets from other languages into one train set.

    Pair ids are prefixed ``<lang>:`` to stay unique across sources. The
    result carries ``target_language`` and split ``train``; pairs keep the
    given source order.
    """
    merged_pairs: list[SentencePair] = []
    merged_gold: list[float] = []
    seen: set[str] = set()
    any_gold = any(src.has_gold for src in sources)
    for src in sources:
        if src.split != "train":
            raise ConfigError(
                f"merge source {src.language!r} has split {src.split!r}, expected 'train'"
            )
        if src.language == target_language:
            raise ConfigError(
                f"merge source language {src.language!r} equals target language"
            )
        if any_gold and not src.has_gold:
            raise ConfigError(f"merge source {src.language!r} lacks gold scores")
        for i, pair in enumerate(src.pairs):
            new_id = f"{src.language}:{pair.pair_id}"
            if new_id in seen:
                raise IntegrityError(f"duplicate merged pair id {new_id!r}")
            seen.add(new_id)
            merged_pairs.append(
                SentencePair(new_id, pair.sentence_a, pair.sentence_b)
            )
            if any_gold:
                merged_gold.append(src.gold[i])
    return PairDataset(
        language=target_language,
        split="train",
        pairs=merged_pairs,
        gold=merged_gold if any_gold else None,
    )


def write_predictions(dataset: PairDataset, preds, path: str | Path) -> None:
    """Write predictions aligned to ``dataset`` as a ``PairID,Pred_Score`` CSV.

    Scores are rendered with 9 significant digits, which round-trips
    values in [0, 1] to within 1e-9.
    """
    preds = list(preds)
    if len(preds) != len(dataset.pairs):
        raise AlignmentError(
            f"{len(preds)} predictions for {len(dataset.pairs)} pairs"
        )
    for value in preds:
        if not 0.0 <= value <= 1.0:
            raise ValidationError(f"prediction {value} outside [0, 1]")
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["PairID", "Pred_Score"])
        for pair, value in zip(dataset.pairs, preds):
            writer.writerow([pair.pair_id, format(float(value), ".9g")])


def load_predictions(path: str | Path) -> tuple[list[str], list[float]]:
    """Read a ``PairID,Pred_Score`` CSV back into (ids, scores)."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty file, expected a header row") from None
        columns = {name.strip(): i for i, name in enumerate(header)}
        for required in ("PairID", "Pred_Score"):
            if required not in columns:
                raise FormatError(f"{path}: missing required column {required!r}")
        ids: list[str] = []
        scores: list[float] = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                score = float(row[columns["Pred_Score"]])
            except ValueError:
                raise FormatError(f"{path}:{line_no}: unparsable score") from None
            ids.append(row[columns["PairID"]])
            scores.append(score)
    return ids, scores
