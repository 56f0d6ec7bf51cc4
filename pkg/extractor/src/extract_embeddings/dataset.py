"""Reader for the sentence-pair dataset CSV consumed and produced by the toolkit.

Only the wire format is shared with the rest of the toolchain; this module
deliberately avoids importing it so the extractor stays installable on its own.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .errors import ExtractionError


def read_pairs(path: str | Path) -> list[tuple[str, str, str]]:
    """Load ``(pair_id, sentence_a, sentence_b)`` rows from a dataset CSV.

    The file carries a ``PairID,Text[,Score]`` header; the ``Text`` field holds
    both sentences joined by a newline, or by a tab when no newline is present.
    Any ``Score`` column is ignored: embeddings do not depend on gold labels.
    """
    path = Path(path)
    try:
        handle = path.open("r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ExtractionError(f"cannot read dataset {path}: {exc}") from exc
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ExtractionError(f"{path}: empty file, expected a PairID,Text header") from None
        columns = {name: idx for idx, name in enumerate(header)}
        for required in ("PairID", "Text"):
            if required not in columns:
                raise ExtractionError(f"{path}: missing required column {required!r}")
        id_col, text_col = columns["PairID"], columns["Text"]

        rows: list[tuple[str, str, str]] = []
        seen: set[str] = set()
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) <= max(id_col, text_col):
                raise ExtractionError(f"{path}: row {lineno} has too few fields")
            pair_id, text = record[id_col].strip(), record[text_col]
            if not pair_id:
                raise ExtractionError(f"{path}: row {lineno} has an empty PairID")
            if pair_id in seen:
                raise ExtractionError(f"{path}: duplicate PairID {pair_id!r} at row {lineno}")
            seen.add(pair_id)
            separator = "\n" if "\n" in text else "\t"
            parts = text.split(separator)
            if len(parts) != 2:
                raise ExtractionError(
                    f"{path}: row {lineno} ({pair_id}): expected exactly two sentences "
                    f"in the Text field, got {len(parts)}"
                )
            rows.append((pair_id, parts[0], parts[1]))
    if not rows:
        raise ExtractionError(f"{path}: no data rows")
    return rows
