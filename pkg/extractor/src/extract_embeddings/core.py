"""Batched transformer encoding of sentence pairs into an embedding TSV.

Output format: a ``#dim D`` header line, then one ``key<TAB>v1<TAB>...<TAB>vD``
row per sentence, keyed ``<pair_id>#a`` and ``<pair_id>#b`` in dataset order.
Values are written with ``repr(float)`` so loading them back is bit-exact.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import torch

from .dataset import read_pairs
from .errors import ExtractionError

POOLING_MODES = ("mean", "cls")

# Torch spells its OOM exception differently across releases; RuntimeError
# message sniffing below covers the rest.
_OOM_TYPES = tuple(
    t
    for t in (
        getattr(torch, "OutOfMemoryError", None),
        getattr(torch.cuda, "OutOfMemoryError", None),
    )
    if isinstance(t, type)
)


@dataclass
class ExtractJob:
    data: str | Path
    model: str
    out: str | Path
    pooling: str = "mean"
    batch_size: int = 16
    device: str = "cpu"
    max_length: int = 256

    def validate(self) -> None:
        if self.pooling not in POOLING_MODES:
            raise ExtractionError(
                f"unknown pooling {self.pooling!r}, expected one of {', '.join(POOLING_MODES)}"
            )
        if self.batch_size < 1:
            raise ExtractionError(f"batch size must be >= 1, got {self.batch_size}")
        if self.max_length < 1:
            raise ExtractionError(f"max length must be >= 1, got {self.max_length}")


@dataclass
class ExtractResult:
    rows: int
    dim: int
    keys: list[str] = field(default_factory=list)


def _load_encoder(model_id: str, device: str):
    # Imported here so `--help` and dataset errors never pay model-stack startup.
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except Exception as exc:
        raise ExtractionError(f"cannot load model {model_id!r}: {exc}") from exc
    try:
        model = model.to(device)
    except (RuntimeError, ValueError) as exc:
        raise ExtractionError(f"cannot move model to device {device!r}: {exc}") from exc
    model.eval()
    return tokenizer, model


def _pool(hidden: torch.Tensor, mask: torch.Tensor, pooling: str) -> torch.Tensor:
    """Collapse per-token states (B, T, D) into sentence vectors (B, D)."""
    if pooling == "cls":
        return hidden[:, 0]
    mask = mask.unsqueeze(-1).to(hidden.dtype)
    summed = (hidden * mask).sum(dim=1)
    counts = mask.sum(dim=1).clamp(min=1.0)
    return summed / counts


def _encode_batch(tokenizer, model, sentences: list[str], job: ExtractJob) -> torch.Tensor:
    encoded = tokenizer(
        sentences,
        padding=True,
        truncation=True,
        max_length=job.max_length,
        return_tensors="pt",
    )
    encoded = {k: v.to(job.device) for k, v in encoded.items()}
    with torch.no_grad():
        output = model(**encoded)
    hidden = output.last_hidden_state
    return _pool(hidden, encoded["attention_mask"], job.pooling).cpu()


def extract(job: ExtractJob) -> ExtractResult:
    """Encode every sentence of the dataset and atomically write the TSV."""
    job.validate()
    pairs = read_pairs(job.data)

    torch.manual_seed(0)
    torch.use_deterministic_algorithms(True, warn_only=True)
    tokenizer, model = _load_encoder(job.model, job.device)

    keys: list[str] = []
    sentences: list[str] = []
    for pair_id, sent_a, sent_b in pairs:
        keys.append(f"{pair_id}#a")
        sentences.append(sent_a)
        keys.append(f"{pair_id}#b")
        sentences.append(sent_b)

    vectors: list[torch.Tensor] = []
    for start in range(0, len(sentences), job.batch_size):
        batch = sentences[start : start + job.batch_size]
        try:
            vectors.append(_encode_batch(tokenizer, model, batch, job))
        except _OOM_TYPES as exc:
            raise ExtractionError(
                f"out of memory encoding batch of {len(batch)}: {exc}; "
                f"retry with a smaller --batch-size"
            ) from exc
        except RuntimeError as exc:
            if "out of memory" in str(exc).lower():
                raise ExtractionError(
                    f"out of memory encoding batch of {len(batch)}: {exc}; "
                    f"retry with a smaller --batch-size"
                ) from exc
            raise
    stacked = torch.cat(vectors, dim=0).to(torch.float32)
    if stacked.shape[0] != len(keys):  # encoder contract, not an input problem
        raise ExtractionError(
            f"encoder returned {stacked.shape[0]} vectors for {len(keys)} sentences"
        )
    dim = stacked.shape[1]

    _write_tsv(Path(job.out), keys, stacked)
    return ExtractResult(rows=len(keys), dim=dim, keys=keys)


def _write_tsv(out: Path, keys: list[str], vectors: torch.Tensor) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    # Temp file beside the target so os.replace stays atomic on one filesystem.
    fd, tmp_name = tempfile.mkstemp(prefix=out.name + ".", dir=out.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(f"#dim {vectors.shape[1]}\n")
            for key, row in zip(keys, vectors):
                fh.write(key)
                for value in row.tolist():
                    fh.write("\t" + repr(float(value)))
                fh.write("\n")
        os.replace(tmp_name, out)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
