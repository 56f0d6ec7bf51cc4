"""Combine member predictions by Spearman-weighted or uniform averaging."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlignmentError
from .regress import clip_unit

RULES = ("dev_weighted", "uniform")


@dataclass
class EnsembleSpec:
    """Member labels, their dev Spearman scores, and normalized weights.

    Weights are nonnegative and sum to 1. ``rule`` records how they were
    produced; a dev-weighted request where every score clamps to zero
    falls back to uniform weights and records rule "uniform".
    """

    member_names: list[str]
    dev_scores: list[float | None]
    weights: list[float]
    rule: str

    def __post_init__(self) -> None:
        if not (len(self.member_names) == len(self.dev_scores) == len(self.weights)):
            raise AlignmentError("member names, dev scores, and weights must align")


def dev_weighted_spec(
    member_names: list[str],
    dev_scores: list[float | None],
) -> EnsembleSpec:
    """Weights proportional to each member's dev Spearman clamped at 0.

    Undefined scores (None) count as 0. If every clamped score is 0 the
    spec falls back to uniform weights.
    """
    if not member_names:
        raise ValueError("cannot build an ensemble over zero members")
    if len(dev_scores) != len(member_names):
        raise AlignmentError(
            f"{len(dev_scores)} dev scores for {len(member_names)} members"
        )
    clamped = [max(s, 0.0) if s is not None else 0.0 for s in dev_scores]
    total = sum(clamped)
    if total <= 0.0:
        return uniform_spec(member_names, dev_scores)
    return EnsembleSpec(
        member_names=list(member_names),
        dev_scores=list(dev_scores),
        weights=[c / total for c in clamped],
        rule="dev_weighted",
    )


def uniform_spec(
    member_names: list[str],
    dev_scores: list[float | None] | None = None,
) -> EnsembleSpec:
    """Equal weights over all members; dev scores kept for reporting only."""
    if not member_names:
        raise ValueError("cannot build an ensemble over zero members")
    k = len(member_names)
    if dev_scores is None:
        dev_scores = [None] * k
    elif len(dev_scores) != k:
        raise AlignmentError(f"{len(dev_scores)} dev scores for {k} members")
    return EnsembleSpec(
        member_names=list(member_names),
        dev_scores=list(dev_scores),
        weights=[1.0 / k] * k,
        rule="uniform",
    )


def combine(spec: EnsembleSpec, predictions: list[np.ndarray]) -> np.ndarray:
    """Element-wise weighted mean of member predictions, clipped to [0, 1]."""
    if len(predictions) != len(spec.member_names):
        raise AlignmentError(
            f"{len(predictions)} prediction vectors for {len(spec.member_names)} members"
        )
    arrays = [np.asarray(p, dtype=float) for p in predictions]
    length = len(arrays[0])
    for name, arr in zip(spec.member_names, arrays):
        if arr.ndim != 1 or len(arr) != length:
            raise AlignmentError(
                f"member {name!r} prediction length {arr.shape} != {length}"
            )
    combined = np.zeros(length)
    for weight, arr in zip(spec.weights, arrays):
        combined += weight * arr
    return clip_unit(combined)
