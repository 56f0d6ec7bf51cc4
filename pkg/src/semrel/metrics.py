"""Tie-aware Spearman correlation, the sole evaluation measure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AlignmentError, ValidationError


@dataclass
class CorrelationReport:
    """Spearman correlation with tie bookkeeping.

    ``spearman`` is None when either input is constant, in which case the
    correlation is undefined: downstream ensemble weighting treats this
    marker as weight 0. ``tie_groups`` counts groups of tied values
    (size >= 2) on each side.
    """

    n: int
    spearman: float | None
    tie_groups: tuple[int, int]

    @property
    def defined(self) -> bool:
        return self.spearman is not None


def average_ranks(x) -> np.ndarray:
    """Ranks 1..n with tied values assigned the mean of their positions."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValidationError("cannot rank non-finite values")
    n = len(x)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(n)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[order[j + 1]] == x[order[i]]:
            j += 1
        # positions i+1 .. j+1 share the mean rank
        ranks[order[i : j + 1]] = (i + j + 2) / 2.0
        i = j + 1
    return ranks


def _tie_group_count(x: np.ndarray) -> int:
    _, counts = np.unique(x, return_counts=True)
    return int(np.sum(counts >= 2))


def spearman(x, y) -> CorrelationReport:
    """Pearson correlation of average ranks of x and y.

    Returns an undefined marker (``spearman=None``) when either side is
    constant, rather than a number.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise AlignmentError(f"length mismatch: {x.shape} vs {y.shape}")
    if x.ndim != 1 or len(x) < 2:
        raise ValueError(f"need two 1-d vectors of length >= 2, got shape {x.shape}")
    tie_groups = (_tie_group_count(x), _tie_group_count(y))
    rx = average_ranks(x)
    ry = average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    var_x = float(dx @ dx)
    var_y = float(dy @ dy)
    if var_x == 0.0 or var_y == 0.0:
        return CorrelationReport(n=len(x), spearman=None, tie_groups=tie_groups)
    rho = float(dx @ dy) / math.sqrt(var_x * var_y)
    return CorrelationReport(n=len(x), spearman=rho, tie_groups=tie_groups)
