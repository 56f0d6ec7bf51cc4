"""Linear models: ordinary least squares and ElasticNet coordinate descent.

ElasticNet minimizes

    (1/2n) ||y - b0 - X b||^2 + alpha * (l1_ratio * ||b||_1
                                         + (1 - l1_ratio) / 2 * ||b||_2^2)

by cyclic coordinate descent with soft-thresholding on standardized
features (zero mean, unit population variance; y centered). Coefficients
are reported on the original feature scale, so prediction is a plain
affine map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AlignmentError, FormatError, ValidationError


@dataclass
class FitModel:
    """A fitted linear model with its standardization parameters.

    ``coefficients`` are on the original feature scale;
    ``feature_means`` / ``feature_scales`` record the standardization used
    during fitting (scales are 1 for OLS and for constant columns).
    """

    kind: str
    intercept: float
    coefficients: np.ndarray
    feature_means: np.ndarray
    feature_scales: np.ndarray
    alpha: float = 0.0
    l1_ratio: float = 0.0
    n_iters_used: int = 0
    converged: bool = True
    objective_path: list[float] = field(default_factory=list)

    @property
    def n_features(self) -> int:
        return len(self.coefficients)


def _check_design(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-dimensional, got shape {X.shape}")
    if y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise AlignmentError(f"X has {X.shape[0]} rows but y has {y.shape} entries")
    if X.shape[0] < 2:
        raise ValueError(f"need at least 2 rows to fit, got {X.shape[0]}")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise ValidationError("X and y must be finite")
    return X, y


def fit_ols(X: np.ndarray, y: np.ndarray) -> FitModel:
    """Least-squares fit with intercept via SVD-based lstsq.

    Centering X and y before solving makes the intercept exact, and the
    minimum-norm solution handles rank-deficient designs (constant
    columns center to zero and get coefficient 0).
    """
    X, y = _check_design(X, y)
    if np.any(y < 0.0) or np.any(y > 1.0):
        raise ValidationError("target scores must lie in [0, 1]")
    means = X.mean(axis=0)
    y_mean = float(y.mean())
    coef, *_ = np.linalg.lstsq(X - means, y - y_mean, rcond=None)
    intercept = y_mean - float(means @ coef)
    return FitModel(
        kind="ols",
        intercept=intercept,
        coefficients=coef,
        feature_means=means,
        feature_scales=np.ones(X.shape[1]),
    )


def soft_threshold(z: float, t: float) -> float:
    """Shrinkage operator sign(z) * max(|z| - t, 0)."""
    if t < 0.0:
        raise ValueError(f"threshold must be >= 0, got {t}")
    magnitude = abs(z) - t
    if magnitude <= 0.0:
        return 0.0
    return math.copysign(magnitude, z)


def fit_elasticnet(
    X: np.ndarray,
    y: np.ndarray,
    alpha: float = 0.1,
    l1_ratio: float = 0.5,
    tol: float = 1e-6,
    max_iter: int = 1000,
) -> FitModel:
    """ElasticNet fit by cyclic coordinate descent.

    Convergence is declared when the largest standardized-coefficient
    change over a full sweep drops below ``tol``; otherwise the loop stops
    at ``max_iter`` with ``converged=False``. ``objective_path`` records
    the penalized objective after each sweep. Constant feature columns
    keep scale 1 and coefficient 0.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    if not 0.0 <= l1_ratio <= 1.0:
        raise ValueError(f"l1_ratio must lie in [0, 1], got {l1_ratio}")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    X, y = _check_design(X, y)
    n, p = X.shape

    means = X.mean(axis=0)
    scales = X.std(axis=0)
    active = scales > 0.0
    scales = np.where(active, scales, 1.0)
    Xs = (X - means) / scales
    y_mean = float(y.mean())
    yc = y - y_mean

    col_sq = (Xs * Xs).sum(axis=0) / n  # 1.0 for non-constant columns
    l1_pen = alpha * l1_ratio
    l2_pen = alpha * (1.0 - l1_ratio)
    update_cols = [j for j in range(p) if active[j]]

    b = np.zeros(p)
    residual = yc.copy()
    objective_path: list[float] = []
    converged = False
    sweeps = 0
    for sweeps in range(1, max_iter + 1):
        max_change = 0.0
        for j in update_cols:
            old = b[j]
            rho = float(Xs[:, j] @ residual) / n + col_sq[j] * old
            new = soft_threshold(rho, l1_pen) / (col_sq[j] + l2_pen)
            if new != old:
                residual += Xs[:, j] * (old - new)
                b[j] = new
                max_change = max(max_change, abs(new - old))
        objective_path.append(
            0.5 * float(residual @ residual) / n
            + l1_pen * float(np.abs(b).sum())
            + 0.5 * l2_pen * float(b @ b)
        )
        if max_change < tol:
            converged = True
            break

    coef = b / scales
    coef[~active] = 0.0
    intercept = y_mean - float(means @ coef)
    return FitModel(
        kind="elasticnet",
        intercept=intercept,
        coefficients=coef,
        feature_means=means,
        feature_scales=scales,
        alpha=alpha,
        l1_ratio=l1_ratio,
        n_iters_used=sweeps,
        converged=converged,
        objective_path=objective_path,
    )


def predict(model: FitModel, X: np.ndarray) -> np.ndarray:
    """Apply ``model`` to rows of X on the original feature scale. No clipping."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise AlignmentError(
            f"X has shape {X.shape}, model expects {model.n_features} features"
        )
    return model.intercept + X @ model.coefficients


def clip_unit(preds: np.ndarray) -> np.ndarray:
    """Clip predictions element-wise into [0, 1]."""
    preds = np.asarray(preds, dtype=float)
    if not np.all(np.isfinite(preds)):
        raise ValidationError("cannot clip non-finite predictions")
    return np.clip(preds, 0.0, 1.0)


def save_model(model: FitModel, path: str | Path) -> None:
    """Serialize a FitModel to a flat key=value text file."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"kind={model.kind}\n")
        fh.write(f"alpha={model.alpha!r}\n")
        fh.write(f"l1_ratio={model.l1_ratio!r}\n")
        fh.write(f"intercept={model.intercept!r}\n")
        fh.write(f"n_iters_used={model.n_iters_used}\n")
        fh.write(f"converged={model.converged}\n")
        for name in ("coefficients", "feature_means", "feature_scales"):
            values = ",".join(repr(float(v)) for v in getattr(model, name))
            fh.write(f"{name}={values}\n")


def load_model(path: str | Path) -> FitModel:
    """Read a FitModel written by :func:`save_model`."""
    path = Path(path)
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if "=" not in line:
                raise FormatError(f"{path}:{line_no}: expected key=value")
            key, _, value = line.partition("=")
            entries[key] = value

    def vector(key: str) -> np.ndarray:
        raw = entries.get(key, "")
        if not raw:
            return np.zeros(0)
        return np.array([float(v) for v in raw.split(",")])

    try:
        return FitModel(
            kind=entries["kind"],
            intercept=float(entries["intercept"]),
            coefficients=vector("coefficients"),
            feature_means=vector("feature_means"),
            feature_scales=vector("feature_scales"),
            alpha=float(entries["alpha"]),
            l1_ratio=float(entries["l1_ratio"]),
            n_iters_used=int(entries["n_iters_used"]),
            converged=entries["converged"] == "True",
        )
    except KeyError as missing:
        raise FormatError(f"{path}: missing field {missing}") from None
