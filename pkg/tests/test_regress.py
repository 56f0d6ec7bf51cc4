import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from semrel.errors import AlignmentError, ValidationError
from semrel.regress import (
    FitModel,
    clip_unit,
    fit_elasticnet,
    fit_ols,
    load_model,
    predict,
    save_model,
    soft_threshold,
)


def random_problem(rng, n=60, d=4, noise=0.01):
    X = rng.standard_normal((n, d))
    coef = rng.uniform(-0.2, 0.2, size=d)
    y = 0.5 + X @ coef + noise * rng.standard_normal(n)
    return X, np.clip(y, 0.0, 1.0)


# OLS


def test_ols_exact_line():
    model = fit_ols(np.array([[0.0], [1.0]]), np.array([0.0, 1.0]))
    assert model.intercept == pytest.approx(0.0, abs=1e-12)
    assert model.coefficients[0] == pytest.approx(1.0, abs=1e-12)


def test_ols_recovers_known_function():
    rng = np.random.default_rng(1)
    X = rng.standard_normal((50, 3))
    y = np.clip(0.4 + X @ np.array([0.05, -0.03, 0.02]), 0.0, 1.0)
    model = fit_ols(X, y)
    np.testing.assert_allclose(model.coefficients, [0.05, -0.03, 0.02], atol=1e-10)
    assert model.intercept == pytest.approx(0.4, abs=1e-10)
    np.testing.assert_allclose(predict(model, X), y, atol=1e-10)


def test_ols_handles_rank_deficiency():
    # duplicated column: minimum-norm solution splits the weight evenly
    rng = np.random.default_rng(2)
    base = rng.standard_normal((40, 1))
    X = np.hstack([base, base])
    y = np.clip(0.5 + 0.1 * base[:, 0], 0.0, 1.0)
    model = fit_ols(X, y)
    np.testing.assert_allclose(predict(model, X), y, atol=1e-8)
    assert model.coefficients[0] == pytest.approx(model.coefficients[1], abs=1e-8)


def test_ols_rejects_targets_outside_unit_interval():
    with pytest.raises(ValidationError):
        fit_ols(np.array([[0.0], [1.0]]), np.array([0.0, 1.5]))


def test_design_validation():
    with pytest.raises(AlignmentError):
        fit_ols(np.zeros((3, 2)), np.zeros(4))
    with pytest.raises(ValueError):
        fit_ols(np.zeros(3), np.zeros(3))  # X must be 2-D
    with pytest.raises(ValueError):
        fit_ols(np.zeros((1, 2)), np.zeros(1))  # too few rows
    bad = np.zeros((3, 2))
    bad[0, 0] = np.nan
    with pytest.raises(ValidationError):
        fit_ols(bad, np.zeros(3))


# soft thresholding


def test_soft_threshold_known_values():
    assert soft_threshold(3.0, 1.0) == 2.0
    assert soft_threshold(-3.0, 1.0) == -2.0
    assert soft_threshold(-0.5, 1.0) == 0.0
    assert soft_threshold(0.0, 0.0) == 0.0


def test_soft_threshold_rejects_negative_threshold():
    with pytest.raises(ValueError):
        soft_threshold(1.0, -0.1)


@given(st.floats(-1e6, 1e6), st.floats(0, 1e6))
def test_soft_threshold_shrinks_toward_zero(z, t):
    s = soft_threshold(z, t)
    assert abs(s) == pytest.approx(max(abs(z) - t, 0.0), abs=1e-9)
    assert s * z >= 0.0


# ElasticNet


def test_elasticnet_zero_alpha_matches_ols():
    rng = np.random.default_rng(3)
    X, y = random_problem(rng)
    ols = fit_ols(X, y)
    enet = fit_elasticnet(X, y, alpha=0.0, tol=1e-12, max_iter=20000)
    np.testing.assert_allclose(enet.coefficients, ols.coefficients, atol=1e-8)
    assert enet.intercept == pytest.approx(ols.intercept, abs=1e-8)


def test_elasticnet_one_dim_lasso_closed_form():
    rng = np.random.default_rng(4)
    X = rng.standard_normal((200, 1))
    y = np.clip(0.5 + 0.2 * X[:, 0] + 0.02 * rng.standard_normal(200), 0, 1)
    alpha = 0.05
    model = fit_elasticnet(X, y, alpha=alpha, l1_ratio=1.0, tol=1e-14,
                           max_iter=50000)
    xs = (X[:, 0] - X[:, 0].mean()) / X[:, 0].std()
    yc = y - y.mean()
    cov = float(xs @ yc) / len(y)
    expected_std = soft_threshold(cov, alpha)  # var(xs) == 1
    assert model.coefficients[0] * X[:, 0].std() == pytest.approx(
        expected_std, abs=1e-10)


def test_elasticnet_large_alpha_gives_null_model():
    rng = np.random.default_rng(5)
    X, y = random_problem(rng)
    model = fit_elasticnet(X, y, alpha=100.0, l1_ratio=1.0)
    np.testing.assert_allclose(model.coefficients, 0.0, atol=1e-15)
    assert model.intercept == pytest.approx(float(y.mean()), abs=1e-12)


def test_elasticnet_objective_monotone_non_increasing():
    rng = np.random.default_rng(6)
    X, y = random_problem(rng, n=80, d=6)
    model = fit_elasticnet(X, y, alpha=0.01, l1_ratio=0.5, tol=1e-10,
                           max_iter=5000)
    path = model.objective_path
    assert len(path) >= 2
    for prev, cur in zip(path, path[1:]):
        assert cur <= prev + 1e-12


def test_elasticnet_converged_flag_and_iteration_budget():
    rng = np.random.default_rng(7)
    X, y = random_problem(rng)
    tight = fit_elasticnet(X, y, alpha=0.01, tol=1e-10, max_iter=10000)
    assert tight.converged
    assert tight.n_iters_used <= 10000
    starved = fit_elasticnet(X, y, alpha=0.01, tol=1e-14, max_iter=1)
    assert not starved.converged
    assert starved.n_iters_used == 1


def test_elasticnet_constant_column_gets_zero_weight():
    rng = np.random.default_rng(8)
    X, y = random_problem(rng, d=3)
    X = np.hstack([X, np.full((len(y), 1), 7.0)])
    model = fit_elasticnet(X, y, alpha=0.01)
    assert model.coefficients[3] == 0.0
    assert np.isfinite(model.coefficients).all()


def test_elasticnet_kkt_at_convergence():
    rng = np.random.default_rng(9)
    X, y = random_problem(rng, n=120, d=5)
    alpha, l1_ratio = 0.03, 0.6
    model = fit_elasticnet(X, y, alpha=alpha, l1_ratio=l1_ratio, tol=1e-12,
                           max_iter=50000)
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    Xs = (X - means) / stds
    yc = y - y.mean()
    b = model.coefficients * stds
    n = len(y)
    grad = -(Xs.T @ (yc - Xs @ b)) / n + alpha * (1 - l1_ratio) * b
    for j in range(len(b)):
        if b[j] != 0.0:
            assert abs(grad[j] + alpha * l1_ratio * np.sign(b[j])) <= 1e-6
        else:
            assert abs(grad[j]) <= alpha * l1_ratio + 1e-6


def test_elasticnet_hyperparameter_validation():
    X = np.zeros((4, 2))
    y = np.zeros(4)
    with pytest.raises(ValueError):
        fit_elasticnet(X, y, alpha=-1.0)
    with pytest.raises(ValueError):
        fit_elasticnet(X, y, l1_ratio=1.5)
    with pytest.raises(ValueError):
        fit_elasticnet(X, y, tol=0.0)
    with pytest.raises(ValueError):
        fit_elasticnet(X, y, max_iter=0)


# prediction and clipping


def test_predict_applies_affine_map():
    model = FitModel(kind="ols", intercept=0.5,
                     coefficients=np.array([1.0, -2.0]),
                     feature_means=np.zeros(2), feature_scales=np.ones(2))
    X = np.array([[1.0, 0.5], [0.0, 0.0]])
    np.testing.assert_allclose(predict(model, X), [0.5, 0.5])


def test_predict_rejects_wrong_width():
    model = FitModel(kind="ols", intercept=0.0,
                     coefficients=np.array([1.0]),
                     feature_means=np.zeros(1), feature_scales=np.ones(1))
    with pytest.raises(AlignmentError):
        predict(model, np.zeros((2, 3)))


def test_clip_unit():
    np.testing.assert_allclose(clip_unit(np.array([-0.5, 0.25, 1.5])),
                               [0.0, 0.25, 1.0])


def test_clip_unit_rejects_non_finite():
    with pytest.raises(ValidationError):
        clip_unit(np.array([0.5, np.nan]))


def test_model_round_trip_is_bit_exact(tmp_path):
    rng = np.random.default_rng(10)
    X, y = random_problem(rng)
    model = fit_elasticnet(X, y, alpha=0.02, l1_ratio=0.3)
    path = tmp_path / "model.txt"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.kind == model.kind
    assert loaded.intercept == model.intercept
    assert np.array_equal(loaded.coefficients, model.coefficients)
    assert np.array_equal(loaded.feature_means, model.feature_means)
    assert np.array_equal(loaded.feature_scales, model.feature_scales)
    assert loaded.alpha == model.alpha
    assert loaded.l1_ratio == model.l1_ratio
