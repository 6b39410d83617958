"""Tests for the evidence-maximization Bayesian ridge."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gltsnn.bayes_ridge import fit_bayes_ridge, predict_ridge

from reference_impls import ref_bayes_ridge, ref_ols


def test_all_zero_design():
    X = np.zeros((10, 3))
    y = np.arange(10.0)
    model = fit_bayes_ridge(X, y)
    assert np.array_equal(model.coef, np.zeros(3))
    assert model.intercept == pytest.approx(4.5)
    assert np.array_equal(model.feature_scales, np.ones(3))
    assert predict_ridge(model, X) == pytest.approx([4.5] * 10)


def test_exact_linear_recovery_vs_ols():
    x = np.linspace(-3.0, 3.0, 100).reshape(-1, 1)
    y = 2.0 * x[:, 0] + 5.0
    model = fit_bayes_ridge(x, y)
    ols_coef, ols_intercept = ref_ols(x, y)
    assert ols_coef[0] == pytest.approx(2.0, abs=1e-9)
    assert model.coef[0] == pytest.approx(ols_coef[0], abs=1e-2)
    assert model.intercept == pytest.approx(ols_intercept, abs=1e-2)
    assert predict_ridge(model, x) == pytest.approx(y, abs=1e-2)


def test_identical_columns_share_coefficient():
    gen = np.random.default_rng(0)
    col = gen.normal(size=50)
    X = np.column_stack([col, col])
    y = 3.0 * col + 1.0
    model = fit_bayes_ridge(X, y)
    assert model.coef[0] == pytest.approx(model.coef[1], rel=1e-9)
    assert predict_ridge(model, X) == pytest.approx(y, abs=1e-2)


def test_training_mse_never_worse_than_mean_predictor():
    gen = np.random.default_rng(3)
    for _ in range(5):
        X = gen.normal(size=(40, 6))
        y = gen.normal(size=40) * 10.0
        model = fit_bayes_ridge(X, y)
        mse = float(np.mean((predict_ridge(model, X) - y) ** 2))
        assert mse <= float(np.var(y)) + 1e-12


def test_hyperparameters_positive_and_iterations_bounded():
    gen = np.random.default_rng(7)
    X = gen.normal(size=(30, 4))
    y = X @ np.array([1.0, -2.0, 0.5, 0.0]) + gen.normal(size=30)
    model = fit_bayes_ridge(X, y)
    assert model.alpha > 0.0 and np.isfinite(model.alpha)
    assert model.lambda_ > 0.0 and np.isfinite(model.lambda_)
    assert 1 <= model.n_iterations_used <= 300


def test_column_exchange_invariance():
    gen = np.random.default_rng(11)
    X = gen.normal(size=(25, 3))
    y = gen.normal(size=25)
    a = fit_bayes_ridge(X, y)
    b = fit_bayes_ridge(X[:, ::-1], y)
    assert a.coef == pytest.approx(b.coef[::-1], rel=1e-8, abs=1e-12)
    queries = gen.normal(size=(5, 3))
    assert predict_ridge(a, queries) == pytest.approx(
        predict_ridge(b, queries[:, ::-1]), rel=1e-8
    )


@given(st.integers(0, 2**32 - 1), st.integers(2, 40), st.integers(1, 5))
@settings(max_examples=50, deadline=None)
def test_matches_normal_equation_reference(seed, n, k):
    gen = np.random.default_rng(seed)
    X = gen.normal(size=(n, k))
    y = gen.normal(size=n)
    model = fit_bayes_ridge(X, y)
    ref = ref_bayes_ridge(X, y)
    assert model.coef == pytest.approx(ref["coef"], rel=1e-6, abs=1e-9)
    assert model.intercept == pytest.approx(ref["intercept"], rel=1e-6, abs=1e-9)
    assert model.alpha == pytest.approx(ref["alpha"], rel=1e-5)
    assert model.lambda_ == pytest.approx(ref["lambda"], rel=1e-5)
    assert model.n_iterations_used == ref["iterations"]


def test_matches_sklearn_on_prenormalized_data():
    sklearn_linear = pytest.importorskip("sklearn.linear_model")
    gen = np.random.default_rng(42)
    X = gen.normal(size=(60, 4))
    y = X @ np.array([2.0, -1.0, 0.0, 3.0]) + gen.normal(size=60) * 0.5

    means = X.mean(axis=0)
    Xc = X - means
    scales = np.sqrt((Xc**2).sum(axis=0))
    Xn = Xc / scales
    sk = sklearn_linear.BayesianRidge(max_iter=300, tol=1e-3, fit_intercept=True)
    sk.fit(Xn, y)

    model = fit_bayes_ridge(X, y)
    w = model.coef * model.feature_scales  # back to normalized space
    assert w == pytest.approx(sk.coef_, rel=1e-6, abs=1e-10)
    assert model.alpha == pytest.approx(sk.alpha_, rel=1e-5)
    assert model.lambda_ == pytest.approx(sk.lambda_, rel=1e-5)


def test_single_row_and_constant_target():
    model = fit_bayes_ridge([[1.0, 2.0]], [5.0])
    assert predict_ridge(model, [[9.0, -9.0]]).tolist() == [5.0]
    const = fit_bayes_ridge([[1.0], [2.0], [3.0]], [4.0, 4.0, 4.0])
    assert predict_ridge(const, [[10.0]]) == pytest.approx([4.0], abs=1e-9)


def test_duplicated_query_rows_identical_outputs():
    gen = np.random.default_rng(1)
    X = gen.normal(size=(20, 2))
    y = gen.normal(size=20)
    model = fit_bayes_ridge(X, y)
    q = np.tile([[0.3, -0.7]], (6, 1))
    preds = predict_ridge(model, q)
    assert np.all(preds == preds[0])


def test_validation_errors():
    with pytest.raises(ValueError):
        fit_bayes_ridge(np.empty((0, 1)), np.empty(0))
    with pytest.raises(ValueError):
        fit_bayes_ridge([[np.inf]], [1.0])
    with pytest.raises(ValueError):
        fit_bayes_ridge([[1.0], [2.0]], [1.0])
    model = fit_bayes_ridge([[1.0], [2.0]], [1.0, 2.0])
    with pytest.raises(ValueError, match="features"):
        predict_ridge(model, [[1.0, 2.0]])
