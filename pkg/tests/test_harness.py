"""Cross-validation harness tests (cheap cells only; the full benchmark
runs in the acceptance suite)."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gltsnn.datasets import Dataset
from gltsnn.forest import ForestConfig, RandomForestRegressor
from gltsnn.harness import (
    ExperimentReport,
    FoldPlan,
    ReportRow,
    cross_val_predict,
    kfold,
    mse,
)
from gltsnn.rng import SplitMix64


class MeanStub:
    """Predicts the training-target mean; ideal for OOF arithmetic oracles."""

    def fit(self, X, y):
        self.mean_ = float(np.mean(y))
        return self

    def predict(self, X):
        return np.full(np.asarray(X).shape[0], self.mean_)


def toy_dataset(n: int, seed: int = 0) -> Dataset:
    rng = np.random.default_rng(seed)
    return Dataset(["a"], rng.normal(size=(n, 1)), rng.normal(size=n))


# ----------------------------------------------------------------------- kfold


def test_kfold_sizes_ten_by_five():
    plan = kfold(10, 5, 0)
    assert sorted(np.bincount(plan.assignments)) == [2, 2, 2, 2, 2]


def test_kfold_sizes_eleven_by_five():
    plan = kfold(11, 5, 0)
    # Remainder rule: the first fold takes the extra row.
    assert list(np.bincount(plan.assignments)) == [3, 2, 2, 2, 2]


def test_kfold_assigns_consecutive_permuted_positions():
    plan = kfold(7, 3, 4)
    perm = SplitMix64(4).permutation(7)
    np.testing.assert_array_equal(plan.assignments[perm[0:3]], 0)
    np.testing.assert_array_equal(plan.assignments[perm[3:5]], 1)
    np.testing.assert_array_equal(plan.assignments[perm[5:7]], 2)


def test_kfold_is_deterministic_and_seed_sensitive():
    np.testing.assert_array_equal(kfold(50, 5, 3).assignments, kfold(50, 5, 3).assignments)
    assert not np.array_equal(kfold(50, 5, 3).assignments, kfold(50, 5, 4).assignments)


@given(
    n=st.integers(min_value=2, max_value=300),
    k=st.integers(min_value=2, max_value=300),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_kfold_partition_property(n, k, seed):
    if k > n:
        with pytest.raises(ValueError):
            kfold(n, k, seed)
        return
    plan = kfold(n, k, seed)
    sizes = np.bincount(plan.assignments, minlength=k)
    # Every row in exactly one fold; sizes differ by at most one.
    assert plan.assignments.shape == (n,)
    assert sizes.sum() == n
    assert sizes.max() - sizes.min() <= 1
    assert sizes.min() >= 1


def test_kfold_rejects_out_of_range_k():
    with pytest.raises(ValueError, match="2 <= k <= n"):
        kfold(10, 1, 0)
    with pytest.raises(ValueError, match="2 <= k <= n"):
        kfold(3, 4, 0)


def test_fold_plan_validates_invariants():
    with pytest.raises(ValueError, match="at most one"):
        FoldPlan(2, [0, 0, 0, 1])
    with pytest.raises(ValueError, match=r"\[0, k\)"):
        FoldPlan(2, [0, 2])


# ----------------------------------------------------------- cross_val_predict


def test_mean_stub_matches_arithmetic_oracle():
    ds = toy_dataset(10)
    plan = kfold(10, 5, 1)
    preds = cross_val_predict(MeanStub, ds, plan)
    for i in range(10):
        others = ds.target[plan.assignments != plan.assignments[i]]
        assert preds[i] == pytest.approx(np.mean(others), rel=1e-15)


def test_constant_target_gives_constant_oof():
    X = np.arange(12, dtype=np.float64).reshape(12, 1)
    ds = Dataset(["a"], X, np.full(12, 2.5))
    plan = kfold(12, 4, 0)
    rf = lambda: RandomForestRegressor(ForestConfig(n_trees=3))
    np.testing.assert_array_equal(cross_val_predict(rf, ds, plan), np.full(12, 2.5))
    np.testing.assert_array_equal(cross_val_predict(MeanStub, ds, plan), np.full(12, 2.5))


def test_cross_val_predict_is_deterministic():
    ds = toy_dataset(30, seed=5)
    plan = kfold(30, 5, 2)
    rf = lambda: RandomForestRegressor(ForestConfig(n_trees=4))
    np.testing.assert_array_equal(
        cross_val_predict(rf, ds, plan), cross_val_predict(rf, ds, plan)
    )


def test_fit_failure_carries_fold_context():
    class Exploder:
        def fit(self, X, y):
            raise ValueError("boom")

        def predict(self, X):  # pragma: no cover
            return np.zeros(len(X))

    ds = toy_dataset(8)
    with pytest.raises(RuntimeError, match="fold 0.*boom"):
        cross_val_predict(Exploder, ds, kfold(8, 4, 0))


def test_plan_must_cover_dataset():
    ds = toy_dataset(8)
    with pytest.raises(ValueError, match="covers 6 rows"):
        cross_val_predict(MeanStub, ds, kfold(6, 3, 0))


# ------------------------------------------------------------------------- mse


def test_mse_examples():
    assert mse([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert mse([0.0, 0.0], [1.0, 3.0]) == 5.0
    assert mse([1.0, 3.0], [0.0, 0.0]) == 5.0


def test_mse_rejects_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        mse([1.0, 2.0], [1.0])


@given(
    st.lists(
        st.floats(min_value=-1e6, max_value=1e6),
        min_size=1,
        max_size=40,
    ),
    st.randoms(use_true_random=False),
)
def test_mse_is_permutation_invariant(values, rand):
    y_true = np.array(values)
    y_pred = y_true + 0.5
    idx = list(range(len(values)))
    rand.shuffle(idx)
    assert mse(y_true[idx], y_pred[idx]) == pytest.approx(
        mse(y_true, y_pred), rel=1e-12, abs=1e-15
    )


# ---------------------------------------------------------------------- report


def sample_report() -> ExperimentReport:
    return ExperimentReport(
        [
            ReportRow("rf", "diabetes", 3408.61, 10.5, 0),
            ReportRow("gltsnn", "diabetes", 3253.13, 42.25, 0),
        ]
    )


def test_report_csv_shape():
    lines = sample_report().to_csv().splitlines()
    assert lines[0] == "estimator,dataset,mse,seconds,seed"
    assert lines[1] == "rf,diabetes,3408.61,10.500,0"
    assert len(lines) == 3


def test_report_table_is_aligned():
    table = sample_report().format_table().splitlines()
    assert table[0].startswith("estimator")
    assert "3408.6100" in table[2]
    assert "3253.1300" in table[3]
    # One header, one rule, one line per row.
    assert len(table) == 4


def test_report_row_rejects_negative_mse():
    with pytest.raises(ValueError, match="mse"):
        ReportRow("rf", "diabetes", -1.0, 0.0, 0)
