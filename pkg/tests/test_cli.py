"""CLI tests, run in-process through main()."""

import json

import numpy as np
import pytest

from gltsnn.cli import main
from gltsnn.datasets import Dataset, friedman1_response, load_csv, write_csv
from gltsnn.estimator import deserialize, predict_gltsnn


def run(*argv) -> int:
    return main([str(a) for a in argv])


@pytest.fixture
def small_csv(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(24, 3))
    y = rng.normal(size=24)
    path = tmp_path / "train.csv"
    write_csv(Dataset(["a", "b", "c"], X, y, "label"), path)
    return path


# ------------------------------------------------------------------------- gen


def test_gen_writes_friedman_csv(tmp_path, capsys):
    out = tmp_path / "data.csv"
    assert run("gen", "friedman1", "--n", 50, "--d", 5, "--out", out) == 0
    assert "50 rows" in capsys.readouterr().out
    ds = load_csv(out, "y")
    assert ds.feature_names == ["x0", "x1", "x2", "x3", "x4"]
    assert ds.n_rows == 50
    # noise defaults to 0: stored targets satisfy the closed form exactly.
    np.testing.assert_allclose(
        ds.target, friedman1_response(ds.features), rtol=0, atol=1e-12
    )


def test_gen_same_flags_identical_files(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert run("gen", "friedman1", "--n", 20, "--noise", 0.5, "--seed", 3,
                   "--out", out) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_usage_errors(tmp_path, capsys):
    out = tmp_path / "x.csv"
    assert run("gen", "friedman1", "--d", 4, "--out", out) == 2
    assert "at least 5" in capsys.readouterr().err
    assert run("gen", "friedman1", "--n", 0, "--out", out) == 2
    assert run("gen", "friedman1", "--noise", -1, "--out", out) == 2
    assert run("gen", "nosuch", "--out", out) == 2  # argparse choice
    assert not out.exists()


# ------------------------------------------------------------------------- fit


def test_fit_writes_model_and_summary(tmp_path, small_csv, capsys):
    out = tmp_path / "model.json"
    assert run("fit", small_csv, "--target", "label", "--out", out,
               "--folds", 3, "--num-knn", 2) == 0
    line = capsys.readouterr().out
    assert "n=24" in line and "d=3" in line and "seconds=" in line
    doc = json.loads(out.read_bytes())
    assert doc["schema_version"] == 1
    assert len(doc["seeds"]) == 2
    assert doc["feature_names"] == ["a", "b", "c"]


def test_fit_deterministic_across_runs_and_threads(tmp_path, small_csv):
    outs = [tmp_path / f"m{i}.json" for i in range(3)]
    for out, threads in zip(outs, (1, 1, 3)):
        assert run("fit", small_csv, "--target", "label", "--out", out,
                   "--folds", 3, "--num-knn", 2, "--threads", threads) == 0
    blobs = [out.read_bytes() for out in outs]
    assert blobs[0] == blobs[1] == blobs[2]


def test_fit_usage_errors(tmp_path, small_csv, capsys):
    out = tmp_path / "model.json"
    assert run("fit", small_csv, "--target", "label", "--out", out, "--folds", 1) == 2
    assert "num_folds" in capsys.readouterr().err
    assert run("fit", small_csv, "--target", "label", "--out", out,
               "--num-knn", 0) == 2
    assert run("fit", small_csv, "--target", "label", "--out", out,
               "--threads", 0) == 2
    assert run("fit", small_csv, "--target", "label", "--out", out,
               "--tree-depth", -2) == 2
    assert not out.exists()


def test_fit_runtime_errors(tmp_path, small_csv, capsys):
    out = tmp_path / "model.json"
    assert run("fit", tmp_path / "missing.csv", "--target", "label",
               "--out", out) == 1
    assert run("fit", small_csv, "--target", "nosuch", "--out", out) == 1
    assert "nosuch" in capsys.readouterr().err


# --------------------------------------------------------------------- predict


def fit_small_model(tmp_path, small_csv):
    model_path = tmp_path / "model.json"
    assert run("fit", small_csv, "--target", "label", "--out", model_path,
               "--folds", 3, "--num-knn", 2) == 0
    return model_path


def test_predict_round_trips_bitwise(tmp_path, small_csv, capsys):
    model_path = fit_small_model(tmp_path, small_csv)
    preds_path = tmp_path / "preds.csv"
    # The training CSV still contains the target column; predict selects the
    # model's feature columns by name and ignores the rest.
    assert run("predict", model_path, small_csv, "--out", preds_path) == 0
    assert "24 rows" in capsys.readouterr().out
    lines = preds_path.read_text().splitlines()
    assert lines[0] == "prediction"
    got = np.array([float(v) for v in lines[1:]])

    model = deserialize(model_path.read_bytes())
    ds = load_csv(small_csv, "label")
    np.testing.assert_array_equal(got, predict_gltsnn(model, ds.features))


def test_predict_constant_target_yields_constant_column(tmp_path):
    X = np.arange(20, dtype=np.float64).reshape(10, 2)
    train = tmp_path / "const.csv"
    write_csv(Dataset(["u", "v"], X, np.full(10, 4.5)), train)
    model_path = tmp_path / "model.json"
    assert run("fit", train, "--target", "y", "--out", model_path,
               "--folds", 3, "--num-knn", 2) == 0
    preds_path = tmp_path / "preds.csv"
    assert run("predict", model_path, train, "--out", preds_path) == 0
    values = {float(v) for v in preds_path.read_text().splitlines()[1:]}
    assert values == {4.5}


def test_predict_diagnoses_missing_feature_columns(tmp_path, small_csv, capsys):
    model_path = fit_small_model(tmp_path, small_csv)
    rng = np.random.default_rng(1)
    narrow = tmp_path / "narrow.csv"
    write_csv(Dataset(["a", "b"], rng.normal(size=(4, 2)), np.zeros(4)), narrow)
    preds_path = tmp_path / "preds.csv"
    assert run("predict", model_path, narrow, "--out", preds_path) == 1
    err = capsys.readouterr().err
    assert "expects 3 feature columns" in err and "'c'" in err
    assert not preds_path.exists()


def test_predict_rejects_malformed_model(tmp_path, small_csv, capsys):
    bad = tmp_path / "bad.json"
    bad.write_bytes(b"{not json")
    assert run("predict", bad, small_csv, "--out", tmp_path / "p.csv") == 1
    assert "malformed" in capsys.readouterr().err


# ----------------------------------------------------------------------- bench


def test_bench_flag_validation(capsys):
    assert run("bench", "--threads", 0) == 2
    capsys.readouterr()
    assert run("bench", "--seed", "abc") == 2


# ----------------------------------------------------------------------- misc


def test_help_and_missing_subcommand():
    assert run("--help") == 0
    assert run() == 2
