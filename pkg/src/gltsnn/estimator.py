"""The composite cascade estimator.

Fit pipeline, per seed: shuffle the rows, then walk an expanding-window
time split; each fold fits an extremely randomized tree on the original
features plus every earlier fold's meta column, predicts the future rows,
and back-fills its own training positions with the mean of those
predictions. A 1-nearest-neighbor model over the finished meta matrix
produces one in-sample column per seed, and a Bayesian ridge combines the
per-seed columns (re-aligned to the original row order) into the final
predictor.

Two asymmetries are intentional and must not be "fixed":
- Training rows of later folds keep earlier folds' imputed means, so trees
  see a mix of imputed and raw meta values.
- At predict time the cascade emits raw tree outputs with no imputation,
  so the 1-NN sees a different distribution than it saw during fit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .bayes_ridge import RidgePosterior, fit_bayes_ridge, predict_ridge
from .datasets import Dataset
from .nn1 import NN1Model, fit_nn1, predict_nn1
from .parallel import map_tasks
from .rng import SplitMix64, derive_seed
from .trees import Tree, fit_extra_tree, predict_tree, tree_from_dict, tree_to_dict
from .validation import as_float_matrix, check_width

SCHEMA_VERSION = 1


@dataclass
class GltsnnConfig:
    """Estimator hyperparameters; defaults match the reference behavior."""

    random_seed: int = 0
    tree_depth: int | None = None
    num_folds: int = 10
    num_knn: int = 100

    def __post_init__(self) -> None:
        if self.num_folds < 2:
            raise ValueError(f"num_folds must be at least 2, got {self.num_folds}")
        if self.num_knn < 1:
            raise ValueError(f"num_knn must be at least 1, got {self.num_knn}")
        if self.tree_depth is not None and self.tree_depth < 0:
            raise ValueError(f"tree_depth must be non-negative, got {self.tree_depth}")


@dataclass
class SeedCascade:
    """One seed's fitted pieces: F-1 cascade trees and the 1-NN over meta space."""

    trees: list[Tree]
    nn: NN1Model


@dataclass
class FittedGltsnn:
    config: GltsnnConfig
    n_features: int
    feature_names: list[str]
    seeds: list[SeedCascade]
    final: RidgePosterior = field(repr=False)


def time_split(n: int, num_folds: int, fold: int) -> int:
    """Training-row count t for a fold: positions 0..t-1 train, t..n-1 validate.

    t counts positions i with i * F < (fold + 1) * n, i.e.
    ceil((fold + 1) * n / F), in exact integer arithmetic.
    """
    if n < num_folds:
        raise ValueError(f"need n >= num_folds, got n={n}, num_folds={num_folds}")
    if not 0 <= fold <= num_folds - 2:
        raise ValueError(f"fold must be in [0, {num_folds - 2}], got {fold}")
    return ((fold + 1) * n + num_folds - 1) // num_folds


def fit_gltsnn(
    ds: Dataset,
    cfg: GltsnnConfig | None = None,
    *,
    threads: int | None = None,
    audit: list | None = None,
    _orders=None,
) -> FittedGltsnn:
    """Fit the full estimator on a dataset.

    Seeds are fitted independently (in parallel when threads > 1) and
    merged by seed index, so the result never depends on scheduling. When
    `audit` is a list, one record per (seed, fold) is appended describing
    exactly which shuffled positions trained that fold's tree, plus the
    fold's imputation mean and meta column. `_orders` injects per-seed row
    orders for trace tests; production callers leave it unset.
    """
    if cfg is None:
        cfg = GltsnnConfig()
    n, d = ds.n_rows, ds.n_features
    F, S = cfg.num_folds, cfg.num_knn
    if n < F:
        raise ValueError(f"need at least num_folds={F} rows, got {n}")

    X = ds.features
    y = ds.target

    def fit_seed(s: int):
        if _orders is not None:
            order = np.asarray(_orders[s], dtype=np.int64)
        else:
            order = SplitMix64(cfg.random_seed + s).permutation(n)
        Xs = X[order]
        ys = np.ascontiguousarray(y[order])

        buf = np.empty((n, d + F - 2))
        buf[:, :d] = Xs
        meta = np.empty((n, F - 1))
        trees: list[Tree] = []
        records = []
        for f in range(F - 1):
            t = time_split(n, F, f)
            Xf = np.ascontiguousarray(buf[:, : d + f])
            tree = fit_extra_tree(
                Xf[:t], ys[:t], cfg.tree_depth, rng=derive_seed(cfg.random_seed, s, f)
            )
            preds = predict_tree(tree, Xf[t:])
            mu = float(preds.mean())
            meta[:t, f] = mu
            meta[t:, f] = preds
            if f < F - 2:
                buf[:, d + f] = meta[:, f]
            trees.append(tree)
            if audit is not None:
                records.append(
                    {
                        "seed": s,
                        "fold": f,
                        "t": t,
                        "train_positions": np.arange(t),
                        "train_rows": order[:t].copy(),
                        "valid_rows": order[t:].copy(),
                        "mu": mu,
                        "meta_column": meta[:, f].copy(),
                    }
                )
        nn = fit_nn1(meta, ys)
        col = predict_nn1(nn, meta)
        return SeedCascade(trees, nn), col, order, records

    results = map_tasks(fit_seed, S, threads)

    seeds: list[SeedCascade] = []
    design = np.empty((n, S))
    for s, (cascade, col, order, records) in enumerate(results):
        seeds.append(cascade)
        design[order, s] = col
        if audit is not None:
            audit.extend(records)
    final = fit_bayes_ridge(design, y)
    return FittedGltsnn(cfg, d, list(ds.feature_names), seeds, final)


def predict_gltsnn(model: FittedGltsnn, X, *, threads: int | None = None) -> np.ndarray:
    """Predict new rows: raw cascade outputs -> per-seed 1-NN -> ridge."""
    X = as_float_matrix(X, allow_empty_rows=True)
    check_width(X, model.n_features)
    m = X.shape[0]
    d = model.n_features
    F = model.config.num_folds
    S = model.config.num_knn

    def seed_column(s: int) -> np.ndarray:
        cascade = model.seeds[s]
        buf = np.empty((m, d + F - 2))
        buf[:, :d] = X
        meta = np.empty((m, F - 1))
        for f in range(F - 1):
            Xf = np.ascontiguousarray(buf[:, : d + f])
            meta[:, f] = predict_tree(cascade.trees[f], Xf)
            if f < F - 2:
                buf[:, d + f] = meta[:, f]
        return predict_nn1(cascade.nn, meta)

    columns = map_tasks(seed_column, S, threads)
    design = np.empty((m, S))
    for s, col in enumerate(columns):
        design[:, s] = col
    return predict_ridge(model.final, design)


# ---------------------------------------------------------------- persistence


def serialize(model: FittedGltsnn) -> bytes:
    """Versioned JSON document; float round-trip is value-exact."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "random_seed": model.config.random_seed,
            "tree_depth": model.config.tree_depth,
            "num_folds": model.config.num_folds,
            "num_knn": model.config.num_knn,
        },
        "n_features": model.n_features,
        "feature_names": model.feature_names,
        "seeds": [
            {
                "trees": [tree_to_dict(tree) for tree in cascade.trees],
                "nn": {
                    "points": cascade.nn.points.tolist(),
                    "targets": cascade.nn.targets.tolist(),
                },
            }
            for cascade in model.seeds
        ],
        "final": {
            "coef": model.final.coef.tolist(),
            "intercept": model.final.intercept,
            "alpha": model.final.alpha,
            "lambda": model.final.lambda_,
            "feature_means": model.final.feature_means.tolist(),
            "feature_scales": model.final.feature_scales.tolist(),
            "target_mean": model.final.target_mean,
            "n_iterations_used": model.final.n_iterations_used,
        },
    }
    return json.dumps(doc, separators=(",", ":"), allow_nan=False).encode("utf-8")


def _expect(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise ValueError(f"malformed model payload: {where} is missing {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ValueError(
            f"malformed model payload: {where}.{key} has type {type(value).__name__}"
        )
    return value


def deserialize(payload: bytes | str) -> FittedGltsnn:
    """Rebuild a model from serialize() output; rejects unknown versions."""
    if isinstance(payload, bytes):
        payload = payload.decode("utf-8", errors="replace")
    try:
        doc = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed model payload: {exc}") from None
    if not isinstance(doc, dict):
        raise ValueError("malformed model payload: top level must be an object")
    version = _expect(doc, "schema_version", int, "document")
    if version != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported model schema version {version}, expected {SCHEMA_VERSION}"
        )

    raw_cfg = _expect(doc, "config", dict, "document")
    cfg = GltsnnConfig(
        random_seed=_expect(raw_cfg, "random_seed", int, "config"),
        tree_depth=raw_cfg.get("tree_depth"),
        num_folds=_expect(raw_cfg, "num_folds", int, "config"),
        num_knn=_expect(raw_cfg, "num_knn", int, "config"),
    )
    d = _expect(doc, "n_features", int, "document")
    feature_names = [str(v) for v in _expect(doc, "feature_names", list, "document")]
    F, S = cfg.num_folds, cfg.num_knn

    raw_seeds = _expect(doc, "seeds", list, "document")
    if len(raw_seeds) != S:
        raise ValueError(
            f"malformed model payload: {len(raw_seeds)} seed blocks for num_knn={S}"
        )
    seeds = []
    for s, block in enumerate(raw_seeds):
        if not isinstance(block, dict):
            raise ValueError(f"malformed model payload: seed {s} is not an object")
        raw_trees = _expect(block, "trees", list, f"seed {s}")
        if len(raw_trees) != F - 1:
            raise ValueError(
                f"malformed model payload: seed {s} has {len(raw_trees)} trees, "
                f"expected {F - 1}"
            )
        trees = [
            tree_from_dict(raw, d + f, cfg.tree_depth)
            for f, raw in enumerate(raw_trees)
        ]
        raw_nn = _expect(block, "nn", dict, f"seed {s}")
        nn = fit_nn1(
            _expect(raw_nn, "points", list, f"seed {s} nn"),
            _expect(raw_nn, "targets", list, f"seed {s} nn"),
        )
        if nn.n_features != F - 1:
            raise ValueError(
                f"malformed model payload: seed {s} nn expects {nn.n_features} "
                f"meta features, not {F - 1}"
            )
        seeds.append(SeedCascade(trees, nn))

    raw_final = _expect(doc, "final", dict, "document")
    coef = np.asarray(_expect(raw_final, "coef", list, "final"), dtype=np.float64)
    if coef.shape != (S,):
        raise ValueError(
            f"malformed model payload: final coef has length {coef.size}, expected {S}"
        )
    final = RidgePosterior(
        coef=coef,
        intercept=float(_expect(raw_final, "intercept", (int, float), "final")),
        alpha=float(_expect(raw_final, "alpha", (int, float), "final")),
        lambda_=float(_expect(raw_final, "lambda", (int, float), "final")),
        feature_means=np.asarray(
            _expect(raw_final, "feature_means", list, "final"), dtype=np.float64
        ),
        feature_scales=np.asarray(
            _expect(raw_final, "feature_scales", list, "final"), dtype=np.float64
        ),
        target_mean=float(_expect(raw_final, "target_mean", (int, float), "final")),
        n_iterations_used=int(_expect(raw_final, "n_iterations_used", int, "final")),
    )
    return FittedGltsnn(cfg, d, feature_names, seeds, final)


class GltsnnRegressor:
    """Convenience wrapper with a fit/predict surface over plain arrays."""

    def __init__(self, config: GltsnnConfig | None = None, *, threads: int | None = None):
        self.config = config if config is not None else GltsnnConfig()
        self.threads = threads
        self.model_: FittedGltsnn | None = None

    def fit(self, X, y=None) -> "GltsnnRegressor":
        if isinstance(X, Dataset):
            if y is not None:
                raise ValueError("pass either a Dataset or (X, y), not both")
            ds = X
        else:
            X = as_float_matrix(X)
            ds = Dataset([f"x{j}" for j in range(X.shape[1])], X, y)
        self.model_ = fit_gltsnn(ds, self.config, threads=self.threads)
        return self

    def predict(self, X) -> np.ndarray:
        if self.model_ is None:
            raise ValueError("regressor is not fitted")
        return predict_gltsnn(self.model_, X, threads=self.threads)
