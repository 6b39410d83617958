"""Random-forest regression baseline, built from scratch on the CART kernel.

Reference-default behavior: every node considers all d features, split
candidates are midpoints between consecutive distinct sorted values, each
tree trains on a bootstrap sample of n rows drawn with replacement from a
per-tree seeded stream. No out-of-bag scoring and no feature subsampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import bootstrap_indices
from .parallel import map_tasks
from .rng import derive_seed
from .trees import Tree, fit_cart_tree, predict_tree
from .validation import as_float_matrix, as_float_vector, check_paired, check_width


@dataclass
class ForestConfig:
    """Forest hyperparameters; defaults mirror common library defaults."""

    n_trees: int = 100
    max_depth: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be at least 1, got {self.n_trees}")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError(f"max_depth must be non-negative, got {self.max_depth}")


@dataclass
class RandomForest:
    config: ForestConfig
    n_features: int
    trees: list[Tree] = field(repr=False)


def fit_forest(
    X,
    y,
    cfg: ForestConfig | None = None,
    *,
    threads: int | None = None,
    bootstrap: bool = True,
) -> RandomForest:
    """Fit n_trees CART trees on per-tree bootstrap samples.

    Tree t draws its sample from a stream seeded with (cfg.seed, t), so the
    forest is reproducible and independent of thread scheduling. `bootstrap`
    is a test hook: False trains every tree on the rows as-is.
    """
    if cfg is None:
        cfg = ForestConfig()
    X = as_float_matrix(X, "X")
    y = as_float_vector(y, "y")
    check_paired(X, y)
    n = X.shape[0]

    def fit_one(t: int) -> Tree:
        if bootstrap:
            indices = bootstrap_indices(np.uint64(derive_seed(cfg.seed, t)), n)
            return fit_cart_tree(X[indices], y[indices], cfg.max_depth)
        return fit_cart_tree(X, y, cfg.max_depth)

    trees = map_tasks(fit_one, cfg.n_trees, threads)
    return RandomForest(cfg, X.shape[1], trees)


def predict_forest(model: RandomForest, X, *, threads: int | None = None) -> np.ndarray:
    """Arithmetic mean of the per-tree predictions."""
    X = as_float_matrix(X, "X", allow_empty_rows=True)
    check_width(X, model.n_features)
    columns = map_tasks(lambda t: predict_tree(model.trees[t], X), len(model.trees), threads)
    return np.mean(columns, axis=0)


class RandomForestRegressor:
    """Convenience wrapper with a fit/predict surface over plain arrays."""

    def __init__(self, config: ForestConfig | None = None, *, threads: int | None = None):
        self.config = config if config is not None else ForestConfig()
        self.threads = threads
        self.model_: RandomForest | None = None

    def fit(self, X, y) -> "RandomForestRegressor":
        self.model_ = fit_forest(X, y, self.config, threads=self.threads)
        return self

    def predict(self, X) -> np.ndarray:
        if self.model_ is None:
            raise ValueError("regressor is not fitted")
        return predict_forest(self.model_, X, threads=self.threads)
