"""Quickstart: fit the cascade estimator on a packaged dataset and predict.

The estimator works on a Dataset (features + named target) or on plain
arrays through the GltsnnRegressor wrapper. Everything is seeded, so
rerunning this script prints identical numbers.
"""

import numpy as np

from gltsnn import GltsnnConfig, builtin, fit_gltsnn, mse, predict_gltsnn

ds = builtin("diabetes")
print(f"diabetes: {ds.n_rows} rows, {ds.n_features} features, target {ds.target_name!r}")

# Small config so the demo runs in about a second; defaults are
# num_folds=10, num_knn=100.
cfg = GltsnnConfig(random_seed=0, num_folds=5, num_knn=10)
model = fit_gltsnn(ds, cfg)

print(f"seeds fitted: {len(model.seeds)}")
print(f"trees per seed: {len(model.seeds[0].trees)} (one per fold boundary)")
print(f"ridge combiner intercept: {model.final.intercept:.3f}")

preds = predict_gltsnn(model, ds.features)
print(f"training MSE: {mse(ds.target, preds):.2f}")
print(f"target variance: {np.var(ds.target):.2f}")
print("first five predictions:", np.round(preds[:5], 2))
