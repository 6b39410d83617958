"""Out-of-fold comparison: the cascade estimator versus the forest baseline.

Shuffled k-fold assignment comes from kfold(n, k, seed); every row is
predicted by a model that never saw it. This demo uses reduced sizes so
it finishes quickly; `gltsnn bench` runs the full six-cell table at
full defaults (100 trees, 100 seeds, 5-fold CV).
"""

from gltsnn import (
    ForestConfig,
    GltsnnConfig,
    GltsnnRegressor,
    RandomForestRegressor,
    builtin,
    cross_val_predict,
    kfold,
    mse,
)

ds = builtin("boston")
plan = kfold(ds.n_rows, 5, seed=0)
print(f"boston: {ds.n_rows} rows split into {plan.k} folds")

contenders = {
    "forest (25 trees)": lambda: RandomForestRegressor(ForestConfig(n_trees=25)),
    "cascade (S=25)": lambda: GltsnnRegressor(GltsnnConfig(num_folds=10, num_knn=25)),
}

for name, factory in contenders.items():
    preds = cross_val_predict(factory, ds, plan)
    print(f"{name:18s} OOF MSE {mse(ds.target, preds):7.3f}")
