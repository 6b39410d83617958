"""Cascade-ensemble regression with a random-forest baseline.

The centerpiece estimator shuffles rows per seed, fits an ordered
time-split cascade of extremely randomized trees whose out-of-fold
predictions become meta features (training positions imputed with the
fold mean), reads each seed out through a 1-nearest-neighbor model in
meta space, and combines the per-seed columns with Bayesian ridge
regression. Everything is deterministic given seeds, including across
thread counts.
"""

from .bayes_ridge import RidgePosterior, fit_bayes_ridge, predict_ridge
from .datasets import (
    Dataset,
    apply_permutation,
    builtin,
    friedman1_response,
    gen_friedman1,
    load_csv,
    load_table,
    write_csv,
)
from .estimator import (
    FittedGltsnn,
    GltsnnConfig,
    GltsnnRegressor,
    deserialize,
    fit_gltsnn,
    predict_gltsnn,
    serialize,
    time_split,
)
from .forest import (
    ForestConfig,
    RandomForest,
    RandomForestRegressor,
    fit_forest,
    predict_forest,
)
from .harness import (
    ExperimentReport,
    FoldPlan,
    ReportRow,
    cross_val_predict,
    kfold,
    mse,
    run_experiments,
)
from .nn1 import NN1Model, fit_nn1, predict_nn1
from .rng import SplitMix64, derive_seed
from .trees import (
    Tree,
    fit_cart_tree,
    fit_extra_tree,
    predict_tree,
    tree_from_dict,
    tree_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "ExperimentReport",
    "FittedGltsnn",
    "FoldPlan",
    "ForestConfig",
    "GltsnnConfig",
    "GltsnnRegressor",
    "NN1Model",
    "RandomForest",
    "RandomForestRegressor",
    "ReportRow",
    "RidgePosterior",
    "SplitMix64",
    "Tree",
    "apply_permutation",
    "builtin",
    "cross_val_predict",
    "derive_seed",
    "deserialize",
    "fit_bayes_ridge",
    "fit_cart_tree",
    "fit_extra_tree",
    "fit_forest",
    "fit_gltsnn",
    "fit_nn1",
    "friedman1_response",
    "gen_friedman1",
    "kfold",
    "load_csv",
    "load_table",
    "mse",
    "predict_forest",
    "predict_gltsnn",
    "predict_nn1",
    "predict_ridge",
    "predict_tree",
    "run_experiments",
    "serialize",
    "time_split",
    "tree_from_dict",
    "tree_to_dict",
    "write_csv",
    "__version__",
]
