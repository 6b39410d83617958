"""Bayesian ridge regression with evidence-maximization hyperparameters.

The final combiner of the ensemble. The design it sees there is many
near-copies of the target (severely ill-conditioned), hence the SVD solve
instead of normal equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_float_matrix, as_float_vector, check_paired, check_width

_HYPERPRIOR = 1e-6  # a1 = a2 = l1 = l2: flat Gamma hyperpriors


@dataclass
class RidgePosterior:
    """Posterior mean weights mapped back to the original feature scale.

    alpha is the noise precision, lambda_ the weight precision; both stay
    strictly positive. feature_scales holds the Euclidean norms of the
    centered design columns (1 for zero-norm columns).
    """

    coef: np.ndarray
    intercept: float
    alpha: float
    lambda_: float
    feature_means: np.ndarray
    feature_scales: np.ndarray
    target_mean: float
    n_iterations_used: int


def fit_bayes_ridge(X, y, *, max_iter: int = 300, tol: float = 1e-3) -> RidgePosterior:
    """Fit by iterating evidence updates for (alpha, lambda) around an SVD.

    Columns are centered and scaled by their Euclidean norms, y is
    centered; alpha starts at 1/Var(y) (1 if the variance is zero) and
    lambda at 1. Each iteration solves the penalized least squares through
    the singular values, then re-estimates lambda and alpha via the
    effective degrees of freedom; it stops when the L1 change of the
    weights drops below tol. A final solve uses the last (alpha, lambda).
    """
    X = as_float_matrix(X)
    y = as_float_vector(y)
    check_paired(X, y)
    n, k = X.shape

    means = X.mean(axis=0)
    Xc = X - means
    scales = np.sqrt((Xc**2).sum(axis=0))
    scales[scales == 0.0] = 1.0
    Xn = Xc / scales
    y_mean = float(y.mean())
    yc = y - y_mean

    var_y = float(np.var(y))
    alpha = 1.0 / var_y if var_y > 0.0 else 1.0
    lam = 1.0

    U, s, Vh = np.linalg.svd(Xn, full_matrices=False)
    s2 = s**2
    UTy = U.T @ yc

    def solve(alpha: float, lam: float) -> tuple[np.ndarray, float]:
        w = Vh.T @ (s * UTy / (s2 + lam / alpha))
        resid = yc - Xn @ w
        return w, float(resid @ resid)

    w_prev: np.ndarray | None = None
    iterations = 0
    for it in range(max_iter):
        iterations = it + 1
        w, sse = solve(alpha, lam)
        gamma = float(np.sum(alpha * s2 / (lam + alpha * s2)))
        lam = (gamma + 2.0 * _HYPERPRIOR) / (float(w @ w) + 2.0 * _HYPERPRIOR)
        alpha = (n - gamma + 2.0 * _HYPERPRIOR) / (sse + 2.0 * _HYPERPRIOR)
        if it != 0 and float(np.sum(np.abs(w_prev - w))) < tol:
            break
        w_prev = w

    w, _ = solve(alpha, lam)
    coef = w / scales
    intercept = float(y_mean - coef @ means)
    return RidgePosterior(coef, intercept, alpha, lam, means, scales, y_mean, iterations)


def predict_ridge(model: RidgePosterior, X) -> np.ndarray:
    """Linear prediction X @ coef + intercept."""
    X = as_float_matrix(X, allow_empty_rows=True)
    check_width(X, model.coef.shape[0])
    return X @ model.coef + model.intercept
