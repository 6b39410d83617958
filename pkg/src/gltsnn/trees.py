"""Regression trees: extremely randomized and deterministic CART.

Both variants share one flat-array container. Nodes are stored in preorder
(root first, then the whole left subtree, then the right), so a child's id
is always greater than its parent's; serialization relies on that ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .rng import SplitMix64
from .validation import as_float_matrix, as_float_vector, check_paired, check_width


@dataclass
class Tree:
    """A fitted binary regression tree over flat preorder arrays.

    feature[i] is the split column, or -1 for a leaf. value[i] holds the
    node's training-target mean (the prediction, at leaves). gain[i] is the
    variance reduction of the chosen split, NaN at leaves; it is a fit
    diagnostic and is not serialized.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    n_features: int
    max_depth: int | None = None
    gain: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_nodes(self) -> int:
        return int(self.feature.shape[0])

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature < 0))

    def depth(self) -> int:
        """Length of the longest root-to-leaf path, 0 for a single leaf."""
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        out = 0
        for i in range(self.n_nodes):
            if self.feature[i] >= 0:
                child_depth = depths[i] + 1
                depths[self.left[i]] = child_depth
                depths[self.right[i]] = child_depth
            elif depths[i] > out:
                out = int(depths[i])
        return out


def _resolve_depth(max_depth: int | None) -> int:
    if max_depth is None:
        return -1
    if max_depth < 0:
        raise ValueError(f"max_depth must be non-negative, got {max_depth}")
    return int(max_depth)


def fit_extra_tree(X, y, max_depth: int | None = None, rng: SplitMix64 | int = 0) -> Tree:
    """Fit an extremely randomized regression tree.

    Each node draws a fresh feature permutation and one uniform threshold in
    [min, max) per non-constant feature, keeping the candidate with the
    largest variance reduction (ties: earliest in the permutation). Passing
    a SplitMix64 consumes its stream in place; an integer seeds a fresh one.
    """
    X = as_float_matrix(X)
    y = as_float_vector(y)
    check_paired(X, y)
    depth = _resolve_depth(max_depth)

    if isinstance(rng, SplitMix64):
        state = rng.state
    else:
        state = int(rng) & ((1 << 64) - 1)
    feature, threshold, left, right, value, gain, end_state = _kernels.extra_tree_fit(
        X, y, depth, np.uint64(state)
    )
    if isinstance(rng, SplitMix64):
        rng.state = int(end_state)
    return Tree(feature, threshold, left, right, value, X.shape[1], max_depth, gain)


def fit_cart_tree(X, y, max_depth: int | None = None) -> Tree:
    """Fit a deterministic CART regression tree.

    All features are scanned in index order; candidate thresholds are
    midpoints between consecutive distinct sorted values; best variance
    reduction wins, ties to the lowest feature index then lowest threshold.
    """
    X = as_float_matrix(X)
    y = as_float_vector(y)
    check_paired(X, y)
    depth = _resolve_depth(max_depth)
    feature, threshold, left, right, value, gain = _kernels.cart_tree_fit(X, y, depth)
    return Tree(feature, threshold, left, right, value, X.shape[1], max_depth, gain)


def predict_tree(tree: Tree, X) -> np.ndarray:
    """Route each row to a leaf (x[feature] <= threshold goes left)."""
    X = as_float_matrix(X, allow_empty_rows=True)
    check_width(X, tree.n_features)
    return _kernels.tree_predict(
        tree.feature, tree.threshold, tree.left, tree.right, tree.value, X
    )


def tree_to_dict(tree: Tree) -> dict:
    """Nested plain-python form: {"leaf": v} | {"feature", "threshold", "left", "right"}."""
    n = tree.n_nodes
    built: list[dict | None] = [None] * n
    # Children carry larger preorder ids than their parent, so a reverse
    # sweep has both subtrees ready when the parent is assembled.
    for i in range(n - 1, -1, -1):
        if tree.feature[i] < 0:
            built[i] = {"leaf": float(tree.value[i])}
        else:
            built[i] = {
                "feature": int(tree.feature[i]),
                "threshold": float(tree.threshold[i]),
                "left": built[tree.left[i]],
                "right": built[tree.right[i]],
            }
    return built[0]


def _require_finite_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{where}: expected a number, got {type(value).__name__}")
    out = float(value)
    if not np.isfinite(out):
        raise ValueError(f"{where}: value must be finite")
    return out


def tree_from_dict(data: dict, n_features: int, max_depth: int | None = None) -> Tree:
    """Rebuild a Tree from its nested form, restoring preorder layout."""
    features: list[int] = []
    thresholds: list[float] = []
    lefts: list[int] = []
    rights: list[int] = []
    values: list[float] = []

    stack: list[tuple[object, int, bool]] = [(data, -1, False)]
    while stack:
        node, parent, is_left = stack.pop()
        if not isinstance(node, dict):
            raise ValueError(f"tree node must be an object, got {type(node).__name__}")
        my_id = len(features)
        if parent >= 0:
            if is_left:
                lefts[parent] = my_id
            else:
                rights[parent] = my_id

        if "leaf" in node:
            if set(node) != {"leaf"}:
                raise ValueError(f"leaf node has unexpected keys: {sorted(node)}")
            features.append(-1)
            thresholds.append(0.0)
            lefts.append(-1)
            rights.append(-1)
            values.append(_require_finite_number(node["leaf"], "leaf value"))
            continue

        expected = {"feature", "threshold", "left", "right"}
        if set(node) != expected:
            raise ValueError(f"split node must have keys {sorted(expected)}, got {sorted(node)}")
        f = node["feature"]
        if isinstance(f, bool) or not isinstance(f, int):
            raise ValueError("split feature must be an integer")
        if not 0 <= f < n_features:
            raise ValueError(f"split feature {f} out of range for {n_features} features")
        features.append(f)
        thresholds.append(_require_finite_number(node["threshold"], "split threshold"))
        lefts.append(-1)
        rights.append(-1)
        values.append(0.0)
        # Push right first so the left subtree is numbered immediately
        # after its parent, preserving preorder ids.
        stack.append((node["right"], my_id, False))
        stack.append((node["left"], my_id, True))

    return Tree(
        np.asarray(features, dtype=np.int64),
        np.asarray(thresholds, dtype=np.float64),
        np.asarray(lefts, dtype=np.int64),
        np.asarray(rights, dtype=np.int64),
        np.asarray(values, dtype=np.float64),
        n_features,
        max_depth,
    )
