"""Benchmark datasets: packaged CSVs, CSV ingest, and the Friedman-1 generator."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .rng import SplitMix64
from .validation import as_float_matrix, as_float_vector, check_paired

#: Packaged dataset name -> (csv filename, target column).
_BUILTINS = {
    "boston": ("boston.csv", "MEDV"),
    "diabetes": ("diabetes.csv", "target"),
}


@dataclass
class Dataset:
    """Column-named feature matrix plus target vector.

    Arrays are copied and frozen at construction; column order is
    significant end-to-end because trees address features by index.
    target_name is carried only so CSV round-trips keep their header.
    """

    feature_names: list[str]
    features: np.ndarray
    target: np.ndarray
    target_name: str = field(default="y", compare=False)

    def __post_init__(self) -> None:
        self.features = np.array(
            as_float_matrix(self.features, "features"), order="C"
        )
        self.target = np.array(as_float_vector(self.target, "target"))
        check_paired(self.features, self.target, "features", "target")
        self.feature_names = [str(name) for name in self.feature_names]
        if len(self.feature_names) != self.features.shape[1]:
            raise ValueError(
                f"{len(self.feature_names)} feature names for "
                f"{self.features.shape[1]} feature columns"
            )
        self.features.setflags(write=False)
        self.target.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])


def _parse_cell(text: str, row_num: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not math.isfinite(value):
        raise ValueError(
            f"data row {row_num}, column {column!r}: "
            f"cannot parse {text!r} as a finite number"
        )
    return value


def load_csv(path: str | Path, target_column: str) -> Dataset:
    """Load a headered numeric CSV, splitting out the named target column."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: file is empty, expected a header row") from None
        if target_column not in header:
            raise ValueError(f"{path}: target column {target_column!r} not found in header")
        if header.count(target_column) > 1:
            raise ValueError(f"{path}: target column {target_column!r} appears more than once")
        target_idx = header.index(target_column)
        feature_names = [name for i, name in enumerate(header) if i != target_idx]

        rows: list[list[float]] = []
        targets: list[float] = []
        for row_num, cells in enumerate(reader, start=1):
            if len(cells) != len(header):
                raise ValueError(
                    f"{path}: data row {row_num} has {len(cells)} cells, "
                    f"header has {len(header)}"
                )
            rows.append(
                [
                    _parse_cell(cell, row_num, header[i])
                    for i, cell in enumerate(cells)
                    if i != target_idx
                ]
            )
            targets.append(_parse_cell(cells[target_idx], row_num, target_column))

    if not rows:
        raise ValueError(f"{path}: no data rows")
    return Dataset(feature_names, np.array(rows), np.array(targets), target_column)


def load_table(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Load a headered all-numeric CSV as (column names, n x c matrix).

    Unlike load_csv this does not designate a target column; callers that
    know which columns they need (for example by a model's stored feature
    names) select them afterwards.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: file is empty, expected a header row") from None
        rows: list[list[float]] = []
        for row_num, cells in enumerate(reader, start=1):
            if len(cells) != len(header):
                raise ValueError(
                    f"{path}: data row {row_num} has {len(cells)} cells, "
                    f"header has {len(header)}"
                )
            rows.append(
                [_parse_cell(cell, row_num, header[i]) for i, cell in enumerate(cells)]
            )
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return header, np.array(rows)


def write_csv(ds: Dataset, path: str | Path) -> None:
    """Write the dataset with features in order and the target column last.

    Floats are written in shortest round-trip form, so load(write(ds))
    reproduces every value exactly.
    """
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([*ds.feature_names, ds.target_name])
        for x_row, y_val in zip(ds.features, ds.target):
            writer.writerow([repr(float(v)) for v in x_row] + [repr(float(y_val))])


def builtin(name: str) -> Dataset:
    """Load a packaged benchmark dataset ("boston" or "diabetes")."""
    try:
        filename, target_column = _BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTINS))
        raise ValueError(f"unknown builtin dataset {name!r}; known: {known}") from None
    source = resources.files("gltsnn").joinpath("data", filename)
    with resources.as_file(source) as path:
        return load_csv(path, target_column)


def friedman1_response(X: np.ndarray) -> np.ndarray:
    """Noise-free Friedman-1 response; only the first five columns matter."""
    X = np.asarray(X, dtype=np.float64)
    return (
        10.0 * np.sin(np.pi * X[:, 0] * X[:, 1])
        + 20.0 * (X[:, 2] - 0.5) ** 2
        + 10.0 * X[:, 3]
        + 5.0 * X[:, 4]
    )


def gen_friedman1(n: int, d: int = 10, noise: float = 0.0, seed: int = 0) -> Dataset:
    """Generate the Friedman-1 synthetic regression dataset.

    Features are U[0,1) drawn row-major (all d features of row 0, then row
    1, ...); the noise stream is drawn after all features, one standard
    normal per row, so feature values never depend on the noise setting.
    y = 10 sin(pi x0 x1) + 20 (x2 - 0.5)^2 + 10 x3 + 5 x4 + noise * eps.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if d < 5:
        raise ValueError(f"d must be at least 5, got {d}")
    if not (math.isfinite(noise) and noise >= 0.0):
        raise ValueError(f"noise must be a finite non-negative number, got {noise}")

    rng = SplitMix64(seed)
    X = np.empty((n, d))
    for i in range(n):
        for j in range(d):
            X[i, j] = rng.next_unit()
    eps = np.array([rng.standard_normal() for _ in range(n)])
    y = friedman1_response(X) + noise * eps
    return Dataset([f"x{j}" for j in range(d)], X, y)


def apply_permutation(ds: Dataset, perm) -> Dataset:
    """Reorder rows: row i of the output is row perm[i] of the input."""
    perm = np.asarray(perm)
    n = ds.n_rows
    if perm.shape != (n,) or not np.issubdtype(perm.dtype, np.integer):
        raise ValueError(f"perm must be {n} integer indices")
    if perm.size and (perm.min() < 0 or perm.max() >= n):
        raise ValueError("perm contains out-of-range indices")
    if not np.all(np.bincount(perm, minlength=n) == 1):
        raise ValueError("perm must contain each row index exactly once")
    return Dataset(
        list(ds.feature_names), ds.features[perm], ds.target[perm], ds.target_name
    )
