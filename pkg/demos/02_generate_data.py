"""Generating benchmark data: the Friedman #1 response surface.

y = 10*sin(pi*x0*x1) + 20*(x2 - 0.5)^2 + 10*x3 + 5*x4 + noise*eps

Only the first five features matter; any extra columns are pure noise
inputs that a good regressor must learn to ignore. With noise=0 the
stored targets satisfy the formula exactly, which the loader round-trip
below demonstrates.
"""

import os
import tempfile

import numpy as np

from gltsnn import friedman1_response, gen_friedman1, load_csv, write_csv

clean = gen_friedman1(n=200, d=10, noise=0.0, seed=0)
print(f"generated {clean.n_rows} rows with columns {clean.feature_names[:3]}...")

residual = clean.target - friedman1_response(clean.features)
print(f"max |y - formula| with noise=0: {np.max(np.abs(residual)):.2e}")

noisy = gen_friedman1(n=200, d=10, noise=1.0, seed=0)
# Same seed gives the same feature matrix; only the target moves.
print(f"features unchanged by noise: {np.array_equal(clean.features, noisy.features)}")
print(f"target noise std: {np.std(noisy.target - clean.target):.3f} (sigma=1)")

path = os.path.join(tempfile.mkdtemp(), "friedman.csv")
write_csv(clean, path)
again = load_csv(path, "y")
print(f"CSV round-trip exact: {np.array_equal(again.target, clean.target)}")
print(f"wrote {path}")
