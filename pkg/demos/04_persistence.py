"""Model persistence: versioned JSON, byte-stable and value-exact.

serialize() emits a schema-versioned JSON document whose floats are
written in shortest round-trip form, so a deserialized model predicts
bit-for-bit identically and re-serializes to the same bytes. The same
format backs `gltsnn fit --out model.json` and `gltsnn predict`.
"""

import json

import numpy as np

from gltsnn import (
    GltsnnConfig,
    deserialize,
    fit_gltsnn,
    gen_friedman1,
    predict_gltsnn,
    serialize,
)

ds = gen_friedman1(n=80, d=5, noise=0.0, seed=1)
model = fit_gltsnn(ds, GltsnnConfig(num_folds=4, num_knn=3))

payload = serialize(model)
print(f"payload: {len(payload)} bytes")

doc = json.loads(payload)
print(f"schema version: {doc['schema_version']}")
print(f"seed blocks: {len(doc['seeds'])}, trees per block: {len(doc['seeds'][0]['trees'])}")

clone = deserialize(payload)
print(f"re-serialization byte-identical: {serialize(clone) == payload}")

queries = ds.features[:10]
same = np.array_equal(predict_gltsnn(model, queries), predict_gltsnn(clone, queries))
print(f"clone predictions bit-identical: {same}")

# Unknown schema versions are rejected instead of being misread.
doc["schema_version"] = 99
try:
    deserialize(json.dumps(doc).encode())
except ValueError as exc:
    print(f"version guard: {exc}")
