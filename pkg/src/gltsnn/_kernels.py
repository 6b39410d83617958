"""Compiled numerical kernels.

Everything here is an njit-compiled function operating on plain float64 /
int64 arrays, so fitting stays fast without a C extension. The SplitMix64
helpers replicate gltsnn.rng bit for bit; the generator state travels as a
one-element uint64 array so helpers can advance it in place. All arithmetic
stays in uint64 (mixing int literals into uint64 would promote to float64
under NumPy rules and corrupt the stream).

The public kernels release the GIL, so a ThreadPoolExecutor over trees or
seeds gets real parallelism. Results never depend on the thread count:
every kernel call owns its inputs and its private rng state.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U64_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_U64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TWO_NEG53 = 2.0**-53


@njit(cache=True, nogil=True)
def _mix64(z):
    z = (z ^ (z >> _S30)) * _U64_MIX1
    z = (z ^ (z >> _S27)) * _U64_MIX2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def _next_u64(st):
    st[0] = st[0] + _U64_GOLDEN
    return _mix64(st[0])


@njit(cache=True, nogil=True)
def _next_unit(st):
    return np.float64(_next_u64(st) >> _S11) * _TWO_NEG53


@njit(cache=True, nogil=True)
def _shuffle_prefix(st, arr, n):
    # Fisher-Yates from the high end, matching SplitMix64.permutation.
    for i in range(n - 1, 0, -1):
        j = np.int64(_next_u64(st) % np.uint64(i + 1))
        t = arr[i]
        arr[i] = arr[j]
        arr[j] = t


@njit(cache=True, nogil=True)
def stream_u64(seed, count):
    """Test hook: first `count` outputs of the stream for `seed`."""
    st = np.empty(1, np.uint64)
    st[0] = seed
    out = np.empty(count, np.uint64)
    for i in range(count):
        out[i] = _next_u64(st)
    return out


@njit(cache=True, nogil=True)
def stream_unit(seed, count):
    """Test hook: first `count` unit-interval draws for `seed`."""
    st = np.empty(1, np.uint64)
    st[0] = seed
    out = np.empty(count, np.float64)
    for i in range(count):
        out[i] = _next_unit(st)
    return out


@njit(cache=True, nogil=True)
def stream_permutation(seed, n):
    """Test hook: permutation of range(n) for `seed`."""
    st = np.empty(1, np.uint64)
    st[0] = seed
    out = np.arange(n)
    _shuffle_prefix(st, out, n)
    return out


@njit(cache=True, nogil=True)
def bootstrap_indices(seed, n):
    """n draws from range(n) with replacement, by modulo reduction."""
    st = np.empty(1, np.uint64)
    st[0] = seed
    un = np.uint64(n)
    out = np.empty(n, np.int64)
    for i in range(n):
        out[i] = np.int64(_next_u64(st) % un)
    return out


@njit(cache=True, nogil=True)
def extra_tree_fit(X, y, max_depth, seed):
    """Fit an extremely randomized regression tree.

    Per node: draw a feature permutation, then one uniform threshold in
    [lo, hi) per non-constant feature in permutation order (constant
    features consume no draw), and keep the candidate with the largest
    variance reduction; ties keep the earliest candidate. max_depth < 0
    means unlimited.

    Returns preorder flat arrays (feature, threshold, left, right, value,
    gain) plus the final rng state. feature == -1 marks a leaf; value is
    the node's target mean; gain is NaN for leaves.
    """
    n, d = X.shape
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap, np.float64)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap, np.float64)
    gain = np.full(cap, np.nan, np.float64)

    idx = np.arange(n)
    scratch = np.empty(n, np.int64)
    perm = np.empty(d, np.int64)

    st = np.empty(1, np.uint64)
    st[0] = seed

    # Stack rows: start, end, depth, parent, is_left.
    stack = np.empty((2 * n + 2, 5), np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n
    stack[0, 2] = 0
    stack[0, 3] = -1
    stack[0, 4] = 0
    sp = 1
    node_count = 0

    while sp > 0:
        sp -= 1
        start = stack[sp, 0]
        end = stack[sp, 1]
        depth = stack[sp, 2]
        parent = stack[sp, 3]
        is_left = stack[sp, 4]

        my_id = node_count
        node_count += 1
        if parent >= 0:
            if is_left == 1:
                left[parent] = my_id
            else:
                right[parent] = my_id

        m = end - start
        total = 0.0
        for p in range(start, end):
            total += y[idx[p]]
        mean = total / m
        value[my_id] = mean

        if m < 2 or (max_depth >= 0 and depth >= max_depth):
            continue

        ssd = 0.0
        ymin = y[idx[start]]
        ymax = ymin
        for p in range(start, end):
            yv = y[idx[p]]
            dv = yv - mean
            ssd += dv * dv
            if yv < ymin:
                ymin = yv
            if yv > ymax:
                ymax = yv
        if ymin == ymax:
            continue
        var_node = ssd / m

        for j in range(d):
            perm[j] = j
        _shuffle_prefix(st, perm, d)

        best_delta = -np.inf
        best_feat = np.int64(-1)
        best_thr = 0.0
        best_nl = np.int64(0)

        for pos in range(d):
            f = perm[pos]
            lo = X[idx[start], f]
            hi = lo
            for p in range(start, end):
                v = X[idx[p], f]
                if v < lo:
                    lo = v
                if v > hi:
                    hi = v
            if lo == hi:
                continue
            u = _next_unit(st)
            thr = lo + u * (hi - lo)
            if thr >= hi:
                thr = np.nextafter(hi, -np.inf)

            nl = np.int64(0)
            sl = 0.0
            for p in range(start, end):
                if X[idx[p], f] <= thr:
                    nl += 1
                    sl += y[idx[p]]
            nr = m - nl
            ml = sl / nl
            mr = (total - sl) / nr
            ssl = 0.0
            ssr = 0.0
            for p in range(start, end):
                yv = y[idx[p]]
                if X[idx[p], f] <= thr:
                    dv = yv - ml
                    ssl += dv * dv
                else:
                    dv = yv - mr
                    ssr += dv * dv
            delta = var_node - (nl / m) * (ssl / nl) - (nr / m) * (ssr / nr)
            if delta > best_delta:
                best_delta = delta
                best_feat = f
                best_thr = thr
                best_nl = nl

        if best_feat < 0:
            continue

        feature[my_id] = best_feat
        threshold[my_id] = best_thr
        gain[my_id] = best_delta

        li = start
        ri = start + best_nl
        for p in range(start, end):
            row = idx[p]
            if X[row, best_feat] <= best_thr:
                scratch[li] = row
                li += 1
            else:
                scratch[ri] = row
                ri += 1
        for p in range(start, end):
            idx[p] = scratch[p]
        mid = start + best_nl

        stack[sp, 0] = mid
        stack[sp, 1] = end
        stack[sp, 2] = depth + 1
        stack[sp, 3] = my_id
        stack[sp, 4] = 0
        sp += 1
        stack[sp, 0] = start
        stack[sp, 1] = mid
        stack[sp, 2] = depth + 1
        stack[sp, 3] = my_id
        stack[sp, 4] = 1
        sp += 1

    nc = node_count
    return (
        feature[:nc].copy(),
        threshold[:nc].copy(),
        left[:nc].copy(),
        right[:nc].copy(),
        value[:nc].copy(),
        gain[:nc].copy(),
        st[0],
    )


@njit(cache=True, nogil=True)
def cart_tree_fit(X, y, max_depth):
    """Fit a deterministic CART regression tree.

    Every feature is scanned in index order; candidate thresholds are the
    midpoints between consecutive distinct sorted values. The candidate
    with the largest variance reduction wins; ties keep the lowest feature
    index, then the lowest threshold. max_depth < 0 means unlimited.

    Within a feature, candidates are scored by prefix sums over
    node-mean-centered targets (fast, and no two thresholds of one feature
    induce the same row partition). Across features, each feature's best
    candidate is re-scored by a direct two-pass sweep in node row order:
    candidates on different features that induce the same partition then
    score bit-identically, so the lowest-feature tie rule actually
    engages instead of being decided by summation noise.

    Returns the same flat-array layout as extra_tree_fit.
    """
    n, d = X.shape
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap, np.float64)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap, np.float64)
    gain = np.full(cap, np.nan, np.float64)

    idx = np.arange(n)
    scratch = np.empty(n, np.int64)
    vals = np.empty(n, np.float64)
    ys = np.empty(n, np.float64)

    stack = np.empty((2 * n + 2, 5), np.int64)
    stack[0, 0] = 0
    stack[0, 1] = n
    stack[0, 2] = 0
    stack[0, 3] = -1
    stack[0, 4] = 0
    sp = 1
    node_count = 0

    while sp > 0:
        sp -= 1
        start = stack[sp, 0]
        end = stack[sp, 1]
        depth = stack[sp, 2]
        parent = stack[sp, 3]
        is_left = stack[sp, 4]

        my_id = node_count
        node_count += 1
        if parent >= 0:
            if is_left == 1:
                left[parent] = my_id
            else:
                right[parent] = my_id

        m = end - start
        total = 0.0
        for p in range(start, end):
            total += y[idx[p]]
        mean = total / m
        value[my_id] = mean

        if m < 2 or (max_depth >= 0 and depth >= max_depth):
            continue

        ssd = 0.0
        ymin = y[idx[start]]
        ymax = ymin
        for p in range(start, end):
            yv = y[idx[p]]
            dv = yv - mean
            ssd += dv * dv
            if yv < ymin:
                ymin = yv
            if yv > ymax:
                ymax = yv
        if ymin == ymax:
            continue
        var_node = ssd / m

        best_delta = -np.inf
        best_feat = np.int64(-1)
        best_thr = 0.0

        for f in range(d):
            ts = 0.0
            ts2 = 0.0
            for r in range(m):
                row = idx[start + r]
                vals[r] = X[row, f]
                yv = y[row] - mean
                ys[r] = yv
                ts += yv
                ts2 += yv * yv
            order = np.argsort(vals[:m])

            feat_delta = -np.inf
            feat_thr = 0.0
            csum = 0.0
            csum2 = 0.0
            for r in range(m - 1):
                o = order[r]
                yv = ys[o]
                csum += yv
                csum2 += yv * yv
                v = vals[o]
                vnext = vals[order[r + 1]]
                if vnext <= v:
                    continue
                nl = r + 1
                nr = m - nl
                thr = 0.5 * (v + vnext)
                if thr >= vnext:
                    # Midpoint rounded up to the right value; pull it back
                    # so rows equal to v stay on the left.
                    thr = v
                ssl = csum2 - csum * csum / nl
                if ssl < 0.0:
                    ssl = 0.0
                sr = ts - csum
                sr2 = ts2 - csum2
                ssr = sr2 - sr * sr / nr
                if ssr < 0.0:
                    ssr = 0.0
                delta = var_node - (nl / m) * (ssl / nl) - (nr / m) * (ssr / nr)
                if delta > feat_delta:
                    feat_delta = delta
                    feat_thr = thr

            if feat_delta == -np.inf:
                continue

            # Canonical re-score of this feature's winner, in node row order.
            nl = np.int64(0)
            sl = 0.0
            for p in range(start, end):
                if X[idx[p], f] <= feat_thr:
                    nl += 1
                    sl += y[idx[p]]
            nr = m - nl
            ml = sl / nl
            mr = (total - sl) / nr
            ssl = 0.0
            ssr = 0.0
            for p in range(start, end):
                yv = y[idx[p]]
                if X[idx[p], f] <= feat_thr:
                    dv = yv - ml
                    ssl += dv * dv
                else:
                    dv = yv - mr
                    ssr += dv * dv
            delta = var_node - (nl / m) * (ssl / nl) - (nr / m) * (ssr / nr)
            if delta > best_delta:
                best_delta = delta
                best_feat = np.int64(f)
                best_thr = feat_thr

        if best_feat < 0:
            continue

        feature[my_id] = best_feat
        threshold[my_id] = best_thr
        gain[my_id] = best_delta

        nl = np.int64(0)
        for p in range(start, end):
            if X[idx[p], best_feat] <= best_thr:
                nl += 1
        li = start
        ri = start + nl
        for p in range(start, end):
            row = idx[p]
            if X[row, best_feat] <= best_thr:
                scratch[li] = row
                li += 1
            else:
                scratch[ri] = row
                ri += 1
        for p in range(start, end):
            idx[p] = scratch[p]
        mid = start + nl

        stack[sp, 0] = mid
        stack[sp, 1] = end
        stack[sp, 2] = depth + 1
        stack[sp, 3] = my_id
        stack[sp, 4] = 0
        sp += 1
        stack[sp, 0] = start
        stack[sp, 1] = mid
        stack[sp, 2] = depth + 1
        stack[sp, 3] = my_id
        stack[sp, 4] = 1
        sp += 1

    nc = node_count
    return (
        feature[:nc].copy(),
        threshold[:nc].copy(),
        left[:nc].copy(),
        right[:nc].copy(),
        value[:nc].copy(),
        gain[:nc].copy(),
    )


@njit(cache=True, nogil=True)
def tree_predict(feature, threshold, left, right, value, X):
    """Route each row of X to a leaf and return the leaf means."""
    m = X.shape[0]
    out = np.empty(m, np.float64)
    for i in range(m):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out


@njit(cache=True, nogil=True)
def nn1_predict(points, targets, queries):
    """Exact 1-nearest-neighbor lookup under squared Euclidean distance.

    Distances accumulate explicit coordinate differences (never the
    expanded norm identity), so duplicated rows tie exactly and the
    strict < comparison resolves ties to the lowest stored index.
    """
    n, k = points.shape
    m = queries.shape[0]
    out = np.empty(m, np.float64)
    for qi in range(m):
        best = np.inf
        best_j = 0
        for j in range(n):
            s = 0.0
            for c in range(k):
                dv = queries[qi, c] - points[j, c]
                s += dv * dv
            if s < best:
                best = s
                best_j = j
        out[qi] = targets[best_j]
    return out
