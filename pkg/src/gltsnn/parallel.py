"""Deterministic thread-pool mapping shared by the ensemble fitters.

Work items are independent and merged strictly by index, so results are
identical for any worker count. The heavy kernels release the GIL, which
is what makes plain threads worth having here.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def resolve_threads(threads: int | None) -> int:
    """Default to the machine's core count; reject non-positive requests."""
    if threads is None:
        return os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    return threads


def map_tasks(fn, count: int, threads: int | None) -> list:
    """Run fn(0..count-1), possibly on worker threads; results in index order."""
    workers = min(resolve_threads(threads), max(count, 1))
    if workers <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))
