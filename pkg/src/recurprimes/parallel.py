"""Fixed-boundary sharding over a process pool.

Shard boundaries never depend on the worker count, and results come back in
shard order, so merged reports are identical for any number of jobs.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def default_jobs() -> int:
    raw = os.environ.get("RECURPRIMES_JOBS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"RECURPRIMES_JOBS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ValueError("RECURPRIMES_JOBS must be >= 1")
    return jobs


def _call(task):
    func, args, kwargs = task
    return func(*args, **kwargs)


def run_shards(func: Callable, shards: Sequence[tuple], jobs: int = 1, **kwargs) -> list:
    """Apply func(*shard, **kwargs) to every shard, preserving shard order."""
    tasks = [(func, tuple(shard), kwargs) for shard in shards]
    if jobs <= 1 or len(tasks) <= 1:
        return [_call(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(_call, tasks))


def index_shards(start: int, stop: int, size: int) -> list[tuple[int, int]]:
    """Inclusive [lo, hi] ranges covering start..stop."""
    return [(lo, min(lo + size - 1, stop)) for lo in range(start, stop + 1, size)]
