"""Deterministic first-success driver, serial or multiprocess.

The trial space is indexed. Workers evaluate fixed-size chunks and the
driver consumes chunk results in submission order, so the reported
winner is the smallest-index success for any worker count and any
scheduling. Chunks ahead of a success are wasted work, never a
different answer.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

from .errors import BadParameters

CHUNK_SIZE = 16
_PREFETCH_PER_WORKER = 2


def worker_count(requested: int | None = None) -> int:
    """Resolve a worker count: explicit argument, else DLSPLIT_WORKERS,
    else 1."""
    if requested is None:
        env = os.environ.get("DLSPLIT_WORKERS", "").strip()
        requested = int(env) if env else 1
    if requested < 1:
        raise BadParameters("workers must be >= 1")
    return requested


def _eval_chunk(evaluate: Callable[[int], Any], ts: list[int]) -> list[Any]:
    return [evaluate(t) for t in ts]


def first_success(
    evaluate: Callable[[int], Any],
    trials: Callable[[int], int],
    max_trials: int,
    workers: int = 1,
) -> tuple[int, int, Any] | None:
    """Smallest-index trial whose evaluation is not None.

    trials maps an index to the exponent t to test; evaluate(t) returns
    a result or None. Returns (index, t, result), or None when the
    budget is spent. With workers > 1 both callables must be picklable
    (functools.partial over module-level functions qualifies).
    """
    if max_trials < 1:
        raise BadParameters("max_trials must be >= 1")
    if workers <= 1:
        for idx in range(max_trials):
            t = trials(idx)
            result = evaluate(t)
            if result is not None:
                return idx, t, result
        return None

    pending: deque[tuple[int, list[int], Any]] = deque()
    next_index = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:

        def submit_next() -> None:
            nonlocal next_index
            if next_index >= max_trials:
                return
            hi = min(next_index + CHUNK_SIZE, max_trials)
            ts = [trials(i) for i in range(next_index, hi)]
            pending.append((next_index, ts, pool.submit(_eval_chunk, evaluate, ts)))
            next_index = hi

        for _ in range(workers * _PREFETCH_PER_WORKER):
            submit_next()
        while pending:
            start, ts, fut = pending.popleft()
            for offset, result in enumerate(fut.result()):
                if result is not None:
                    for _, _, later in pending:
                        later.cancel()
                    return start + offset, ts[offset], result
            submit_next()
    return None
