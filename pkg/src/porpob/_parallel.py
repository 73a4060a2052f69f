"""Indexed fan-out over a thread pool with deterministic gathering.

Results are collected by index, so the output never depends on scheduling.
The POR_POB_THREADS environment variable caps the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

T = TypeVar("T")

ENV_THREAD_CAP = "POR_POB_THREADS"


def resolve_workers(workers: int | None) -> int:
    requested = 1 if workers is None else max(int(workers), 1)
    cap = os.environ.get(ENV_THREAD_CAP)
    if cap is not None:
        try:
            requested = min(requested, max(int(cap), 1))
        except ValueError:
            pass
    return requested


def map_indexed(fn: Callable[[int], T], count: int, workers: int | None) -> list[T]:
    """[fn(0), ..., fn(count-1)], possibly computed on a thread pool."""
    effective = resolve_workers(workers)
    if effective <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=effective) as pool:
        return list(pool.map(fn, range(count)))
