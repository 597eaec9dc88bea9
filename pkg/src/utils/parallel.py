#!/usr/bin/env python3
"""Ordered worker pool for the per-pole computations"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from utils.logger import Logger

T = TypeVar('T')
R = TypeVar('R')

THREADS_ENV = 'GLSMLAB_THREADS'


def thread_count() -> int:
    """Worker count from GLSMLAB_THREADS; 1 when unset or invalid"""
    raw = os.environ.get(THREADS_ENV, '').strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        Logger.warning(f"{THREADS_ENV}={raw!r} is not an integer, using 1 worker")
        return 1


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = None) -> List[R]:
    """
    Apply func to every item and return the results in input order.

    Sums over the result list are therefore reproducible for any worker count.
    """
    items = list(items)
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
