"""Order-preserving map bounded by ``BRAIDED_FORGE_THREADS`` (default 1)."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("BRAIDED_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    items = list(items)
    cap = thread_cap()
    if cap == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))
