"""Dispatch between the compiled kernels and the pure-Python fallback.

The compiled module is used when it imports and ``KHPOTTS_PURE_PYTHON`` is
unset. Work is split into contiguous chunks and optionally spread over a
thread pool; the compiled kernels release the GIL. Chunk results are
concatenated/summed in chunk order, so output never depends on the thread
count.
"""
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

try:
    if os.environ.get("KHPOTTS_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_MIN_CHUNK = 1 << 14


def _impl(backend):
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def default_threads():
    env = os.environ.get("KHPOTTS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _chunks(total, threads):
    if threads <= 1 or total < 2 * _MIN_CHUNK:
        return [(0, total)]
    n = min(threads * 4, max(1, total // _MIN_CHUNK))
    bounds = np.linspace(0, total, n + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run(fn, chunks, threads):
    if len(chunks) == 1:
        return [fn(*chunks[0])]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda ab: fn(*ab), chunks))


def loop_counts(tuples, n_arcs, n_crossings, free_loops=0, threads=1, backend=None):
    """Loop count for every mask in [0, 2**n_crossings)."""
    mod = _impl(backend)
    total = 1 << n_crossings
    tuples = np.asarray(tuples, dtype=np.int32).reshape(-1, 4)
    parts = _run(lambda a, b: mod.loop_counts(tuples, n_arcs, a, b, free_loops),
                 _chunks(total, threads), threads)
    return np.concatenate(parts)


def energy_histogram(q, n_nodes, eu, ev, threads=1, backend=None):
    """Exact count of spin assignments per energy value."""
    mod = _impl(backend)
    total = q ** n_nodes
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    parts = _run(lambda a, b: mod.energy_histogram(q, n_nodes, eu, ev, a, b),
                 _chunks(total, threads), threads)
    return np.sum(parts, axis=0)


def subgraph_histogram(n_nodes, eu, ev, threads=1, backend=None):
    """counts[k, c] of spanning subgraphs with k edges and c components."""
    mod = _impl(backend)
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    total = 1 << len(eu)
    parts = _run(lambda a, b: mod.subgraph_histogram(n_nodes, eu, ev, a, b),
                 _chunks(total, threads), threads)
    return np.sum(parts, axis=0)
