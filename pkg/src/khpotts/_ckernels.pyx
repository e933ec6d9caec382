# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline int _find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def loop_counts(tuples, int n_arcs, long long start, long long stop, int free_loops=0):
    cdef cnp.int32_t[:, ::1] t = np.ascontiguousarray(np.asarray(tuples, dtype=np.int32).reshape(-1, 4))
    cdef int c = t.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out_arr = np.empty(stop - start, dtype=np.int32)
    cdef cnp.int32_t[::1] out = out_arr
    cdef int* parent = <int*> malloc(max(n_arcs, 1) * sizeof(int))
    cdef long long mask
    cdef int k, i, comps, rx, ry, x0, y0, x1, y1
    if parent == NULL:
        raise MemoryError()
    try:
        with nogil:
            for mask in range(start, stop):
                for i in range(n_arcs):
                    parent[i] = i
                comps = n_arcs
                for k in range(c):
                    if (mask >> k) & 1:
                        x0 = t[k, 0]; y0 = t[k, 3]; x1 = t[k, 1]; y1 = t[k, 2]
                    else:
                        x0 = t[k, 0]; y0 = t[k, 1]; x1 = t[k, 2]; y1 = t[k, 3]
                    rx = _find(parent, x0); ry = _find(parent, y0)
                    if rx != ry:
                        parent[rx] = ry
                        comps -= 1
                    rx = _find(parent, x1); ry = _find(parent, y1)
                    if rx != ry:
                        parent[rx] = ry
                        comps -= 1
                out[mask - start] = comps + free_loops
    finally:
        free(parent)
    return out_arr


def energy_histogram(int q, int n_nodes, eu, ev, long long start, long long stop):
    cdef cnp.int64_t[::1] u = np.ascontiguousarray(eu, dtype=np.int64)
    cdef cnp.int64_t[::1] v = np.ascontiguousarray(ev, dtype=np.int64)
    cdef int n_edges = u.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hist_arr = np.zeros(n_edges + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    cdef int* spin = <int*> malloc(max(n_nodes, 1) * sizeof(int))
    cdef long long idx, rem
    cdef int k, e, energy
    if spin == NULL:
        raise MemoryError()
    try:
        with nogil:
            rem = start
            for k in range(n_nodes):
                spin[k] = rem % q
                rem = rem // q
            for idx in range(start, stop):
                energy = 0
                for e in range(n_edges):
                    if spin[u[e]] == spin[v[e]]:
                        energy += 1
                hist[energy] += 1
                # odometer increment, node 0 is the least significant digit
                k = 0
                while k < n_nodes:
                    spin[k] += 1
                    if spin[k] < q:
                        break
                    spin[k] = 0
                    k += 1
    finally:
        free(spin)
    return hist_arr


def subgraph_histogram(int n_nodes, eu, ev, long long start, long long stop):
    cdef cnp.int64_t[::1] u = np.ascontiguousarray(eu, dtype=np.int64)
    cdef cnp.int64_t[::1] v = np.ascontiguousarray(ev, dtype=np.int64)
    cdef int n_edges = u.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] hist_arr = np.zeros((n_edges + 1, n_nodes + 1), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] hist = hist_arr
    cdef int* parent = <int*> malloc(max(n_nodes, 1) * sizeof(int))
    cdef long long mask
    cdef int i, e, k, comps, rx, ry
    if parent == NULL:
        raise MemoryError()
    try:
        with nogil:
            for mask in range(start, stop):
                for i in range(n_nodes):
                    parent[i] = i
                comps = n_nodes
                k = 0
                for e in range(n_edges):
                    if (mask >> e) & 1:
                        k += 1
                        rx = _find(parent, <int> u[e]); ry = _find(parent, <int> v[e])
                        if rx != ry:
                            parent[rx] = ry
                            comps -= 1
                hist[k, comps] += 1
    finally:
        free(parent)
    return hist_arr
