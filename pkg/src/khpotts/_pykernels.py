"""Pure-Python (numpy) implementations of the hot kernels.

Signatures mirror ``_ckernels``; the dispatcher in ``kernels`` picks one.
"""
import numpy as np


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def loop_counts(tuples, n_arcs, start, stop, free_loops=0):
    """Loop count of every smoothing state with mask in [start, stop).

    Bit k of the mask set means crossing k is B-smoothed. ``tuples`` is a
    (c, 4) integer array of arc indices in 0..n_arcs-1.
    """
    tuples = [tuple(int(x) for x in row) for row in np.asarray(tuples).reshape(-1, 4)]
    out = np.empty(stop - start, dtype=np.int32)
    for idx, mask in enumerate(range(start, stop)):
        parent = list(range(n_arcs))
        comps = n_arcs
        for k, (a, b, c, d) in enumerate(tuples):
            if (mask >> k) & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for x, y in pairs:
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[rx] = ry
                    comps -= 1
        out[idx] = comps + free_loops
    return out


def energy_histogram(q, n_nodes, eu, ev, start, stop, chunk=1 << 18):
    """Histogram of Potts energies over spin assignments with index in [start, stop).

    Assignment index i encodes node k's spin as digit k of i in base q.
    """
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    n_edges = len(eu)
    hist = np.zeros(n_edges + 1, dtype=np.int64)
    powers = q ** np.arange(n_nodes, dtype=np.int64)
    for lo in range(start, stop, chunk):
        idx = np.arange(lo, min(stop, lo + chunk), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % q if n_nodes else np.zeros((len(idx), 0), np.int64)
        if n_edges:
            energy = (digits[:, eu] == digits[:, ev]).sum(axis=1)
        else:
            energy = np.zeros(len(idx), dtype=np.int64)
        hist += np.bincount(energy, minlength=n_edges + 1)
    return hist


def subgraph_histogram(n_nodes, eu, ev, start, stop):
    """counts[k, c]: spanning subgraphs (edge masks in [start, stop)) with k edges and c components."""
    eu = [int(x) for x in eu]
    ev = [int(x) for x in ev]
    n_edges = len(eu)
    hist = np.zeros((n_edges + 1, n_nodes + 1), dtype=np.int64)
    for mask in range(start, stop):
        parent = list(range(n_nodes))
        comps = n_nodes
        k = 0
        for e in range(n_edges):
            if (mask >> e) & 1:
                k += 1
                rx, ry = _find(parent, eu[e]), _find(parent, ev[e])
                if rx != ry:
                    parent[rx] = ry
                    comps -= 1
        hist[k, comps] += 1
    return hist
