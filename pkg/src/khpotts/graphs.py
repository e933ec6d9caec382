"""Plane multigraphs, the dichromatic polynomial and the medial link.

A rotation system lists, for every node, its edge-ends in counterclockwise
order. Edge ``k = (u, v)`` owns the ends ``2k`` (at u) and ``2k + 1`` (at v);
a self-loop owns both ends at the same node.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from . import config, kernels
from .bracket import collapse_sqrt, potts_bracket
from .diagram import LinkDiagram, from_unoriented, resolve_state
from .errors import Disconnected, NotPlanar, TooLarge
from .poly import Laurent

VARS = ("Q", "v")


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@dataclass(frozen=True, eq=False)
class PlanarMultigraph:
    n_nodes: int
    edges: tuple
    rotation: dict = field(default=None)

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
                raise ValueError(f"edge {(u, v)} references a missing node")
        rotation = self.rotation
        if rotation is None:
            rotation = {x: [] for x in range(self.n_nodes)}
            for k, (u, v) in enumerate(edges):
                rotation[u].append(2 * k)
                rotation[v].append(2 * k + 1)
        rotation = {int(x): tuple(int(h) for h in ends) for x, ends in rotation.items()}
        for x in range(self.n_nodes):
            rotation.setdefault(x, ())
        seen = sorted(h for ends in rotation.values() for h in ends)
        if seen != list(range(2 * len(edges))):
            raise ValueError("rotation must list every edge-end exactly once")
        for x, ends in rotation.items():
            for h in ends:
                if self.end_node(h) != x:
                    raise ValueError(f"edge-end {h} is not incident to node {x}")
        object.__setattr__(self, "rotation", rotation)
        position = {}
        for x, ends in rotation.items():
            for i, h in enumerate(ends):
                position[h] = (x, i)
        object.__setattr__(self, "_position", position)

    # -- construction -------------------------------------------------
    @classmethod
    def from_plane_edges(cls, n_nodes, edges, rotation=None) -> "PlanarMultigraph":
        return cls(n_nodes, tuple(tuple(e) for e in edges), rotation)

    @classmethod
    def from_coordinates(cls, coords, edges) -> "PlanarMultigraph":
        """Straight-line drawing of a simple graph; rotation sorted by angle."""
        rotation = {x: [] for x in range(len(coords))}
        for k, (u, v) in enumerate(edges):
            rotation[u].append(2 * k)
            rotation[v].append(2 * k + 1)

        def angle(h):
            k, side = divmod(h, 2)
            a, b = edges[k] if side == 0 else edges[k][::-1]
            (x0, y0), (x1, y1) = coords[a], coords[b]
            return math.atan2(y1 - y0, x1 - x0)

        rotation = {x: sorted(ends, key=angle) for x, ends in rotation.items()}
        return cls(len(coords), tuple(tuple(e) for e in edges), rotation)

    def to_json(self) -> dict:
        return {
            "nodes": self.n_nodes,
            "edges": [list(e) for e in self.edges],
            "rotation": {str(x): list(ends) for x, ends in sorted(self.rotation.items())},
        }

    @classmethod
    def from_json(cls, data) -> "PlanarMultigraph":
        if isinstance(data, str):
            data = json.loads(data)
        rotation = data.get("rotation")
        if rotation is not None:
            rotation = {int(x): list(ends) for x, ends in rotation.items()}
        return cls(int(data["nodes"]), tuple(tuple(e) for e in data.get("edges", [])), rotation)

    # -- combinatorics ------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def end_node(self, h: int) -> int:
        k, side = divmod(h, 2)
        return self.edges[k][side]

    @staticmethod
    def twin(h: int) -> int:
        return h ^ 1

    def rot_next(self, h: int) -> int:
        x, i = self._position[h]
        ends = self.rotation[x]
        return ends[(i + 1) % len(ends)]

    def rot_prev(self, h: int) -> int:
        x, i = self._position[h]
        ends = self.rotation[x]
        return ends[(i - 1) % len(ends)]

    def faces(self) -> list:
        """Orbits of h -> rot_next(twin(h)); each is one face boundary."""
        seen = set()
        out = []
        for start in range(2 * self.n_edges):
            if start in seen:
                continue
            face = []
            h = start
            while h not in seen:
                seen.add(h)
                face.append(h)
                h = self.rot_next(self.twin(h))
            out.append(face)
        return out

    def components(self) -> list:
        parent = list(range(self.n_nodes))
        for u, v in self.edges:
            parent[_find(parent, u)] = _find(parent, v)
        groups: dict = {}
        for x in range(self.n_nodes):
            groups.setdefault(_find(parent, x), []).append(x)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    @property
    def planar_flag(self) -> bool:
        """Euler check V - E + F = 2 on every connected component."""
        comp_of = {}
        comps = self.components()
        for c, nodes in enumerate(comps):
            for x in nodes:
                comp_of[x] = c
        v = [len(nodes) for nodes in comps]
        e = [0] * len(comps)
        f = [0] * len(comps)
        for u, _ in self.edges:
            e[comp_of[u]] += 1
        for face in self.faces():
            f[comp_of[self.end_node(face[0])]] += 1
        for c in range(len(comps)):
            faces = f[c] if e[c] else 1
            if v[c] - e[c] + faces != 2:
                return False
        return True

    def component_subgraphs(self) -> list:
        """Connected components as standalone graphs with induced rotations."""
        out = []
        for nodes in self.components():
            node_map = {x: i for i, x in enumerate(nodes)}
            ks = [k for k, (u, _) in enumerate(self.edges) if u in node_map]
            edge_map = {k: i for i, k in enumerate(ks)}
            edges = tuple((node_map[self.edges[k][0]], node_map[self.edges[k][1]]) for k in ks)
            rotation = {
                node_map[x]: [2 * edge_map[h // 2] + h % 2 for h in self.rotation[x]] for x in nodes
            }
            out.append(PlanarMultigraph(len(nodes), edges, rotation))
        return out

    def delete(self, k: int) -> "PlanarMultigraph":
        """Remove edge k (rotation is inherited)."""
        keep = [i for i in range(self.n_edges) if i != k]
        remap = {i: n for n, i in enumerate(keep)}
        rotation = {
            x: [2 * remap[h // 2] + h % 2 for h in ends if h // 2 != k] for x, ends in self.rotation.items()
        }
        return PlanarMultigraph(self.n_nodes, tuple(self.edges[i] for i in keep), rotation)


@dataclass(frozen=True)
class SpanningSubgraph:
    edge_subset: tuple  # one bool per edge of the parent graph
    components: int

    @property
    def n_edges(self) -> int:
        return sum(self.edge_subset)

    @classmethod
    def of(cls, g: PlanarMultigraph, edge_subset) -> "SpanningSubgraph":
        edge_subset = tuple(bool(b) for b in edge_subset)
        if len(edge_subset) != g.n_edges:
            raise ValueError("edge subset length mismatch")
        parent = list(range(g.n_nodes))
        comps = g.n_nodes
        for take, (u, v) in zip(edge_subset, g.edges):
            if take:
                ru, rv = _find(parent, u), _find(parent, v)
                if ru != rv:
                    parent[ru] = rv
                    comps -= 1
        return cls(edge_subset, comps)


def _check_edges(g: PlanarMultigraph, cap=None):
    limit = cap if cap is not None else config.cap("max_edges")
    if g.n_edges > limit:
        raise TooLarge(f"{g.n_edges} edges exceed the cap of {limit}", required=g.n_edges, cap=limit)


# -- dichromatic polynomial ---------------------------------------------

def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (qa, va), ca in a.items():
        for (qb, vb), cb in b.items():
            k = (qa + qb, va + vb)
            out[k] = out.get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _one_plus_v_pow(m: int) -> dict:
    return {(0, i): math.comb(m, i) for i in range(m + 1)}


def _canonical(n: int, edges) -> tuple:
    """Relabel touched nodes by first appearance; return (isolated, n', edges')."""
    relabel: dict = {}
    for u, v in sorted(tuple(sorted(e)) for e in edges):
        for x in (u, v):
            relabel.setdefault(x, len(relabel))
    new = tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))
    return n - len(relabel), len(relabel), new


def dichromatic_dc(g: PlanarMultigraph, cap: int | None = None) -> Laurent:
    """Z[G](Q, v) by deletion-contraction, memoized on relabeled edge multisets.

    A self-loop contributes (1 + v); m parallel copies of an edge are handled
    together: Z = Z[G - all] + ((1+v)^m - 1) Z[G / e].
    """
    _check_edges(g, cap)
    memo: dict = {}

    def rec(n: int, edges: tuple) -> dict:
        isolated, n, edges = _canonical(n, edges)
        key = (n, edges)
        if key not in memo:
            memo[key] = _reduce(n, edges)
        res = memo[key]
        if isolated:
            res = _pmul(res, {(isolated, 0): 1})
        return res

    def _reduce(n: int, edges: tuple) -> dict:
        if not edges:
            return {(n, 0): 1}
        loops = sum(1 for u, v in edges if u == v)
        if loops:
            rest = tuple(e for e in edges if e[0] != e[1])
            return _pmul(_one_plus_v_pow(loops), rec(n, rest))
        u, v = edges[0]
        m = sum(1 for e in edges if e == (u, v))
        deleted = tuple(e for e in edges if e != (u, v))

        def merge(x):
            x = u if x == v else x
            return x - 1 if x > v else x

        contracted = tuple((merge(a), merge(b)) for a, b in deleted)
        factor = _one_plus_v_pow(m)
        del factor[(0, 0)]
        return _padd(rec(n, deleted), _pmul(factor, rec(n - 1, contracted)))

    return Laurent(rec(g.n_nodes, g.edges), VARS)


def dichromatic_subgraph_sum(g: PlanarMultigraph, cap: int | None = None, threads: int = 1) -> Laurent:
    """sum over spanning subgraphs H of Q^|H| v^e(H)."""
    _check_edges(g, cap)
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    hist = kernels.subgraph_histogram(g.n_nodes, eu, ev, threads=threads)
    terms = {}
    for k in range(hist.shape[0]):
        for comps in range(hist.shape[1]):
            if hist[k, comps]:
                terms[(comps, k)] = int(hist[k, comps])
    return Laurent(terms, VARS)


def chromatic_from_dichromatic(z: Laurent) -> Laurent:
    """Specialize v = -1."""
    from .poly import substitute

    return substitute(z, "v", Laurent.const(-1))


# -- medial link --------------------------------------------------------

def medial_link(g: PlanarMultigraph) -> LinkDiagram:
    """Alternating link diagram with one crossing per edge.

    The A-smoothing at an edge's crossing keeps its endpoints' vertex circles
    apart; the B-smoothing joins them, so B-sets correspond to subgraphs and
    the all-A state has one loop per node.
    """
    if not g.planar_flag:
        raise NotPlanar("rotation system fails the Euler check")
    if not g.is_connected():
        raise Disconnected("medial link needs a connected graph")
    if g.n_edges == 0:
        return LinkDiagram((), g.n_nodes)

    def corner(h):  # the corner following edge-end h counterclockwise
        return h + 1

    tuples = []
    for k in range(g.n_edges):
        h1, h2 = 2 * k, 2 * k + 1
        tuples.append((corner(h1), corner(g.rot_prev(h1)), corner(h2), corner(g.rot_prev(h2))))
    d = from_unoriented(tuples)
    all_a = resolve_state(d, (0,) * d.n_crossings)
    if all_a.n_loops != g.n_nodes:
        raise NotPlanar(f"all-A state has {all_a.n_loops} loops, expected {g.n_nodes}")
    return d


def state_loop_count_formula(g: PlanarMultigraph, h: SpanningSubgraph) -> int:
    return 2 * h.components + h.n_edges - g.n_nodes


def dichromatic_via_bracket(g: PlanarMultigraph, threads: int = 1) -> Laurent:
    """Q^(N/2) {K(G)} with S^2 collapsed to Q; components multiply."""
    if not g.planar_flag:
        raise NotPlanar("rotation system fails the Euler check")
    total = Laurent.const(1, VARS)
    for part in g.component_subgraphs():
        d = medial_link(part)
        value = potts_bracket(d, threads) * Laurent.monomial({"S": part.n_nodes})
        total = total * collapse_sqrt(value)
    return total.with_variables(VARS)


# -- random plane graphs ------------------------------------------------

def random_planar_graph(rng: random.Random, max_edges: int = 8, min_edges: int = 1,
                        loops: bool = True, multi: bool = True, max_nodes: int | None = None) -> PlanarMultigraph:
    """Connected plane multigraph grown by pendant edges and chords inside faces."""
    target = rng.randint(min_edges, max_edges)
    n = 1
    edges: list = []
    rot: dict = {0: []}
    while len(edges) < target:
        grow = not edges or rng.random() < 0.45
        if max_nodes is not None and n >= max_nodes:
            grow = False
        if grow:
            x = rng.randrange(n)
            k = len(edges)
            edges.append((x, n))
            rot[x].insert(rng.randint(0, len(rot[x])), 2 * k)
            rot[n] = [2 * k + 1]
            n += 1
            continue
        g = PlanarMultigraph(n, tuple(edges), rot)
        face = rng.choice(g.faces())
        i, j = rng.randrange(len(face)), rng.randrange(len(face))
        a, b = g.twin(face[i]), g.twin(face[j])
        u, v = g.end_node(a), g.end_node(b)
        if (u == v and not loops) or (not multi and (u == v or (u, v) in edges or (v, u) in edges)):
            continue
        k = len(edges)
        trial = {x: list(ends) for x, ends in rot.items()}
        trial[u].insert(trial[u].index(a) + 1, 2 * k)
        trial[v].insert(trial[v].index(b) + 1, 2 * k + 1)
        cand = PlanarMultigraph(n, tuple(edges) + ((u, v),), trial)
        if cand.planar_flag:
            edges.append((u, v))
            rot = trial
    return PlanarMultigraph(n, tuple(edges), rot)


def random_multigraph(rng: random.Random, max_nodes: int = 5, max_edges: int = 7) -> PlanarMultigraph:
    """Arbitrary multigraph (self-loops and parallel edges allowed), no embedding implied."""
    n = rng.randint(1, max_nodes)
    m = rng.randint(0, max_edges)
    edges = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m))
    return PlanarMultigraph(n, edges)
