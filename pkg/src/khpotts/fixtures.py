"""Built-in diagrams and plane graphs used by tests and ``verify``."""
from __future__ import annotations

import random

from .diagram import LinkDiagram, from_unoriented, parse_pd


def braid_closure(word, n_strands: int) -> LinkDiagram:
    """PD code of the closure of a braid word.

    ``word`` holds signed generator indices (1-based): ``i`` is the positive
    crossing of strands i and i+1, ``-i`` its inverse. Strands run upward.
    """
    next_label = n_strands + 1
    start = list(range(1, n_strands + 1))
    cur = list(start)
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < n_strands - 1:
            raise ValueError(f"generator {g} out of range for {n_strands} strands")
        sw, se = cur[i], cur[i + 1]
        nw, ne = next_label, next_label + 1
        next_label += 2
        if g > 0:
            crossings.append([se, ne, nw, sw])
        else:
            crossings.append([sw, se, ne, nw])
        cur[i], cur[i + 1] = nw, ne
    # close up: the top label at each position is the bottom label
    alias = {}
    free = 0
    for p in range(n_strands):
        if cur[p] == start[p]:
            free += 1
        else:
            alias[cur[p]] = start[p]
    relabel = {}
    crossings = [[alias.get(a, a) for a in c] for c in crossings]
    for c in crossings:
        for a in c:
            relabel.setdefault(a, len(relabel) + 1)
    return LinkDiagram(tuple(tuple(relabel[a] for a in c) for c in crossings), free)


def _pd(text):
    return parse_pd(text)


def diagrams() -> dict:
    """Named fixture diagrams."""
    trefoil = _pd("X(1,4,2,5); X(3,6,4,1); X(5,2,6,3)")
    return {
        "unknot": _pd("O(1)"),
        "unlink2": _pd("O(2)"),
        "empty": LinkDiagram((), 0),
        "kink_pos": _pd("X(1,1,2,2)"),
        "kink_neg": _pd("X(1,2,2,1)"),
        "hopf": _pd("X(1,3,2,4); X(3,1,4,2)"),
        "trefoil": trefoil,
        "trefoil_mirror": trefoil.mirror(),
        "trefoil_braid": braid_closure([1, 1, 1], 2),
        "trefoil_braid_stab": braid_closure([1, 1, 1, 2], 3),
        "trefoil_braid_stab_neg": braid_closure([1, 1, 1, -2], 3),
        "figure_eight": braid_closure([1, -2, 1, -2], 3),
        "twist": braid_closure([1], 2),
        "r2_unlink": braid_closure([1, -1], 2),
        "r2_unknot": braid_closure([1, 1, -1], 2),
        "r3_left": braid_closure([1, 2, 1], 3),
        "r3_right": braid_closure([2, 1, 2], 3),
        "r3_left_mixed": braid_closure([1, 2, -1], 3),
        "r3_right_mixed": braid_closure([-2, 1, 2], 3),
    }


# pairs related by a single Reidemeister move
REIDEMEISTER_PAIRS = [
    ("R1", "unknot", "kink_pos"),
    ("R1", "unknot", "kink_neg"),
    ("R1", "trefoil_braid", "trefoil_braid_stab"),
    ("R1", "trefoil_braid", "trefoil_braid_stab_neg"),
    ("R2", "unlink2", "r2_unlink"),
    ("R2", "twist", "r2_unknot"),
    ("R3", "r3_left", "r3_right"),
    ("R3", "r3_left_mixed", "r3_right_mixed"),
]


def reidemeister_pairs():
    d = diagrams()
    return [(move, a, b, d[a], d[b]) for move, a, b in REIDEMEISTER_PAIRS]


def random_braid_diagram(rng: random.Random, max_crossings: int = 5, max_strands: int = 4) -> LinkDiagram:
    n = rng.randint(2, max_strands)
    length = rng.randint(1, max_crossings)
    word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)]
    return braid_closure(word, n)


def random_medial_diagram(rng: random.Random, max_crossings: int = 5) -> LinkDiagram:
    """Medial link of a random plane graph with random crossing switches."""
    from .graphs import medial_link, random_planar_graph

    g = random_planar_graph(rng, max_edges=max_crossings, min_edges=1)
    d = medial_link(g)
    flipped = [(b, c, dd, a) if rng.random() < 0.5 else (a, b, c, dd) for a, b, c, dd in d.crossings]
    return from_unoriented(flipped, d.free_loops)


def random_diagrams(n: int, seed: int = 0, max_crossings: int = 5) -> list:
    rng = random.Random(seed)
    out = []
    for i in range(n):
        if i % 2:
            out.append(random_medial_diagram(rng, max_crossings))
        else:
            out.append(random_braid_diagram(rng, max_crossings))
    return out


def graphs() -> dict:
    """Named fixture plane graphs (with rotation systems)."""
    from .graphs import PlanarMultigraph

    g = PlanarMultigraph.from_plane_edges
    return {
        "single_node": PlanarMultigraph(1, (), {0: ()}),
        "single_edge": g(2, [(0, 1)]),
        "path3": g(3, [(0, 1), (1, 2)]),
        "triangle": g(3, [(0, 1), (1, 2), (2, 0)]),
        "square": g(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "theta": g(2, [(0, 1), (0, 1), (0, 1)], {0: [0, 2, 4], 1: [5, 3, 1]}),
        "self_loop": g(1, [(0, 0)]),
        "double_edge": g(2, [(0, 1), (0, 1)]),
        "k4": PlanarMultigraph.from_coordinates(
            [(0.0, 0.0), (0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)],
            [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)],
        ),
        "loop_and_edge": g(2, [(0, 1), (1, 1)]),
    }
