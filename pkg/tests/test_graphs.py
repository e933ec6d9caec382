import itertools
import random

import pytest

from khpotts import fixtures
from khpotts.diagram import resolve_state
from khpotts.errors import Disconnected, NotPlanar, TooLarge
from khpotts.graphs import (PlanarMultigraph, SpanningSubgraph, chromatic_from_dichromatic, dichromatic_dc,
                            dichromatic_subgraph_sum, dichromatic_via_bracket, medial_link, random_planar_graph,
                            state_loop_count_formula)
from khpotts.poly import Laurent, parse

G = fixtures.graphs()
QV = ("Q", "v")


def z(text):
    return parse(text, QV)


def random_graphs(n=50, seed=0):
    rng = random.Random(seed)
    return [random_planar_graph(rng, max_edges=8) for _ in range(n)]


def test_fixture_rotations_are_planar():
    for name, g in G.items():
        assert g.planar_flag, name


def test_face_count():
    assert len(G["triangle"].faces()) == 2
    assert len(G["theta"].faces()) == 3
    assert len(G["k4"].faces()) == 4
    assert len(G["self_loop"].faces()) == 2


def test_bad_rotation_fails_euler_check():
    k5 = PlanarMultigraph(5, [(a, b) for a, b in itertools.combinations(range(5), 2)])
    assert not k5.planar_flag
    with pytest.raises(NotPlanar):
        medial_link(k5)
    # theta graph with a twisted rotation is a torus embedding
    twisted = PlanarMultigraph(2, [(0, 1)] * 3, {0: [0, 2, 4], 1: [1, 3, 5]})
    assert not twisted.planar_flag


def test_rotation_validation():
    with pytest.raises(ValueError):
        PlanarMultigraph(2, [(0, 1)], {0: [0], 1: [0]})
    with pytest.raises(ValueError):
        PlanarMultigraph(2, [(0, 2)])


def test_json_round_trip():
    for g in list(G.values()) + random_graphs(10):
        h = PlanarMultigraph.from_json(g.to_json())
        assert h.edges == g.edges and h.rotation == g.rotation


def test_dichromatic_examples():
    assert dichromatic_dc(G["single_node"]) == Laurent.var("Q").with_variables(QV)
    assert dichromatic_dc(G["single_edge"]) == z("Q^2 + Q*v")
    tri = z("Q^3 + 3*Q^2*v + 3*Q*v^2 + Q*v^3")
    assert dichromatic_dc(G["triangle"]) == tri
    assert dichromatic_subgraph_sum(G["triangle"]) == tri
    assert dichromatic_subgraph_sum(PlanarMultigraph(4, ())) == z("Q^4")
    assert dichromatic_dc(G["self_loop"]) == z("Q + Q*v")


def test_chromatic_specialization():
    Q = Laurent.var("Q")
    assert chromatic_from_dichromatic(dichromatic_dc(G["path3"])) == Q * (Q - 1) ** 2
    assert chromatic_from_dichromatic(dichromatic_dc(G["triangle"])) == Q * (Q - 1) * (Q - 2)
    # cycle C4: (Q-1)^4 + (Q-1)
    assert chromatic_from_dichromatic(dichromatic_dc(G["square"])) == (Q - 1) ** 4 + (Q - 1)
    assert chromatic_from_dichromatic(dichromatic_dc(G["k4"])) == Q * (Q - 1) * (Q - 2) * (Q - 3)
    assert chromatic_from_dichromatic(dichromatic_dc(G["self_loop"])) == Laurent.const(0)


def test_three_way_equality():
    for g in list(G.values()) + random_graphs():
        dc = dichromatic_dc(g)
        assert dc == dichromatic_subgraph_sum(g) == dichromatic_via_bracket(g), g.to_json()


def test_disconnected_graph_multiplies():
    g = PlanarMultigraph(5, [(0, 1), (2, 3), (3, 4), (4, 2)])
    assert dichromatic_via_bracket(g) == dichromatic_dc(G["single_edge"]) * dichromatic_dc(G["triangle"])
    with pytest.raises(Disconnected):
        medial_link(g)


def test_medial_examples():
    d = medial_link(G["single_edge"])
    assert d.n_crossings == 1
    assert resolve_state(d, (0,)).n_loops == 2 and resolve_state(d, (1,)).n_loops == 1
    tri = medial_link(G["triangle"])
    assert tri.n_crossings == 3 and resolve_state(tri, (0, 0, 0)).n_loops == 3
    assert abs(sum(tri.signs)) == 3  # a trefoil projection, all crossings alike
    assert medial_link(G["single_node"]).free_loops == 1


def test_loop_count_formula_on_every_subgraph():
    for g in list(G.values()) + random_graphs(20, seed=1):
        if not g.is_connected():
            continue
        d = medial_link(g)
        for subset in itertools.product((0, 1), repeat=g.n_edges):
            h = SpanningSubgraph.of(g, subset)
            assert resolve_state(d, subset).n_loops == state_loop_count_formula(g, h)


def test_loop_count_formula_examples():
    g = G["single_edge"]
    assert state_loop_count_formula(g, SpanningSubgraph.of(g, (0,))) == 2
    assert state_loop_count_formula(g, SpanningSubgraph.of(g, (1,))) == 1
    t = G["triangle"]
    assert state_loop_count_formula(t, SpanningSubgraph.of(t, (1, 1, 1))) == 2


def test_subgraph_component_bounds():
    for g in random_graphs(10, seed=2):
        for subset in itertools.product((0, 1), repeat=min(g.n_edges, 6)):
            subset = subset + (0,) * (g.n_edges - len(subset))
            h = SpanningSubgraph.of(g, subset)
            assert max(1, g.n_nodes - h.n_edges) <= h.components <= g.n_nodes


def test_random_generator_covers_loops_and_multi_edges():
    gs = random_graphs(200, seed=5)
    assert any(u == v for g in gs for u, v in g.edges)
    assert any(len(set(g.edges)) < g.n_edges for g in gs)
    assert all(g.planar_flag and g.is_connected() for g in gs)


def test_cap():
    big = PlanarMultigraph(2, [(0, 1)] * 25)
    with pytest.raises(TooLarge):
        dichromatic_dc(big)
    with pytest.raises(TooLarge):
        dichromatic_subgraph_sum(big)
