from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given

from tuttekit.fixtures import complete_embedded_k4, cycle_embedded, petersen, wheel
from tuttekit.graph import (Multigraph, Symbol, biconnected_blocks, cocycle_lambda_tilde,
                            contract_edge, delete_edge, distance, format_graph, induced_subgraph,
                            max_flow, maxmaxflow, merge_vertices, parse_graph, planar_dual,
                            same_up_to_vertex_relabel)

from strategies import multigraphs


def to_nx(g: Multigraph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    for e in g.edges:
        h.add_edge(e.u, e.v, key=e.id)
    return h


@given(multigraphs())
def test_components_match_networkx(g):
    assert g.components() == nx.number_connected_components(to_nx(g))


@given(multigraphs())
def test_text_round_trip(g):
    h, rot = parse_graph(format_graph(g))
    assert rot is None
    assert h == g


def test_parse_weights_and_comments():
    g, _ = parse_graph("# triangle\nvertices 3\nedge 0 1 1/2\nedge 1 2 a\nedge 2 0\n")
    assert g.edges[0].weight == Fraction(1, 2)
    assert g.edges[1].weight == Symbol("a")
    assert g.edges[2].weight == Symbol()


@pytest.mark.parametrize("text", ["edge 0 1\n", "vertices 2\nedge 0\n", "vertices 2\nfoo\n",
                                  "vertices 2\nedge 0 1 1a\n"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_graph(text)


@given(multigraphs(max_edges=6))
def test_delete_and_contract_counts(g):
    for e in g.edges:
        d = delete_edge(g, e.id)
        assert d.num_edges == g.num_edges - 1 and d.n == g.n
        c = contract_edge(g, e.id)
        assert c.num_edges == g.num_edges - 1
        assert c.n == (g.n if e.is_loop else g.n - 1)


def test_merge_vertices_keeps_edge_ids():
    g = Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
    m, vmap = merge_vertices(g, 0, 2)
    assert m.n == 2 and m.edge_ids() == [0, 1, 2]
    assert any(e.is_loop for e in m.edges)


def test_induced_subgraph_keeps_ids():
    g = Multigraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 1)])
    sub, index = induced_subgraph(g, [0, 1, 2])
    assert sorted(sub.edge_ids()) == [0, 1, 4]


@given(multigraphs(max_vertices=6, max_edges=8, loops=False, connected=True))
def test_distance_matches_networkx(g):
    h = nx.Graph(to_nx(g))
    lengths = dict(nx.all_pairs_shortest_path_length(h))
    for x in range(g.n):
        for y in range(g.n):
            assert distance(g, x, y) == lengths[x][y]


@given(multigraphs(max_vertices=6, max_edges=9, loops=False))
def test_max_flow_matches_edge_connectivity(g):
    if g.n < 2:
        return
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for e in g.edges:
        if h.has_edge(e.u, e.v):
            h[e.u][e.v]["capacity"] += 1
        else:
            h.add_edge(e.u, e.v, capacity=1)
    for x in range(g.n):
        for y in range(x + 1, g.n):
            assert max_flow(g, x, y) == nx.maximum_flow_value(h, x, y)


@given(multigraphs(max_vertices=5, max_edges=7, loops=False))
def test_maxmaxflow_equals_cocycle_minmax(g):
    if g.n < 2:
        return
    assert maxmaxflow(g) == cocycle_lambda_tilde(g)


def test_blocks_match_networkx():
    g = Multigraph.from_pairs(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
    ours = sorted(sorted(b) for b in biconnected_blocks(g))
    h = nx.Graph([(e.u, e.v, {"id": e.id}) for e in g.edges])
    ref = sorted(sorted(h.edges[u, v]["id"] for u, v in comp)
                 for comp in nx.biconnected_component_edges(h))
    assert ours == ref


@pytest.mark.parametrize("make", [lambda: cycle_embedded(4), complete_embedded_k4,
                                  lambda: wheel(4, True), lambda: wheel(5, True),
                                  lambda: wheel(6, True)])
def test_double_dual_is_isomorphic(make):
    g, rot = make()
    d, drot = planar_dual(g, rot, with_rotation=True)
    assert d.num_edges == g.num_edges
    dd = planar_dual(d, drot)
    assert same_up_to_vertex_relabel(dd, g)


def test_dual_of_k4_is_k4_and_wheels_self_dual():
    # abstract isomorphism: dual edge ids follow the crossing primal edge
    g, rot = complete_embedded_k4()
    assert nx.is_isomorphic(to_nx(planar_dual(g, rot)), to_nx(g))
    w, wrot = wheel(5, True)
    assert nx.is_isomorphic(to_nx(planar_dual(w, wrot)), to_nx(w))


def test_nonplanar_rotation_rejected():
    # the straight-line drawing of K5 with one point inside is not an embedding
    g = Multigraph.from_pairs(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    from tuttekit.graph import rotation_from_coordinates
    rot = rotation_from_coordinates(g, [(0, 1), (1, 0), (0, -1), (-1, 0), (0.1, 0.2)])
    with pytest.raises(ValueError):
        planar_dual(g, rot)


def test_petersen_maxmaxflow():
    assert maxmaxflow(petersen()) == 3
