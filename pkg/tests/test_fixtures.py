import random
from itertools import combinations_with_replacement

import networkx as nx
import pytest

from tuttekit.fixtures import (bounded_degree_corpus, complete, cycle, exhaustive_multigraphs,
                               k4_case, manifest, petersen, random_corpus, random_tree,
                               series_parallel_fixtures, theta, wheel)


def to_nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((e.u, e.v) for e in g.edges)
    return h


def test_exhaustive_corpus_matches_brute_force():
    ours = exhaustive_multigraphs(max_vertices=3, max_edges=3)
    reps = []
    for n in range(1, 4):
        slots = [(u, v) for u in range(n) for v in range(u, n)]
        for m in range(4):
            for pairs in combinations_with_replacement(slots, m):
                h = nx.MultiGraph()
                h.add_nodes_from(range(n))
                h.add_edges_from(pairs)
                if not any(nx.is_isomorphic(h, r) for r in reps):
                    reps.append(h)
    assert len(ours) == len(reps)
    mine = [to_nx(g) for g in ours]
    for i, j in [(i, j) for i in range(len(mine)) for j in range(i)]:
        assert not nx.is_isomorphic(mine[i], mine[j])


def test_random_trees_are_trees():
    rng = random.Random(5)
    for n in range(1, 12):
        assert nx.is_tree(to_nx(random_tree(n, rng)))


def test_bounded_degree_corpus():
    corpus = bounded_degree_corpus(100, seed=0)
    assert len(corpus) == 100
    for g in corpus:
        assert 2 <= g.n <= 10 and g.num_edges >= 1 and g.max_degree() <= 4
        assert not g.has_loops() and nx.Graph(to_nx(g)).number_of_edges() == g.num_edges


def test_random_corpus_reproducible():
    a, b = random_corpus(30, seed=9), random_corpus(30, seed=9)
    assert [g.edges for g in a] == [g.edges for g in b]
    assert all(g.n <= 6 and g.num_edges <= 8 for g in a)


def test_named_generators():
    assert nx.is_isomorphic(to_nx(petersen()), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(wheel(5)), nx.wheel_graph(6))
    assert nx.is_isomorphic(to_nx(complete(5)), nx.complete_graph(5))
    assert nx.is_isomorphic(to_nx(cycle(6)), nx.cycle_graph(6))
    th = theta(3, 4)
    assert (th.n, th.num_edges) == (2 + 4 * 2, 12)


def test_series_parallel_fixtures_have_no_k4_minor():
    # series-parallel: repeatedly removing degree <= 2 vertices (after
    # merging parallel edges) empties the graph
    for name, g in series_parallel_fixtures().items():
        h = nx.Graph(to_nx(g))
        while True:
            low = [v for v in h if h.degree(v) <= 2]
            if not low:
                break
            v = low[0]
            nbrs = list(h.neighbors(v))
            h.remove_node(v)
            if len(nbrs) == 2:
                h.add_edge(*nbrs)
        assert h.number_of_nodes() == 0, name


def test_k4_cases_split_edges():
    for c, size in zip("abcde", (1, 2, 2, 3, 3)):
        g = k4_case(c)
        assert sum(e.weight.name == "a" for e in g.edges) == size


def test_manifest_and_errors():
    names = {m["name"] for m in manifest()}
    assert {"theta", "complete", "wheel", "k4-case", "uniform", "graphic-k4"} <= names
    with pytest.raises(ValueError):
        cycle(0)
    with pytest.raises(ValueError):
        wheel(2)
