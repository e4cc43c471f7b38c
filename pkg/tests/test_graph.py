from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosscomp.graph import (
    Graph,
    GraphError,
    are_isomorphic,
    complement,
    delete_vertices,
    disjoint_union,
    find_violating_cycle,
    identify,
    induced_subgraph,
    is_bipartite,
    is_clique,
    is_forest,
    is_independent,
    is_vertex_cover,
    neighborhood,
    triangles,
)


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@st.composite
def graphs(draw, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, frozenset(chosen))


def test_graph_normalises_edge_orientation():
    g = Graph.from_edges(3, [(2, 1), (3, 2)])
    assert g.edges == frozenset({(1, 2), (2, 3)})
    assert g == Graph.path(3)
    assert g.has_edge(2, 1)
    assert g.degree(2) == 2


@pytest.mark.parametrize(
    "n, edges",
    [
        (2, [(1, 1)]),
        (2, [(1, 3)]),
        (-1, []),
    ],
)
def test_graph_rejects_bad_input(n: int, edges: list[tuple[int, int]]):
    with pytest.raises(GraphError):
        Graph.from_edges(n, edges)


def test_cycle_needs_three_vertices():
    with pytest.raises(GraphError):
        Graph.cycle(2)


def test_induced_subgraph_relabels_in_ascending_order():
    g = Graph.from_edges(5, [(1, 3), (3, 5), (2, 4)])
    sub, relabel = induced_subgraph(g, {5, 3, 1})
    assert relabel == {1: 1, 3: 2, 5: 3}
    assert sub == Graph.path(3)


def test_delete_vertices_rejects_out_of_range():
    with pytest.raises(GraphError):
        delete_vertices(Graph.path(3), {4})


def test_identify_merges_set_into_last_vertex():
    g = Graph.path(4)
    merged, mapping = identify(g, {2, 3})
    assert merged.n == 3
    assert mapping == {1: 1, 4: 2, 2: 3, 3: 3}
    assert merged.edges == frozenset({(1, 3), (2, 3)})


def test_identify_rejects_empty_set():
    with pytest.raises(GraphError):
        identify(Graph.path(2), set())


def test_disjoint_union_offsets_blocks():
    g, maps = disjoint_union([Graph.complete(2), Graph.path(3)])
    assert g.n == 5
    assert g.edges == frozenset({(1, 2), (3, 4), (4, 5)})
    assert maps[1] == {1: 3, 2: 4, 3: 5}


def test_neighborhood_excludes_the_set_itself():
    g = Graph.path(4)
    assert neighborhood(g, {2, 3}) == frozenset({1, 4})


def test_set_predicates():
    g = Graph.cycle(4)
    assert is_clique(g, {1, 2})
    assert not is_clique(g, {1, 3})
    assert is_independent(g, {1, 3})
    assert is_vertex_cover(g, {1, 3})
    assert not is_vertex_cover(g, {1})
    assert is_clique(g, set())


def test_triangles_of_k4():
    assert triangles(Graph.complete(4)) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_find_violating_cycle_prefers_smallest_sequence():
    g = Graph.from_edges(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (3, 4)])
    assert find_violating_cycle(g, "all") == [1, 2, 3]
    assert find_violating_cycle(g, "odd") == [1, 2, 3]


def test_find_violating_cycle_odd_skips_even_cycles():
    g = Graph.cycle(4)
    assert find_violating_cycle(g, "all") == [1, 2, 3, 4]
    assert find_violating_cycle(g, "odd") is None


def test_find_violating_cycle_rejects_unknown_mode():
    with pytest.raises(GraphError):
        find_violating_cycle(Graph.path(2), "even")  # type: ignore[arg-type]


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_forest_and_bipartite_agree_with_networkx(g: Graph):
    h = _to_nx(g)
    if g.n == 0:
        assert is_forest(g) and is_bipartite(g)
        return
    assert is_forest(g) == nx.is_forest(h)
    assert is_bipartite(g) == nx.is_bipartite(h)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_shortest_cycle_matches_girth(g: Graph):
    cyc = find_violating_cycle(g, "all")
    girth = nx.girth(_to_nx(g))
    if cyc is None:
        assert girth == float("inf")
        return
    assert len(cyc) == girth
    assert cyc[0] == min(cyc)
    assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


@settings(max_examples=60, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_isomorphism_agrees_with_networkx(g: Graph, rnd):
    perm = list(g.vertices)
    rnd.shuffle(perm)
    relabeled = Graph(g.n, frozenset((perm[u - 1], perm[v - 1]) for u, v in g.edges))
    assert are_isomorphic(g, relabeled)
    other = complement(g)
    assert are_isomorphic(g, other) == nx.is_isomorphic(_to_nx(g), _to_nx(other))


def test_isomorphism_separates_same_degree_sequences():
    two_triangles = Graph.from_edges(6, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)])
    assert not are_isomorphic(two_triangles, Graph.cycle(6))


def test_complement_examples():
    assert complement(Graph.complete(3)) == Graph(3)
    assert complement(Graph(2)) == Graph.complete(2)
    assert complement(Graph.path(3)) == Graph.from_edges(3, [(1, 3)])


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_complement_is_an_involution_and_splits_all_pairs(g: Graph):
    co = complement(g)
    assert complement(co) == g
    assert co.n == g.n
    assert g.m + co.m == g.n * (g.n - 1) // 2
    assert not g.edges & co.edges


def test_identify_examples():
    merged, _ = identify(Graph.complete(3), {2, 3})
    assert merged == Graph.from_edges(2, [(1, 2)])
    merged, _ = identify(Graph(3), {1, 2, 3})
    assert merged == Graph(1)
    merged, mapping = identify(Graph.path(3), {1, 3})
    assert merged == Graph.from_edges(2, [(1, 2)])
    assert mapping == {2: 1, 1: 2, 3: 2}


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_identify_single_vertex_keeps_isomorphism_type(g: Graph):
    for v in g.vertices:
        merged, _ = identify(g, {v})
        assert are_isomorphic(merged, g)


def test_odd_cycle_of_c5_is_the_whole_cycle():
    assert find_violating_cycle(Graph.cycle(5), "odd") == [1, 2, 3, 4, 5]


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_cycle_search_agrees_with_forest_and_bipartite(g: Graph):
    assert is_bipartite(g) == (find_violating_cycle(g, "odd") is None)
    assert is_forest(g) == (find_violating_cycle(g, "all") is None)
