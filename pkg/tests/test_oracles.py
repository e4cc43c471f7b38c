from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosscomp.graph import (
    Graph,
    complement,
    delete_vertices,
    is_bipartite,
    is_clique,
    is_forest,
    is_proper_coloring,
    is_vertex_cover,
)
from crosscomp.instance import (
    CHROMATIC_BY_VC,
    CLIQUE,
    IS_BY_CLIQUE_DELETION,
    VERTEX_COVER,
    WEIGHTED_OCT_BY_VC,
    ProblemInstance,
    WeightAssignment,
)
from crosscomp.oracles import (
    OracleLimitError,
    chromatic_number,
    decide,
    max_clique,
    min_transversal,
    min_vertex_cover,
)


@st.composite
def graphs(draw, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, frozenset(chosen))


def _naive_transversal(g: Graph, mode: str, weights: WeightAssignment) -> int:
    ok = is_forest if mode == "all" else is_bipartite
    best = None
    for r in range(g.n + 1):
        for s in combinations(g.vertices, r):
            rest, _ = delete_vertices(g, s)
            if ok(rest):
                cost = weights.total(s)
                best = cost if best is None else min(best, cost)
    assert best is not None
    return best


def _naive_chromatic(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for colors in _colorings(g.n, k):
            if all(colors[u - 1] != colors[v - 1] for u, v in g.edges):
                return k
    return g.n


def _colorings(n: int, k: int):
    if n == 0:
        yield ()
        return
    for rest in _colorings(n - 1, k):
        for c in range(k):
            yield (*rest, c)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_max_clique_matches_networkx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    size, clique = max_clique(g)
    expected = max((len(c) for c in nx.find_cliques(h)), default=0)
    assert size == expected
    assert len(clique) == size and is_clique(g, clique)


def test_max_clique_returns_lexicographically_least():
    g = Graph.from_edges(5, [(1, 4), (2, 3), (4, 5), (2, 5)])
    assert max_clique(g) == (2, frozenset({1, 4}))


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_min_vertex_cover_is_optimal(g: Graph):
    size, cover = min_vertex_cover(g)
    assert is_vertex_cover(g, cover) and len(cover) == size
    naive = min(
        r for r in range(g.n + 1) if any(is_vertex_cover(g, s) for s in combinations(g.vertices, r))
    )
    assert size == naive


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6))
def test_chromatic_number_is_exact(g: Graph):
    chi, coloring = chromatic_number(g)
    assert chi == _naive_chromatic(g)
    if g.n:
        assert is_proper_coloring(g, coloring)
        assert len(set(coloring.values())) <= chi


def test_chromatic_number_of_odd_cycle_and_k4():
    assert chromatic_number(Graph.cycle(5))[0] == 3
    assert chromatic_number(Graph.complete(4))[0] == 4
    assert chromatic_number(Graph(3))[0] == 1


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6), st.sampled_from(["all", "odd"]), st.data())
def test_min_transversal_matches_enumeration(g: Graph, mode: str, data):
    weights = WeightAssignment(tuple(data.draw(st.integers(1, 3)) for _ in g.vertices))
    total, hit = min_transversal(g, mode, weights)  # type: ignore[arg-type]
    assert total == _naive_transversal(g, mode, weights)
    assert weights.total(hit) == total
    rest, _ = delete_vertices(g, hit)
    assert (is_forest if mode == "all" else is_bipartite)(rest)


def test_min_transversal_rejects_unknown_mode():
    with pytest.raises(ValueError):
        min_transversal(Graph.cycle(3), "even")  # type: ignore[arg-type]


def test_oracle_limit_is_enforced():
    with pytest.raises(OracleLimitError) as exc:
        min_vertex_cover(Graph.path(5), limit=4)
    assert (exc.value.oracle, exc.value.n, exc.value.limit) == ("vertex_cover", 5, 4)


def test_decide_uses_configured_limits():
    inst = ProblemInstance(CLIQUE, Graph.complete(4), 3)
    with pytest.raises(OracleLimitError):
        decide(inst, {"clique": 3})
    verdict = decide(inst)
    assert verdict.answer and verdict.value == 4 and verdict.label == "YES"


def test_decide_per_kind():
    p4 = Graph.path(4)
    assert decide(ProblemInstance(VERTEX_COVER, p4, 1)).answer is False
    assert decide(ProblemInstance(VERTEX_COVER, p4, 2)).answer is True
    indep = ProblemInstance(IS_BY_CLIQUE_DELETION, p4, 2, witness=frozenset({1, 2}))
    assert decide(indep).value == 2
    chrom = ProblemInstance(CHROMATIC_BY_VC, Graph.cycle(5), 2, witness=frozenset({1, 3, 5}))
    assert decide(chrom).answer is False
    tri = ProblemInstance(
        WEIGHTED_OCT_BY_VC, Graph.complete(3), 1, witness=frozenset({1, 2}), weights=WeightAssignment((3, 1, 2))
    )
    verdict = decide(tri)
    assert verdict.answer and verdict.witness == frozenset({2})


def _petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    inner = [(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    return Graph.from_edges(10, outer + inner + spokes)


def test_petersen_graph_is_triangle_free():
    size, clique = max_clique(_petersen())
    assert size == 2
    assert is_clique(_petersen(), clique)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=5))
def test_max_clique_is_n_minus_cover_of_complement(g: Graph):
    assert max_clique(g)[0] == g.n - min_vertex_cover(complement(g))[0]


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6), st.sampled_from(["all", "odd"]))
def test_min_transversal_defaults_to_unit_weights(g: Graph, mode: str):
    assert min_transversal(g, mode) == min_transversal(g, mode, WeightAssignment.unit(g.n))  # type: ignore[arg-type]
