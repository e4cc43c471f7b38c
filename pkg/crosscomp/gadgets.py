from __future__ import annotations

from dataclasses import dataclass

from crosscomp.graph import Edge, Graph
from crosscomp.instance import TRIANGLE_SPLIT, TRIANGLE_SPLIT_TARGET, ProblemInstance, TrianglePartition

SCAFFOLD_ROLES = ("mid1", "mid2", "tri", "ta1", "ta2", "tb1", "tb2")
SCAFFOLD_SIZE = len(SCAFFOLD_ROLES)

# scaffold-internal edges by role, then boundary edges as (endpoint, role)
SCAFFOLD_EDGES = (("mid1", "mid2"), ("ta1", "ta2"), ("ta2", "tri"), ("tb1", "tb2"), ("tb2", "tri"))
BOUNDARY_EDGES = (("u", "mid1"), ("v", "mid2"), ("u", "ta1"), ("v", "tb1"))


@dataclass(frozen=True)
class ScaffoldUnit:
    """The seven vertices inflation adds for one edge u < v."""

    u: int
    v: int
    mid1: int
    mid2: int
    tri: int
    ta1: int
    ta2: int
    tb1: int
    tb2: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(getattr(self, role) for role in SCAFFOLD_ROLES)

    def owner(self, role: str) -> int:
        """Original endpoint reached by following degree-2 vertices from `role`."""
        return self.u if role in ("mid1", "tri", "ta1", "ta2") else self.v


@dataclass(frozen=True)
class InflationResult:
    graph: Graph
    original: dict[int, int]
    scaffold: tuple[ScaffoldUnit, ...]


@dataclass(frozen=True)
class K4BoxResult:
    graph: Graph
    zero_terminals: tuple[int, int]
    one_terminals: tuple[int, int]


def scaffold_edges(unit: ScaffoldUnit, u: int, v: int) -> list[Edge]:
    """Edges of one scaffold unit attached to endpoints u, v (which may differ from unit.u/unit.v)."""
    ends = {"u": u, "v": v}
    out = [(getattr(unit, a), getattr(unit, b)) for a, b in SCAFFOLD_EDGES]
    out.extend((ends[end], getattr(unit, role)) for end, role in BOUNDARY_EDGES)
    return out


def inflate(g: Graph) -> InflationResult:
    """Complete every edge into a triangle, then subdivide every edge by two new vertices."""
    units = []
    edges: list[Edge] = []
    for j, (u, v) in enumerate(g.sorted_edges()):
        base = g.n + SCAFFOLD_SIZE * j
        unit = ScaffoldUnit(u, v, *(base + k for k in range(1, SCAFFOLD_SIZE + 1)))
        units.append(unit)
        edges.extend(scaffold_edges(unit, u, v))
    out = Graph(g.n + SCAFFOLD_SIZE * g.m, frozenset(edges))
    return InflationResult(out, {v: v for v in g.vertices}, tuple(units))


def k4_in_a_box() -> K4BoxResult:
    a, b, c, d = 1, 2, 3, 4
    k4 = [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)]
    boxed = [(a, b), (b, c), (c, d), (d, a)]
    edges = list(k4)
    for idx, (x, y) in enumerate(boxed, start=5):
        edges.extend([(x, idx), (y, idx)])
    return K4BoxResult(Graph.from_edges(8, edges), (a, c), (b, d))


def triangle_split_reduction(g: Graph) -> ProblemInstance:
    """3-coloring of g to 3-coloring of a triangle split graph.

    Edge i = (u, v), u < v, becomes a triangle a_i b_i c_i with u-a_i, v-b_i, v-c_i;
    the original edges are dropped.
    """
    edges: list[Edge] = []
    tris = []
    for i, (u, v) in enumerate(g.sorted_edges()):
        a, b, c = (g.n + 3 * i + k for k in (1, 2, 3))
        tris.append((a, b, c))
        edges.extend([(a, b), (b, c), (a, c), (u, a), (v, b), (v, c)])
    out = Graph(g.n + 3 * g.m, frozenset(edges))
    return ProblemInstance(
        kind=TRIANGLE_SPLIT,
        graph=out,
        target=TRIANGLE_SPLIT_TARGET,
        partition=TrianglePartition(frozenset(g.vertices), tuple(tris)),
    )
