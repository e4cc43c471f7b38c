from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal, Mapping, Sequence

CycleMode = Literal["all", "odd"]
VertexSet = frozenset[int]
Edge = tuple[int, int]


class GraphError(ValueError):
    pass


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n.

    `edges` may be given as any iterable of pairs; it is normalised to a
    frozenset of (min, max) tuples, so equal graphs compare and hash equal.
    """

    n: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count: {self.n}")
        normalized: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {u}-{v} outside 1..{self.n}")
            normalized.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    @classmethod
    def edgeless(cls, t: int) -> Graph:
        return cls(t)

    @classmethod
    def complete(cls, t: int) -> Graph:
        return cls(t, frozenset(combinations(range(1, t + 1), 2)))

    @classmethod
    def path(cls, t: int) -> Graph:
        return cls(t, frozenset((i, i + 1) for i in range(1, t)))

    @classmethod
    def cycle(cls, t: int) -> Graph:
        if t < 3:
            raise GraphError(f"a cycle needs at least 3 vertices, got {t}")
        return cls(t, frozenset([(i, i + 1) for i in range(1, t)] + [(1, t)]))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        # index 0 is unused so that adjacency[v] works for v in 1..n
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def check_vertices(g: Graph, s: Iterable[int], op: str) -> VertexSet:
    members = frozenset(s)
    bad = sorted(v for v in members if not 1 <= v <= g.n)
    if bad:
        raise GraphError(f"{op}: vertices {bad} outside 1..{g.n}")
    return members


def neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    members = frozenset(s)
    out: set[int] = set()
    for v in members:
        out |= g.adjacency[v]
    return frozenset(out - members)


def complement(g: Graph) -> Graph:
    return Graph(g.n, frozenset(e for e in combinations(g.vertices, 2) if e not in g.edges))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    members = check_vertices(g, s, "induced_subgraph")
    relabel = {v: i for i, v in enumerate(sorted(members), start=1)}
    edges = frozenset((relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel)
    return Graph(len(relabel), edges), relabel


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    removed = check_vertices(g, s, "delete_vertices")
    return induced_subgraph(g, (v for v in g.vertices if v not in removed))


def identify(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Replace `s` by one new vertex adjacent to N_g(s); the new vertex gets id n'."""
    members = check_vertices(g, s, "identify")
    if not members:
        raise GraphError("identify: the identified set must be nonempty")
    rest, relabel = delete_vertices(g, members)
    merged = rest.n + 1
    edges = set(rest.edges)
    edges.update((relabel[u], merged) for u in neighborhood(g, members))
    mapping = dict(relabel)
    mapping.update({v: merged for v in members})
    return Graph(merged, frozenset(edges)), mapping


def disjoint_union(gs: Sequence[Graph]) -> tuple[Graph, list[dict[int, int]]]:
    offset = 0
    edges: set[Edge] = set()
    maps: list[dict[int, int]] = []
    for h in gs:
        maps.append({v: v + offset for v in h.vertices})
        edges.update((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, frozenset(edges)), maps


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    members = sorted(check_vertices(g, s, "is_clique"))
    return all(g.has_edge(u, v) for u, v in combinations(members, 2))


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    members = sorted(check_vertices(g, s, "is_independent"))
    return not any(g.has_edge(u, v) for u, v in combinations(members, 2))


def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    members = check_vertices(g, s, "is_vertex_cover")
    return all(u in members or v in members for u, v in g.edges)


def is_proper_coloring(g: Graph, coloring: Mapping[int, int]) -> bool:
    if any(v not in coloring for v in g.vertices):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    adj = g.adjacency
    out = []
    for u, v in g.sorted_edges():
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                out.append((u, v, w))
    return out


# ----------------------------
# traversal helpers over a live vertex subset
# (the branch-and-bound oracles call these directly)
# ----------------------------

def forest_on(adj: Sequence[frozenset[int]], alive: frozenset[int]) -> bool:
    seen: set[int] = set()
    for root in alive:
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, 0)]
        while stack:
            v, parent = stack.pop()
            for w in adj[v]:
                if w not in alive or w == parent:
                    continue
                if w in seen:
                    return False
                seen.add(w)
                stack.append((w, v))
    return True


def bipartite_on(adj: Sequence[frozenset[int]], alive: frozenset[int]) -> bool:
    side: dict[int, int] = {}
    for root in alive:
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in alive:
                    continue
                if w not in side:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def _girth_on(adj: Sequence[frozenset[int]], alive: frozenset[int], mode: CycleMode) -> int | None:
    best: int | None = None
    for root in sorted(alive):
        dist = {root: 0}
        parent = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in adj[u]:
                if w not in alive:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                    continue
                if mode == "all":
                    if parent[u] == w:
                        continue
                    cand = dist[u] + dist[w] + 1
                elif dist[w] == dist[u]:
                    cand = 2 * dist[u] + 1
                else:
                    continue
                if best is None or cand < best:
                    best = cand
    return best


def _cycle_of_length(
    adj: Sequence[frozenset[int]], alive: frozenset[int], start: int, length: int
) -> list[int] | None:
    sub = frozenset(v for v in alive if v >= start)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in sub and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)

    path = [start]
    on_path = {start}

    def extend() -> bool:
        last = path[-1]
        if len(path) == length:
            return start in adj[last]
        budget = length - len(path)
        for w in sorted(adj[last] & sub):
            if w in on_path or w not in dist or dist[w] > budget:
                continue
            path.append(w)
            on_path.add(w)
            if extend():
                return True
            path.pop()
            on_path.discard(w)
        return False

    return list(path) if extend() else None


def shortest_cycle_on(
    adj: Sequence[frozenset[int]], alive: frozenset[int], mode: CycleMode
) -> list[int] | None:
    if mode == "all" and forest_on(adj, alive):
        return None
    if mode == "odd" and bipartite_on(adj, alive):
        return None
    length = _girth_on(adj, alive, mode)
    if length is None:
        return None
    for start in sorted(alive):
        found = _cycle_of_length(adj, alive, start, length)
        if found is not None:
            return found
    return None


def is_forest(g: Graph) -> bool:
    return forest_on(g.adjacency, frozenset(g.vertices))


def is_bipartite(g: Graph) -> bool:
    return bipartite_on(g.adjacency, frozenset(g.vertices))


def find_violating_cycle(g: Graph, mode: CycleMode = "all") -> list[int] | None:
    """Shortest (odd) cycle as a vertex sequence starting at its minimum vertex.

    Ties go to the lexicographically smallest sequence.
    """
    if mode not in ("all", "odd"):
        raise GraphError(f"unknown cycle mode: {mode}")
    return shortest_cycle_on(g.adjacency, frozenset(g.vertices), mode)


# ----------------------------
# isomorphism
# ----------------------------

def _refine_colors(gs: Sequence[Graph]) -> list[dict[int, int]]:
    colors = [{v: g.degree(v) for v in g.vertices} for g in gs]
    classes = -1
    while True:
        signatures = [
            {v: (col[v], tuple(sorted(col[w] for w in g.adjacency[v]))) for v in g.vertices}
            for g, col in zip(gs, colors)
        ]
        palette = {sig: i for i, sig in enumerate(sorted({s for sig in signatures for s in sig.values()}))}
        colors = [{v: palette[sig[v]] for v in sig} for sig in signatures]
        if len(palette) == classes:
            return colors
        classes = len(palette)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return False
    cg, ch = _refine_colors([g, h])
    if sorted(cg.values()) != sorted(ch.values()):
        return False

    by_color: dict[int, list[int]] = {}
    for v in h.vertices:
        by_color.setdefault(ch[v], []).append(v)

    # smallest classes first, then prefer vertices adjacent to already ordered ones
    order: list[int] = []
    remaining = set(g.vertices)
    while remaining:
        placed = set(order)
        nxt = min(
            remaining,
            key=lambda v: (-len(g.adjacency[v] & placed), len(by_color[cg[v]]), -g.degree(v), v),
        )
        order.append(nxt)
        remaining.discard(nxt)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def place(idx: int) -> bool:
        if idx == len(order):
            return True
        u = order[idx]
        for x in by_color[cg[u]]:
            if x in used:
                continue
            if any(g.has_edge(u, w) != h.has_edge(x, y) for w, y in mapping.items()):
                continue
            mapping[u] = x
            used.add(x)
            if place(idx + 1):
                return True
            del mapping[u]
            used.discard(x)
        return False

    return place(0)
