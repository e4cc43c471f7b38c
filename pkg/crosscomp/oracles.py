from __future__ import annotations

from typing import Mapping, Sequence

from crosscomp.graph import CycleMode, Graph, VertexSet, complement, shortest_cycle_on
from crosscomp.instance import (
    CHROMATIC_BY_VC,
    CLIQUE,
    CLIQUE_BY_VC,
    FVS_BY_CLIQUE_DELETION,
    IS_BY_CLIQUE_DELETION,
    OCT_BY_CLIQUE_DELETION,
    TRIANGLE_SPLIT,
    VC_BY_CLIQUE_DELETION,
    VERTEX_COVER,
    WEIGHTED_FVS_BY_VC,
    WEIGHTED_OCT_BY_VC,
    ProblemInstance,
    Verdict,
    WeightAssignment,
)

DEFAULT_LIMITS: dict[str, int] = {
    "clique": 60,
    "vertex_cover": 40,
    "chromatic": 45,
    "transversal": 40,
}

Adjacency = Sequence[frozenset[int]]


class OracleLimitError(RuntimeError):
    def __init__(self, oracle: str, n: int, limit: int) -> None:
        self.oracle = oracle
        self.n = int(n)
        self.limit = int(limit)
        super().__init__(f"{oracle} oracle refuses n={self.n} (limit={self.limit})")


def _guard(oracle: str, g: Graph, limit: int | None) -> None:
    cap = DEFAULT_LIMITS[oracle] if limit is None else limit
    if g.n > cap:
        raise OracleLimitError(oracle, g.n, cap)


# ----------------------------
# clique
# ----------------------------

def _greedy_color(adj: Adjacency, cand: frozenset[int]) -> tuple[list[int], list[int]]:
    """Sequential greedy coloring; bounds[i] is an upper bound on any clique within order[:i+1]."""
    order: list[int] = []
    bounds: list[int] = []
    uncolored = sorted(cand)
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        skipped: list[int] = []
        while available:
            v = available[0]
            order.append(v)
            bounds.append(color)
            keep = []
            for w in available[1:]:
                (skipped if w in adj[v] else keep).append(w)
            available = keep
        uncolored = sorted(skipped)
    return order, bounds


def _clique_number(adj: Adjacency, cand: frozenset[int]) -> int:
    best = 0

    def expand(size: int, pool: frozenset[int]) -> None:
        nonlocal best
        order, bounds = _greedy_color(adj, pool)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            nxt = pool & adj[v]
            if nxt:
                expand(size + 1, nxt)
            elif size + 1 > best:
                best = size + 1
            pool = pool - {v}

    expand(0, cand)
    return best


def max_clique(g: Graph, *, limit: int | None = None) -> tuple[int, VertexSet]:
    """Maximum clique size and the lexicographically least maximum clique."""
    _guard("clique", g, limit)
    adj = g.adjacency
    omega = _clique_number(adj, frozenset(g.vertices))
    chosen: list[int] = []
    pool = frozenset(g.vertices)
    for v in sorted(pool):
        if len(chosen) == omega:
            break
        if v not in pool:
            continue
        rest = frozenset(w for w in pool & adj[v] if w > v)
        if 1 + _clique_number(adj, rest) >= omega - len(chosen):
            chosen.append(v)
            pool = rest
    return omega, frozenset(chosen)


# ----------------------------
# vertex cover
# ----------------------------

def _matching_bound(adj: Adjacency, rest: frozenset[int]) -> int:
    matched: set[int] = set()
    size = 0
    for u in sorted(rest):
        if u in matched:
            continue
        for w in sorted(adj[u] & rest):
            if w not in matched:
                matched.update((u, w))
                size += 1
                break
    return size


def min_vertex_cover(g: Graph, *, limit: int | None = None) -> tuple[int, VertexSet]:
    _guard("vertex_cover", g, limit)
    adj = g.adjacency
    best = frozenset(v for v in g.vertices if adj[v])

    def search(chosen: frozenset[int], rest: frozenset[int]) -> None:
        nonlocal best
        live = [v for v in sorted(rest) if adj[v] & rest]
        if not live:
            if len(chosen) < len(best):
                best = chosen
            return
        if len(chosen) + _matching_bound(adj, rest) >= len(best):
            return
        # some endpoint of every uncovered edge at u is taken: u itself, or all of N(u)
        u = max(live, key=lambda v: (len(adj[v] & rest), -v))
        search(chosen | {u}, rest - {u})
        nbrs = adj[u] & rest
        search(chosen | nbrs, rest - nbrs - {u})

    search(frozenset(), frozenset(g.vertices))
    return len(best), best


# ----------------------------
# chromatic number
# ----------------------------

def _k_coloring(adj: Adjacency, n: int, k: int) -> dict[int, int] | None:
    colors: dict[int, int] = {}

    def most_saturated() -> int:
        best_v = 0
        best_key: tuple[int, int, int] | None = None
        for v in range(1, n + 1):
            if v in colors:
                continue
            sat = len({colors[w] for w in adj[v] if w in colors})
            key = (sat, len(adj[v]), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def backtrack(used: int) -> bool:
        if len(colors) == n:
            return True
        v = most_saturated()
        forbidden = {colors[w] for w in adj[v] if w in colors}
        # a fresh color is interchangeable with any other fresh color
        for c in range(1, min(used + 1, k) + 1):
            if c in forbidden:
                continue
            colors[v] = c
            if backtrack(max(used, c)):
                return True
            del colors[v]
        return False

    return dict(colors) if backtrack(0) else None


def chromatic_number(g: Graph, *, limit: int | None = None) -> tuple[int, dict[int, int]]:
    _guard("chromatic", g, limit)
    if g.n == 0:
        return 0, {}
    if g.m == 0:
        return 1, {v: 1 for v in g.vertices}
    adj = g.adjacency
    k = max(2, _clique_number(adj, frozenset(g.vertices)))
    while True:
        coloring = _k_coloring(adj, g.n, k)
        if coloring is not None:
            return k, coloring
        k += 1


# ----------------------------
# feedback vertex set / odd cycle transversal
# ----------------------------

def _strip_acyclic(adj: Adjacency, alive: frozenset[int]) -> frozenset[int]:
    """Drop vertices of degree <= 1 repeatedly; they lie on no cycle."""
    live = set(alive)
    queue = [v for v in live if len(adj[v] & live) <= 1]
    while queue:
        v = queue.pop()
        if v not in live:
            continue
        live.discard(v)
        for w in adj[v] & live:
            if len(adj[w] & live) <= 1:
                queue.append(w)
    return frozenset(live)


def min_transversal(
    g: Graph,
    mode: CycleMode,
    weights: WeightAssignment | None = None,
    *,
    limit: int | None = None,
) -> tuple[int, VertexSet]:
    """Minimum-weight vertex set meeting every cycle ("all") or every odd cycle ("odd")."""
    if mode not in ("all", "odd"):
        raise ValueError(f"unknown transversal mode: {mode}")
    _guard("transversal", g, limit)
    w = weights if weights is not None else WeightAssignment.unit(g.n)
    adj = g.adjacency
    best_weight = w.total(g.vertices) + 1
    best_set: frozenset[int] = frozenset(g.vertices)

    def search(alive: frozenset[int], kept: frozenset[int], deleted: frozenset[int], weight: int) -> None:
        nonlocal best_weight, best_set
        if weight >= best_weight:
            return
        alive = _strip_acyclic(adj, alive)
        cyc = shortest_cycle_on(adj, alive, mode)
        if cyc is None:
            best_weight, best_set = weight, deleted
            return
        # branch i deletes the i-th free vertex and keeps the earlier ones
        newly_kept: set[int] = set()
        for v in cyc:
            if v in kept:
                continue
            search(alive - {v}, kept | newly_kept, deleted | {v}, weight + w.of(v))
            newly_kept.add(v)

    search(frozenset(g.vertices), frozenset(), frozenset(), 0)
    return best_weight, best_set


# ----------------------------
# dispatch
# ----------------------------

def decide(inst: ProblemInstance, limits: Mapping[str, int] | None = None) -> Verdict:
    lim = dict(DEFAULT_LIMITS)
    lim.update(limits or {})
    g, ell = inst.graph, inst.target
    kind = inst.kind

    if kind in (CLIQUE, CLIQUE_BY_VC):
        size, clique = max_clique(g, limit=lim["clique"])
        return Verdict(size >= ell, clique, size)
    if kind == IS_BY_CLIQUE_DELETION:
        size, indep = max_clique(complement(g), limit=lim["clique"])
        return Verdict(size >= ell, indep, size)
    if kind in (VERTEX_COVER, VC_BY_CLIQUE_DELETION):
        size, cover = min_vertex_cover(g, limit=lim["vertex_cover"])
        return Verdict(size <= ell, cover, size)
    if kind in (TRIANGLE_SPLIT, CHROMATIC_BY_VC):
        chi, coloring = chromatic_number(g, limit=lim["chromatic"])
        return Verdict(chi <= ell, coloring, chi)
    if kind in (FVS_BY_CLIQUE_DELETION, OCT_BY_CLIQUE_DELETION, WEIGHTED_FVS_BY_VC, WEIGHTED_OCT_BY_VC):
        mode: CycleMode = "all" if kind in (FVS_BY_CLIQUE_DELETION, WEIGHTED_FVS_BY_VC) else "odd"
        total, hit = min_transversal(g, mode, inst.weights, limit=lim["transversal"])
        return Verdict(total <= ell, hit, total)
    raise ValueError(f"unknown problem kind: {kind}")
