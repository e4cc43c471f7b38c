from __future__ import annotations

from itertools import chain, combinations
from typing import Iterable, Iterator

from crosscomp.graph import CycleMode, bipartite_on, forest_on, induced_subgraph, is_clique
from crosscomp.instance import (
    CHROMATIC_BY_VC,
    CLIQUE_BY_VC,
    FVS_BY_CLIQUE_DELETION,
    OCT_BY_CLIQUE_DELETION,
    ProblemInstance,
    Verdict,
    WitnessInvalidError,
    validate_witness,
)


def _require(inst: ProblemInstance, *kinds: str) -> frozenset[int]:
    if inst.kind not in kinds:
        raise WitnessInvalidError([f"expected kind {' or '.join(kinds)}, got {inst.kind}"])
    violations = validate_witness(inst)
    if violations:
        raise WitnessInvalidError(violations)
    assert inst.witness is not None
    return inst.witness


def _subsets(items: Iterable[int]) -> Iterator[tuple[int, ...]]:
    pool = sorted(items)
    return chain.from_iterable(combinations(pool, r) for r in range(len(pool) + 1))


def fpt_clique_by_vc(inst: ProblemInstance) -> Verdict:
    """Clique parameterized by vertex cover: enumerate C subset of Z.

    V - Z is independent, so a clique holds at most one vertex outside Z.
    """
    z = _require(inst, CLIQUE_BY_VC)
    g = inst.graph
    outside = [v for v in g.vertices if v not in z]
    best: tuple[int, ...] = ()
    for c in _subsets(z):
        if len(c) + 1 <= len(best) or not is_clique(g, c):
            continue
        ext = next((v for v in outside if all(g.has_edge(v, u) for u in c)), None)
        found = tuple(sorted((*c, ext))) if ext is not None else c
        if len(found) > len(best):
            best = found
    return Verdict(len(best) >= inst.target, frozenset(best), len(best))


def turing_kernel_clique_by_vc(inst: ProblemInstance) -> list[ProblemInstance]:
    """[G[Z]] followed by G[Z + v] for every v outside Z in ascending order."""
    z = _require(inst, CLIQUE_BY_VC)
    g = inst.graph
    out = []
    for extra in [()] + [(v,) for v in g.vertices if v not in z]:
        sub, relabel = induced_subgraph(g, (*z, *extra))
        out.append(
            ProblemInstance(
                kind=CLIQUE_BY_VC,
                graph=sub,
                target=inst.target,
                witness=frozenset(relabel[v] for v in z),
            )
        )
    return out


def fpt_chromatic_by_vc(inst: ProblemInstance) -> Verdict:
    """Chromatic number parameterized by vertex cover: try colorings of G[Z], extend greedily."""
    z = _require(inst, CHROMATIC_BY_VC)
    g = inst.graph
    ell = inst.target
    zs = sorted(z)
    outside = [v for v in g.vertices if v not in z]

    if ell >= len(zs) + 1:
        coloring = {v: i for i, v in enumerate(zs, start=1)}
        coloring.update({v: len(zs) + 1 for v in outside})
        return Verdict(True, coloring, None)

    colors: dict[int, int] = {}

    def extend() -> dict[int, int] | None:
        full = dict(colors)
        for v in outside:
            used = {colors[u] for u in g.neighbors(v)}
            free = next((c for c in range(1, ell + 1) if c not in used), None)
            if free is None:
                return None
            full[v] = free
        return full

    # color classes are unlabeled: a vertex may open at most one new color
    def assign(i: int, used: int) -> dict[int, int] | None:
        if i == len(zs):
            return extend()
        v = zs[i]
        for c in range(1, min(used + 1, ell) + 1):
            if any(colors.get(u) == c for u in g.neighbors(v)):
                continue
            colors[v] = c
            found = assign(i + 1, max(used, c))
            if found is not None:
                return found
            del colors[v]
        return None

    coloring = assign(0, 0)
    return Verdict(coloring is not None, coloring, None)


def fpt_transversal_by_clique_deletion(inst: ProblemInstance, mode: CycleMode) -> Verdict:
    """FVS/OCT parameterized by clique deletion distance.

    A transversal avoids at most two vertices of the clique V - Z, so guess the
    avoided pair and the part inside Z.
    """
    expected = FVS_BY_CLIQUE_DELETION if mode == "all" else OCT_BY_CLIQUE_DELETION
    z = _require(inst, expected)
    g = inst.graph
    adj = g.adjacency
    clique = [v for v in g.vertices if v not in z]
    acyclic = forest_on if mode == "all" else bipartite_on

    best: frozenset[int] | None = None
    for size in range(3):
        for avoided in combinations(clique, size):
            base = frozenset(clique) - frozenset(avoided)
            for s_z in _subsets(z):
                cand = base | frozenset(s_z)
                if best is not None and len(cand) >= len(best):
                    continue
                if acyclic(adj, frozenset(g.vertices) - cand):
                    best = cand
    assert best is not None
    return Verdict(len(best) <= inst.target, best, len(best))
