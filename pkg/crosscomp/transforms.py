from __future__ import annotations

from crosscomp.gadgets import inflate, triangle_split_reduction
from crosscomp.graph import CycleMode, Graph, VertexSet, complement, delete_vertices, induced_subgraph, is_clique
from crosscomp.instance import (
    CLIQUE_BY_VC,
    FVS_BY_CLIQUE_DELETION,
    IS_BY_CLIQUE_DELETION,
    OCT_BY_CLIQUE_DELETION,
    VC_BY_CLIQUE_DELETION,
    VERTEX_COVER,
    WEIGHTED_FVS_BY_VC,
    ProblemInstance,
    WeightAssignment,
    WitnessInvalidError,
    validate_witness,
)

RULES = ("lemma2", "inflate", "cor4-is", "cor4-vc", "thm9-fvs", "thm9-oct")


class TransformError(ValueError):
    def __init__(self, rule: str, reason: str) -> None:
        self.rule = rule
        self.reason = reason
        super().__init__(f"{rule}: {reason}")


def _require(inst: ProblemInstance, kind: str, rule: str) -> VertexSet:
    if inst.kind != kind:
        raise TransformError(rule, f"expected kind {kind}, got {inst.kind}")
    violations = validate_witness(inst)
    if violations:
        raise WitnessInvalidError(violations)
    assert inst.witness is not None
    return inst.witness


def complement_chain(inst: ProblemInstance) -> tuple[ProblemInstance, ProblemInstance]:
    """Clique by vertex cover to independent set and vertex cover by clique deletion.

    G - Z is edgeless, so the complement minus Z is complete.
    """
    z = _require(inst, CLIQUE_BY_VC, "cor4")
    n = inst.graph.n
    if inst.target > n:
        raise TransformError("cor4", f"target {inst.target} exceeds {n} vertices")
    flipped = complement(inst.graph)
    indep = ProblemInstance(IS_BY_CLIQUE_DELETION, flipped, inst.target, witness=z)
    cover = ProblemInstance(VC_BY_CLIQUE_DELETION, flipped, n - inst.target, witness=z)
    return indep, cover


def clique_cover(g: Graph, z: VertexSet) -> list[VertexSet]:
    """Cliques covering every edge of g, given that g - z is a clique.

    Edges inside z, the clique V - z, and for every v in z the set v + (N(v) - z).
    """
    rest, _ = delete_vertices(g, z)
    if not is_clique(rest, rest.vertices):
        raise WitnessInvalidError(["G - Z is not a clique"])
    inner, relabel = induced_subgraph(g, z)
    back = {new: old for old, new in relabel.items()}
    family: list[VertexSet] = [frozenset((back[u], back[v])) for u, v in inner.sorted_edges()]
    outside = frozenset(v for v in g.vertices if v not in z)
    if outside:
        family.append(outside)
    family.extend(frozenset({v} | (g.neighbors(v) - z)) for v in sorted(z))
    return family


def apexify(inst: ProblemInstance, mode: CycleMode) -> ProblemInstance:
    """Vertex cover by clique deletion to FVS/OCT by clique deletion.

    One apex per clique-cover member, adjacent to exactly that member.
    """
    z = _require(inst, VC_BY_CLIQUE_DELETION, "thm9")
    g = inst.graph
    family = clique_cover(g, z)
    edges = set(g.edges)
    apexes = []
    for k, member in enumerate(family, start=1):
        apex = g.n + k
        apexes.append(apex)
        edges.update((v, apex) for v in member)
    kind = FVS_BY_CLIQUE_DELETION if mode == "all" else OCT_BY_CLIQUE_DELETION
    return ProblemInstance(kind, Graph(g.n + len(family), frozenset(edges)), inst.target, witness=z | frozenset(apexes))


def inflate_instance(inst: ProblemInstance) -> ProblemInstance:
    """Vertex cover (G, l) to unit-weight FVS on the inflation, with the scaffold as vertex cover."""
    if inst.kind != VERTEX_COVER:
        raise TransformError("inflate", f"expected kind {VERTEX_COVER}, got {inst.kind}")
    res = inflate(inst.graph)
    scaffold = frozenset(v for unit in res.scaffold for v in unit.vertices)
    return ProblemInstance(
        WEIGHTED_FVS_BY_VC,
        res.graph,
        inst.target,
        witness=scaffold,
        weights=WeightAssignment.unit(res.graph.n),
    )


def apply_rule(rule: str, inst: ProblemInstance) -> ProblemInstance:
    if rule == "lemma2":
        return triangle_split_reduction(inst.graph)
    if rule == "inflate":
        return inflate_instance(inst)
    if rule == "cor4-is":
        return complement_chain(inst)[0]
    if rule == "cor4-vc":
        return complement_chain(inst)[1]
    if rule == "thm9-fvs":
        return apexify(inst, "all")
    if rule == "thm9-oct":
        return apexify(inst, "odd")
    raise TransformError(rule, f"unknown rule; choose one of {', '.join(RULES)}")
