from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping

from crosscomp.graph import Graph, VertexSet, delete_vertices, is_clique, is_independent, is_vertex_cover

CLIQUE = "clique"
VERTEX_COVER = "vertex-cover"
TRIANGLE_SPLIT = "triangle-split-3-coloring"
CLIQUE_BY_VC = "clique-by-vc"
VC_BY_CLIQUE_DELETION = "vc-by-clique-deletion"
IS_BY_CLIQUE_DELETION = "is-by-clique-deletion"
CHROMATIC_BY_VC = "chromatic-by-vc"
FVS_BY_CLIQUE_DELETION = "fvs-by-clique-deletion"
OCT_BY_CLIQUE_DELETION = "oct-by-clique-deletion"
WEIGHTED_FVS_BY_VC = "weighted-fvs-by-vc"
WEIGHTED_OCT_BY_VC = "weighted-oct-by-vc"

KINDS = (
    CLIQUE,
    VERTEX_COVER,
    TRIANGLE_SPLIT,
    CLIQUE_BY_VC,
    VC_BY_CLIQUE_DELETION,
    IS_BY_CLIQUE_DELETION,
    CHROMATIC_BY_VC,
    FVS_BY_CLIQUE_DELETION,
    OCT_BY_CLIQUE_DELETION,
    WEIGHTED_FVS_BY_VC,
    WEIGHTED_OCT_BY_VC,
)
BY_VC_KINDS = frozenset({CLIQUE_BY_VC, CHROMATIC_BY_VC, WEIGHTED_FVS_BY_VC, WEIGHTED_OCT_BY_VC})
BY_CLIQUE_DELETION_KINDS = frozenset(
    {VC_BY_CLIQUE_DELETION, IS_BY_CLIQUE_DELETION, FVS_BY_CLIQUE_DELETION, OCT_BY_CLIQUE_DELETION}
)
WITNESS_KINDS = BY_VC_KINDS | BY_CLIQUE_DELETION_KINDS
WEIGHTED_KINDS = frozenset({WEIGHTED_FVS_BY_VC, WEIGHTED_OCT_BY_VC})

TRIANGLE_SPLIT_TARGET = 3


class ParseError(ValueError):
    def __init__(self, line: int, reason: str) -> None:
        self.line = int(line)
        self.reason = reason
        super().__init__(f"line {self.line}: {reason}")


class WitnessInvalidError(ValueError):
    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class WeightAssignment:
    values: tuple[int, ...]

    @classmethod
    def unit(cls, n: int) -> WeightAssignment:
        return cls((1,) * n)

    @classmethod
    def from_mapping(cls, n: int, weights: Mapping[int, int]) -> WeightAssignment:
        return cls(tuple(int(weights[v]) for v in range(1, n + 1)))

    def of(self, v: int) -> int:
        return self.values[v - 1]

    def total(self, s: Iterable[int]) -> int:
        return sum(self.values[v - 1] for v in s)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class TrianglePartition:
    x: VertexSet
    triangles: tuple[tuple[int, int, int], ...]

    @property
    def y(self) -> VertexSet:
        return frozenset(v for tri in self.triangles for v in tri)


@dataclass(frozen=True)
class ProblemInstance:
    kind: str
    graph: Graph
    target: int
    witness: VertexSet | None = None
    partition: TrianglePartition | None = None
    weights: WeightAssignment | None = None

    @property
    def parameter(self) -> int | None:
        return None if self.witness is None else len(self.witness)

    def with_kind(self, kind: str) -> ProblemInstance:
        return replace(self, kind=kind)


@dataclass(frozen=True)
class Verdict:
    answer: bool
    witness: VertexSet | dict[int, int] | None = None
    value: int | None = None

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"


def validate_witness(inst: ProblemInstance) -> list[str]:
    """Check the structural invariants of an instance; an empty list means ok."""
    errors: list[str] = []
    g = inst.graph
    kind = inst.kind
    if kind not in KINDS:
        return [f"unknown problem kind: {kind}"]
    if inst.target < 0:
        errors.append(f"target must be non-negative, got {inst.target}")

    z = inst.witness
    if z is not None:
        bad = sorted(v for v in z if not 1 <= v <= g.n)
        if bad:
            errors.append(f"witness vertices {bad} outside 1..{g.n}")
            z = None
    if kind in WITNESS_KINDS and inst.witness is None:
        errors.append(f"kind {kind} requires a witness set Z")
    if kind not in WITNESS_KINDS and inst.witness is not None:
        errors.append(f"kind {kind} takes no witness set")
    if z is not None and kind in BY_VC_KINDS and not is_vertex_cover(g, z):
        errors.append("Z is not a vertex cover")
    if z is not None and kind in BY_CLIQUE_DELETION_KINDS:
        rest, _ = delete_vertices(g, z)
        if not is_clique(rest, rest.vertices):
            errors.append("G - Z is not a clique")

    if kind == TRIANGLE_SPLIT:
        errors.extend(_triangle_split_violations(inst))
    elif inst.partition is not None:
        errors.append(f"kind {kind} takes no triangle partition")

    w = inst.weights
    if kind in WEIGHTED_KINDS:
        if w is None:
            errors.append(f"kind {kind} requires one weight per vertex")
        elif len(w) != g.n:
            errors.append(f"expected {g.n} weights, got {len(w)}")
        elif any(x < 1 for x in w.values):
            errors.append("weights must be positive integers")
    elif w is not None:
        errors.append(f"kind {kind} takes no weights")
    return errors


def _triangle_split_violations(inst: ProblemInstance) -> list[str]:
    g = inst.graph
    part = inst.partition
    if part is None:
        return ["triangle-split instance requires part_x and triangle lines"]
    errors: list[str] = []
    if inst.target != TRIANGLE_SPLIT_TARGET:
        errors.append(f"triangle-split target must be {TRIANGLE_SPLIT_TARGET}, got {inst.target}")
    listed = [v for tri in part.triangles for v in tri]
    if len(listed) != len(set(listed)):
        errors.append("triangles are not vertex-disjoint")
    y = part.y
    everything = part.x | y
    if any(not 1 <= v <= g.n for v in everything):
        errors.append("partition refers to vertices outside the graph")
        return errors
    if part.x & y:
        errors.append("X and Y overlap")
    if everything != frozenset(g.vertices):
        errors.append("X and Y do not cover every vertex")
    if not is_independent(g, part.x):
        errors.append("G[X] is not edgeless")
    expected = set()
    for a, b, c in part.triangles:
        expected.update({tuple(sorted((a, b))), tuple(sorted((b, c))), tuple(sorted((a, c)))})
    inside = {e for e in g.edges if e[0] in y and e[1] in y}
    if inside != expected:
        errors.append("G[Y] is not exactly the listed triangles")
    return errors


# ----------------------------
# text format
# ----------------------------

def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"not an integer: {token!r}") from None


def parse_instance(text: str) -> ProblemInstance:
    kind: str | None = None
    n: int | None = None
    target: int | None = None
    witness: list[int] | None = None
    part_x: list[int] | None = None
    vertex_lists: list[tuple[int, str, list[int]]] = []
    edges: list[tuple[int, int, int]] = []
    tris: list[tuple[int, int, int]] = []
    weights: dict[int, int] = {}
    seen_once: set[str] = set()
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, *args = body.split()
        if head in {"problem", "vertices", "target", "witness", "part_x"}:
            if head in seen_once:
                raise ParseError(lineno, f"duplicate '{head}' directive")
            seen_once.add(head)

        if head == "problem":
            if len(args) != 1 or args[0] not in KINDS:
                raise ParseError(lineno, f"unknown problem kind: {' '.join(args)!r}")
            kind = args[0]
        elif head == "vertices":
            if len(args) != 1:
                raise ParseError(lineno, "vertices takes one integer")
            n = _int(args[0], lineno)
            if n < 0:
                raise ParseError(lineno, "vertex count must be non-negative")
        elif head == "edge":
            if len(args) != 2:
                raise ParseError(lineno, "edge takes two vertices")
            u, v = _int(args[0], lineno), _int(args[1], lineno)
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            edges.append((lineno, u, v))
        elif head == "target":
            if len(args) != 1:
                raise ParseError(lineno, "target takes one integer")
            target = _int(args[0], lineno)
            if target < 0:
                raise ParseError(lineno, "target must be non-negative")
        elif head == "witness":
            witness = [_int(a, lineno) for a in args]
            if len(witness) != len(set(witness)):
                raise ParseError(lineno, "repeated vertex in witness")
            vertex_lists.append((lineno, head, witness))
        elif head == "part_x":
            part_x = [_int(a, lineno) for a in args]
            if len(part_x) != len(set(part_x)):
                raise ParseError(lineno, "repeated vertex in part_x")
            vertex_lists.append((lineno, head, part_x))
        elif head == "triangle":
            if len(args) != 3:
                raise ParseError(lineno, "triangle takes three vertices")
            a, b, c = (_int(x, lineno) for x in args)
            if len({a, b, c}) != 3:
                raise ParseError(lineno, "triangle vertices must be distinct")
            tris.append((a, b, c))
            vertex_lists.append((lineno, head, [a, b, c]))
        elif head == "weight":
            if len(args) != 2:
                raise ParseError(lineno, "weight takes a vertex and a value")
            v, w = _int(args[0], lineno), _int(args[1], lineno)
            if v in weights:
                raise ParseError(lineno, f"duplicate weight for vertex {v}")
            weights[v] = w
        else:
            raise ParseError(lineno, f"unknown directive: {head!r}")

    if kind is None:
        raise ParseError(last_line, "missing 'problem' directive")
    if n is None:
        raise ParseError(last_line, "missing 'vertices' directive")

    seen_edges: set[tuple[int, int]] = set()
    for lineno, u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(lineno, f"edge {u} {v} outside 1..{n}")
        key = (min(u, v), max(u, v))
        if key in seen_edges:
            raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen_edges.add(key)
    for lineno, head, members in vertex_lists:
        stray = sorted(v for v in members if not 1 <= v <= n)
        if stray:
            raise ParseError(lineno, f"{head} vertices {stray} outside 1..{n}")

    if target is None:
        if kind != TRIANGLE_SPLIT:
            raise ParseError(last_line, "missing 'target' directive")
        target = TRIANGLE_SPLIT_TARGET
    elif kind == TRIANGLE_SPLIT and target != TRIANGLE_SPLIT_TARGET:
        raise ParseError(last_line, f"triangle-split target must be {TRIANGLE_SPLIT_TARGET}")

    weight_assignment = None
    if weights:
        stray = sorted(v for v in weights if not 1 <= v <= n)
        if stray:
            raise ParseError(last_line, f"weights for vertices {stray} outside 1..{n}")
        missing = [v for v in range(1, n + 1) if v not in weights]
        if missing:
            raise ParseError(last_line, f"missing weight for vertex {missing[0]}")
        weight_assignment = WeightAssignment.from_mapping(n, weights)
    elif kind in WEIGHTED_KINDS and n > 0:
        raise ParseError(last_line, "missing weight for vertex 1")
    elif kind in WEIGHTED_KINDS:
        weight_assignment = WeightAssignment(())

    partition = None
    if part_x is not None or tris:
        partition = TrianglePartition(frozenset(part_x or ()), tuple(tris))

    inst = ProblemInstance(
        kind=kind,
        graph=Graph(n, frozenset(seen_edges)),
        target=target,
        witness=None if witness is None else frozenset(witness),
        partition=partition,
        weights=weight_assignment,
    )
    violations = validate_witness(inst)
    if violations:
        raise WitnessInvalidError(violations)
    return inst


def serialize_instance(inst: ProblemInstance) -> str:
    lines = [f"problem {inst.kind}", f"vertices {inst.graph.n}"]
    lines.extend(f"edge {u} {v}" for u, v in inst.graph.sorted_edges())
    lines.append(f"target {inst.target}")
    if inst.witness is not None:
        lines.append(" ".join(["witness", *(str(v) for v in sorted(inst.witness))]))
    if inst.partition is not None:
        lines.append(" ".join(["part_x", *(str(v) for v in sorted(inst.partition.x))]))
        lines.extend(f"triangle {a} {b} {c}" for a, b, c in inst.partition.triangles)
    if inst.weights is not None:
        lines.extend(f"weight {v} {w}" for v, w in enumerate(inst.weights.values, start=1))
    return "\n".join(lines) + "\n"


def read_instance(path: Path) -> ProblemInstance:
    return parse_instance(path.read_text(encoding="utf-8"))
