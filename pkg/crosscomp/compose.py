"""OR-compositions of many small instances into one structurally parameterized instance.

Three constructions are provided:

  thm7        clique instances            -> clique parameterized by vertex cover
  thm8        triangle-split 3-coloring   -> chromatic number parameterized by vertex cover
  thm10-fvs   vertex cover instances      -> weighted FVS parameterized by vertex cover
  thm10-oct   vertex cover instances      -> weighted OCT parameterized by vertex cover

Inputs are first grouped into equivalence classes (same shape), then each
class is composed separately. Every composed instance is YES iff at least one
input of its class is YES.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Sequence, TypeVar

from crosscomp.artifact_writer import OutputValidationError
from crosscomp.gadgets import SCAFFOLD_SIZE, ScaffoldUnit, inflate, k4_in_a_box, scaffold_edges
from crosscomp.graph import CycleMode, Edge, Graph, are_isomorphic, induced_subgraph, is_independent
from crosscomp.instance import (
    CHROMATIC_BY_VC,
    CLIQUE,
    CLIQUE_BY_VC,
    TRIANGLE_SPLIT,
    VERTEX_COVER,
    WEIGHTED_FVS_BY_VC,
    WEIGHTED_OCT_BY_VC,
    ProblemInstance,
    WeightAssignment,
    validate_witness,
)

THM7 = "thm7"
THM8 = "thm8"
THM10_FVS = "thm10-fvs"
THM10_OCT = "thm10-oct"
CONSTRUCTIONS = (THM7, THM8, THM10_FVS, THM10_OCT)

SOURCE_KIND = {THM7: CLIQUE, THM8: TRIANGLE_SPLIT, THM10_FVS: VERTEX_COVER, THM10_OCT: VERTEX_COVER}
TARGET_KIND = {
    THM7: CLIQUE_BY_VC,
    THM8: CHROMATIC_BY_VC,
    THM10_FVS: WEIGHTED_FVS_BY_VC,
    THM10_OCT: WEIGHTED_OCT_BY_VC,
}

WELL_FORMED = "well-formed"
MALFORMED = "malformed"
TRIVIAL_YES = "trivial-yes"

T = TypeVar("T")


class ConstructionError(ValueError):
    def __init__(self, construction: str, reason: str) -> None:
        self.construction = construction
        self.reason = reason
        super().__init__(f"{construction}: {reason}")


@dataclass(frozen=True)
class EquivalenceClassKey:
    construction: str
    tag: str
    shape: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.tag != WELL_FORMED:
            return self.tag
        return f"{self.tag}({','.join(str(x) for x in self.shape)})"


@dataclass(frozen=True)
class IndexCode:
    bits: tuple[int, ...]

    def bit(self, j: int) -> int:
        """Bit j, 1-based, most significant first."""
        return self.bits[j - 1]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class CompositionAudit:
    construction: str
    class_key: EquivalenceClassKey
    t_raw: int
    t: int
    n: int
    m: int
    l_prime: int
    k_prime: int
    layout: dict[str, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def sidecar_text(self) -> str:
        rows = [
            ("construction", self.construction),
            ("class", str(self.class_key)),
            ("t_raw", self.t_raw),
            ("t", self.t),
            ("n", self.n),
            ("m", self.m),
            ("l_prime", self.l_prime),
            ("k_prime", self.k_prime),
        ]
        return "".join(f"{k}={v}\n" for k, v in rows)


@dataclass(frozen=True)
class CompositionReport:
    instance: ProblemInstance
    audit: CompositionAudit


# ----------------------------
# index codes and padding
# ----------------------------

def encode_index(i: int, length: int) -> IndexCode:
    """Binary expansion of i in `length` bits; i = 2**length maps to all zeros."""
    if length < 0 or not 1 <= i <= 2**length:
        raise ConstructionError("encode_index", f"index {i} outside 1..2^{length}")
    value = i % (2**length)
    return IndexCode(tuple((value >> (length - 1 - k)) & 1 for k in range(length)))


def decode_index(code: IndexCode) -> int:
    value = 0
    for b in code.bits:
        value = 2 * value + b
    return value if value else 2 ** len(code.bits)


def log2_exact(t: int, construction: str) -> int:
    if t < 1 or t & (t - 1):
        raise ConstructionError(construction, f"t={t} is not a power of two")
    return t.bit_length() - 1


def pad_to_power_of_two(items: Sequence[T]) -> list[T]:
    if not items:
        raise ConstructionError("pad", "cannot pad an empty list")
    out = list(items)
    size = 1
    while size < len(out):
        size *= 2
    out.extend([items[0]] * (size - len(out)))
    return out


# ----------------------------
# partitioning
# ----------------------------

def class_key(inst: ProblemInstance, construction: str) -> EquivalenceClassKey:
    g, ell = inst.graph, inst.target
    if construction == THM7:
        if ell > g.n:
            return EquivalenceClassKey(construction, MALFORMED)
        return EquivalenceClassKey(construction, WELL_FORMED, (g.n, ell))
    if construction == THM8:
        part = inst.partition
        assert part is not None
        return EquivalenceClassKey(construction, WELL_FORMED, (len(part.x), len(part.triangles)))
    if construction in (THM10_FVS, THM10_OCT):
        if ell >= g.n:
            return EquivalenceClassKey(construction, TRIVIAL_YES)
        return EquivalenceClassKey(construction, WELL_FORMED, (g.n, g.m, ell))
    raise ConstructionError(construction, "unknown construction")


def partition_indices(instances: Sequence[ProblemInstance], construction: str) -> dict[EquivalenceClassKey, list[int]]:
    """Group input positions by class key, keeping first-appearance order."""
    if construction not in SOURCE_KIND:
        raise ConstructionError(construction, "unknown construction")
    expected = SOURCE_KIND[construction]
    groups: dict[EquivalenceClassKey, list[int]] = {}
    for idx, inst in enumerate(instances):
        if inst.kind != expected:
            raise ConstructionError(construction, f"input {idx + 1} has kind {inst.kind}, expected {expected}")
        groups.setdefault(class_key(inst, construction), []).append(idx)
    return groups


def partition_instances(
    instances: Sequence[ProblemInstance], construction: str
) -> dict[EquivalenceClassKey, list[ProblemInstance]]:
    return {
        key: [instances[i] for i in idxs]
        for key, idxs in partition_indices(instances, construction).items()
    }


def _shared_key(group: Sequence[ProblemInstance], construction: str) -> EquivalenceClassKey:
    if not group:
        raise ConstructionError(construction, "empty input group")
    keys = {class_key(inst, construction) for inst in group}
    if len(keys) != 1:
        raise ConstructionError(construction, f"inputs span {len(keys)} classes")
    (key,) = keys
    if key.tag != WELL_FORMED:
        raise ConstructionError(construction, f"class {key} has no composition")
    if any(inst.kind != SOURCE_KIND[construction] for inst in group):
        raise ConstructionError(construction, f"inputs must be of kind {SOURCE_KIND[construction]}")
    return key


# ----------------------------
# constant instances
# ----------------------------

def canonical_instance(kind: str, answer: bool) -> ProblemInstance:
    if kind == CLIQUE_BY_VC:
        return ProblemInstance(kind, Graph(1), 1 if answer else 2, witness=frozenset())
    if kind == CHROMATIC_BY_VC:
        return ProblemInstance(kind, Graph.complete(2), 2 if answer else 1, witness=frozenset({1}))
    if kind in (WEIGHTED_FVS_BY_VC, WEIGHTED_OCT_BY_VC):
        if answer:
            return ProblemInstance(kind, Graph(1), 0, witness=frozenset(), weights=WeightAssignment.unit(1))
        return ProblemInstance(
            kind, Graph.complete(3), 0, witness=frozenset({1, 2}), weights=WeightAssignment.unit(3)
        )
    raise ConstructionError("canonical", f"no constant instance for kind {kind}")


def _constant_report(key: EquivalenceClassKey, answer: bool, t_raw: int) -> CompositionReport:
    inst = canonical_instance(TARGET_KIND[key.construction], answer)
    audit = CompositionAudit(
        construction=key.construction,
        class_key=key,
        t_raw=t_raw,
        t=t_raw,
        n=inst.graph.n,
        m=inst.graph.m,
        l_prime=inst.target,
        k_prime=len(inst.witness or ()),
    )
    return CompositionReport(inst, audit)


def _block(start: int, size: int) -> tuple[int, ...]:
    return tuple(range(start + 1, start + size + 1))


# ----------------------------
# clique -> clique by vertex cover
# ----------------------------

def _d_vertex_sees_column(variant: int, p: int, q: int, j: int) -> bool:
    """Adjacency of w_{p,q} (0), w_{p,q^} (1), w_{p^,q} (2) to the column v_{.,j}."""
    if variant == 0:
        return True
    if variant == 1:
        return j != q
    return j != p


def compose_clique(group: Sequence[ProblemInstance]) -> CompositionReport:
    key = _shared_key(group, THM7)
    n, ell = key.shape
    t = len(group)
    pairs = list(combinations(range(1, n + 1), 2))
    c_size = ell * n
    d_size = 3 * len(pairs)

    def v_id(r: int, j: int) -> int:
        return (r - 1) * n + j

    def w_id(s: int, variant: int) -> int:
        return c_size + 3 * s + variant + 1

    cells = list(product(range(1, ell + 1), range(1, n + 1)))
    edges: list[Edge] = []
    for (r1, j1), (r2, j2) in combinations(cells, 2):
        if r1 != r2 and j1 != j2:
            edges.append((v_id(r1, j1), v_id(r2, j2)))

    for s, (p, q) in enumerate(pairs):
        for variant in range(3):
            edges.extend(
                (w_id(s, variant), v_id(r, j)) for r, j in cells if _d_vertex_sees_column(variant, p, q, j)
            )
    for s1, s2 in combinations(range(len(pairs)), 2):
        edges.extend((w_id(s1, a), w_id(s2, b)) for a in range(3) for b in range(3))

    for i, inst in enumerate(group, start=1):
        u = c_size + d_size + i
        edges.extend((u, v_id(r, j)) for r, j in cells)
        for s, (p, q) in enumerate(pairs):
            if inst.graph.has_edge(p, q):
                edges.append((u, w_id(s, 0)))
            else:
                edges.extend([(u, w_id(s, 1)), (u, w_id(s, 2))])

    g = Graph(c_size + d_size + t, frozenset(edges))
    z = frozenset(range(1, c_size + d_size + 1))
    inst = ProblemInstance(CLIQUE_BY_VC, g, ell + 1 + len(pairs), witness=z)
    layout = {"C": _block(0, c_size), "D": _block(c_size, d_size), "B": _block(c_size + d_size, t)}
    audit = CompositionAudit(THM7, key, t, t, g.n, g.m, inst.target, len(z), layout)
    return CompositionReport(inst, audit)


# ----------------------------
# triangle-split 3-coloring -> chromatic number by vertex cover
# ----------------------------

def compose_chromatic(group: Sequence[ProblemInstance], t_raw: int | None = None) -> CompositionReport:
    key = _shared_key(group, THM8)
    n, m = key.shape
    t = len(group)
    bits = log2_exact(t, THM8)

    t_base = t * n
    pal_base = t_base + 3 * m
    w, x, y, z = (pal_base + bits + k for k in (1, 2, 3, 4))
    palette = [pal_base + j for j in range(1, bits + 1)] + [w, x, y, z]
    sel_base = pal_base + bits + 4

    def q_id(j: int, bit: int) -> int:
        return sel_base + 2 * (j - 1) + bit + 1

    edges: list[Edge] = []
    for i, inst in enumerate(group, start=1):
        part = inst.partition
        assert part is not None
        mapping = {v: (i - 1) * n + k for k, v in enumerate(sorted(part.x), start=1)}
        for j, tri in enumerate(part.triangles):
            mapping.update({v: t_base + 3 * j + k for k, v in enumerate(tri, start=1)})
        edges.extend((mapping[u], mapping[v]) for u, v in inst.graph.edges)
        code = encode_index(i, bits)
        for xv in range((i - 1) * n + 1, i * n + 1):
            edges.append((xv, w))
            edges.extend((xv, q_id(j, code.bit(j))) for j in range(1, bits + 1))

    edges.extend(combinations(palette, 2))
    tri_vertices = range(t_base + 1, t_base + 3 * m + 1)
    edges.extend((tv, p) for tv in tri_vertices for p in palette if p not in (x, y, z))
    for j in range(1, bits + 1):
        q0, q1 = q_id(j, 0), q_id(j, 1)
        edges.append((q0, q1))
        for p in palette:
            if p not in (pal_base + j, w):
                edges.extend([(q0, p), (q1, p)])

    g = Graph(sel_base + 2 * bits, frozenset(edges))
    zprime = frozenset(range(t_base + 1, g.n + 1))
    inst = ProblemInstance(CHROMATIC_BY_VC, g, bits + 4, witness=zprime)
    layout = {f"X{i}": _block((i - 1) * n, n) for i in range(1, t + 1)}
    layout["T"] = _block(t_base, 3 * m)
    layout["palette"] = tuple(palette)
    layout["selectors"] = _block(sel_base, 2 * bits)
    audit = CompositionAudit(THM8, key, t_raw or t, t, g.n, g.m, inst.target, len(zprime), layout)
    return CompositionReport(inst, audit)


# ----------------------------
# vertex cover -> weighted FVS / OCT by vertex cover
# ----------------------------

def compose_weighted_transversal(
    group: Sequence[ProblemInstance], mode: CycleMode, t_raw: int | None = None
) -> CompositionReport:
    construction = THM10_FVS if mode == "all" else THM10_OCT
    key = _shared_key(group, construction)
    n, m, ell = key.shape
    t = len(group)
    bits = log2_exact(t, construction)

    a_base = t * n
    box_base = a_base + SCAFFOLD_SIZE * m
    box = k4_in_a_box()

    edges: set[Edge] = set()
    for i, inst in enumerate(group, start=1):
        offset = (i - 1) * n
        for j, unit in enumerate(inflate(inst.graph).scaffold):
            start = a_base + SCAFFOLD_SIZE * j
            merged = ScaffoldUnit(unit.u + offset, unit.v + offset, *_block(start, SCAFFOLD_SIZE))
            edges.update(scaffold_edges(merged, merged.u, merged.v))

    for j in range(1, bits + 1):
        start = box_base + 8 * (j - 1)
        edges.update((start + u, start + v) for u, v in box.graph.edges)
    for i in range(1, t + 1):
        code = encode_index(i, bits)
        for j in range(1, bits + 1):
            start = box_base + 8 * (j - 1)
            terminals = box.one_terminals if code.bit(j) else box.zero_terminals
            edges.update((v, start + term) for v in range(n * (i - 1) + 1, n * i + 1) for term in terminals)

    total = box_base + 8 * bits
    heavy = t * n
    weights = WeightAssignment(tuple(heavy if v > box_base else 1 for v in range(1, total + 1)))
    g = Graph(total, frozenset(edges))
    zprime = frozenset(range(a_base + 1, total + 1))
    l_prime = 2 * bits * t * n + (t - 1) * n + ell
    inst = ProblemInstance(TARGET_KIND[construction], g, l_prime, witness=zprime, weights=weights)
    layout = {f"V{i}": _block((i - 1) * n, n) for i in range(1, t + 1)}
    layout["A"] = _block(a_base, SCAFFOLD_SIZE * m)
    layout.update({f"box{j}": _block(box_base + 8 * (j - 1), 8) for j in range(1, bits + 1)})
    audit = CompositionAudit(construction, key, t_raw or t, t, g.n, g.m, l_prime, len(zprime), layout)
    return CompositionReport(inst, audit)


# ----------------------------
# batches and audits
# ----------------------------

def compose_class(key: EquivalenceClassKey, group: Sequence[ProblemInstance]) -> CompositionReport:
    if key.tag == MALFORMED:
        return _constant_report(key, False, len(group))
    if key.tag == TRIVIAL_YES:
        return _constant_report(key, True, len(group))
    if key.construction == THM7:
        return compose_clique(group)
    padded = pad_to_power_of_two(group)
    if key.construction == THM8:
        return compose_chromatic(padded, t_raw=len(group))
    mode: CycleMode = "all" if key.construction == THM10_FVS else "odd"
    return compose_weighted_transversal(padded, mode, t_raw=len(group))


def compose_batch(instances: Sequence[ProblemInstance], construction: str) -> list[CompositionReport]:
    return [compose_class(key, group) for key, group in partition_instances(instances, construction).items()]


def closed_form(key: EquivalenceClassKey, t: int) -> tuple[int, int, int]:
    """(l_prime, k_prime, vertex count) a well-formed class composes to."""
    if key.construction == THM7:
        n, ell = key.shape
        pairs = comb(n, 2)
        return ell + 1 + pairs, ell * n + 3 * pairs, ell * n + 3 * pairs + t
    bits = log2_exact(t, key.construction)
    if key.construction == THM8:
        n, m = key.shape
        return bits + 4, 3 * bits + 4 + 3 * m, t * n + 3 * m + 3 * bits + 4
    n, m, ell = key.shape
    return 2 * bits * t * n + (t - 1) * n + ell, SCAFFOLD_SIZE * m + 8 * bits, t * n + SCAFFOLD_SIZE * m + 8 * bits


def audit_errors(report: CompositionReport) -> list[str]:
    a = report.audit
    inst = report.instance
    key = a.class_key
    errors: list[str] = []
    if inst.graph.n != a.n:
        errors.append(f"audit n={a.n} but graph has {inst.graph.n} vertices")
    if inst.graph.m != a.m:
        errors.append(f"audit m={a.m} but graph has {inst.graph.m} edges")
    if inst.target != a.l_prime:
        errors.append(f"audit l_prime={a.l_prime} but target is {inst.target}")
    if len(inst.witness or ()) != a.k_prime:
        errors.append(f"audit k_prime={a.k_prime} but |Z'|={len(inst.witness or ())}")
    if key.tag != WELL_FORMED:
        if inst != canonical_instance(TARGET_KIND[key.construction], key.tag == TRIVIAL_YES):
            errors.append(f"class {key} must compose to its constant instance")
        return errors

    l_prime, k_prime, vertices = closed_form(key, a.t)
    if a.l_prime != l_prime:
        errors.append(f"l_prime={a.l_prime}, closed form gives {l_prime}")
    if a.k_prime != k_prime:
        errors.append(f"k_prime={a.k_prime}, closed form gives {k_prime}")
    if a.n != vertices:
        errors.append(f"n={a.n}, closed form gives {vertices}")
    errors.extend(f"witness: {v}" for v in validate_witness(inst))
    return errors


def validate_audit(report: CompositionReport) -> None:
    errors = audit_errors(report)
    if errors:
        raise OutputValidationError("; ".join(errors))


def structure_errors(report: CompositionReport, group: Sequence[ProblemInstance]) -> list[str]:
    """Independence and per-input isomorphism checks on a composed graph.

    `group` is the class as given to compose_class; it is padded here the same way.
    """
    a = report.audit
    if a.class_key.tag != WELL_FORMED:
        return []
    g = report.instance.graph
    errors: list[str] = []
    if a.construction == THM7:
        if not is_independent(g, a.layout["B"]):
            errors.append("block B is not independent")
        return errors

    padded = pad_to_power_of_two(group)
    for i, inst in enumerate(padded, start=1):
        if a.construction == THM8:
            own = a.layout[f"X{i}"]
            shared = a.layout["T"]
            expected = inst.graph
        else:
            own = a.layout[f"V{i}"]
            shared = a.layout["A"]
            expected = inflate(inst.graph).graph
        if not is_independent(g, own):
            errors.append(f"block {i} is not independent")
        sub, _ = induced_subgraph(g, (*own, *shared))
        if not are_isomorphic(sub, expected):
            errors.append(f"block {i} plus shared part is not isomorphic to its source")
    return errors
