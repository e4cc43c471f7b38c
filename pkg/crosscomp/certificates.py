"""Move YES certificates through constructions, in both directions.

Lifting takes a certificate for one input of a composition and builds one for
the composed instance; decoding reads the selected input number back out of a
certificate of the composed instance.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

from crosscomp.compose import (
    THM7,
    THM8,
    THM10_FVS,
    THM10_OCT,
    CompositionReport,
    ConstructionError,
    IndexCode,
    decode_index,
    encode_index,
    pad_to_power_of_two,
)
from crosscomp.gadgets import SCAFFOLD_ROLES, InflationResult, k4_in_a_box
from crosscomp.graph import Graph, VertexSet, is_clique, is_proper_coloring, is_vertex_cover
from crosscomp.instance import ProblemInstance


def _expect(report: CompositionReport, *constructions: str) -> None:
    a = report.audit
    if a.construction not in constructions or not a.layout:
        raise ConstructionError(a.construction, "report has no block layout for this certificate")


def _bits(report: CompositionReport) -> int:
    return report.audit.t.bit_length() - 1


def lift_clique_certificate(
    report: CompositionReport, inputs: Sequence[ProblemInstance], index: int, clique: Iterable[int]
) -> VertexSet:
    _expect(report, THM7)
    layout = report.audit.layout
    n, ell = report.audit.class_key.shape
    g = inputs[index - 1].graph
    members = sorted(clique)
    if len(members) < ell or not is_clique(g, members):
        raise ConstructionError(THM7, f"not a clique of size >= {ell} in input {index}")

    chosen = members[:ell]
    picked = set(chosen)
    out = {layout["B"][index - 1]}
    out.update(layout["C"][(r - 1) * n + j - 1] for r, j in enumerate(chosen, start=1))
    for s, (p, q) in enumerate(combinations(range(1, n + 1), 2)):
        if g.has_edge(p, q):
            variant = 0
        elif q not in picked:
            variant = 1
        else:
            variant = 2
        out.add(layout["D"][3 * s + variant])
    return frozenset(out)


def lift_coloring_certificate(
    report: CompositionReport,
    inputs: Sequence[ProblemInstance],
    index: int,
    coloring: Mapping[int, int],
) -> dict[int, int]:
    _expect(report, THM8)
    layout = report.audit.layout
    bits = _bits(report)
    padded = pad_to_power_of_two(inputs)
    source = padded[index - 1]
    part = source.partition
    assert part is not None
    if not is_proper_coloring(source.graph, coloring):
        raise ConstructionError(THM8, f"not a proper coloring of every vertex of input {index}")
    used = sorted(set(coloring[v] for v in source.graph.vertices))
    if len(used) > 3:
        raise ConstructionError(THM8, f"coloring of input {index} uses {len(used)} colors, not 3")

    w_color = bits + 1
    rename = {c: bits + 2 + k for k, c in enumerate(used)}
    out: dict[int, int] = {v: k for k, v in enumerate(layout["palette"], start=1)}

    own = layout[f"X{index}"]
    for k, v in enumerate(sorted(part.x)):
        out[own[k]] = rename[coloring[v]]
    tri_block = layout["T"]
    for j, tri in enumerate(part.triangles):
        for k, v in enumerate(tri):
            out[tri_block[3 * j + k]] = rename[coloring[v]]

    code = encode_index(index, bits)
    selectors = layout["selectors"]
    for j in range(1, bits + 1):
        for bit in (0, 1):
            out[selectors[2 * (j - 1) + bit]] = j if bit == code.bit(j) else w_color

    for i in range(1, len(padded) + 1):
        if i == index:
            continue
        other = encode_index(i, bits)
        j = next(j for j in range(1, bits + 1) if other.bit(j) != code.bit(j))
        out.update({v: j for v in layout[f"X{i}"]})
    return out


def decode_coloring_index(report: CompositionReport, coloring: Mapping[int, int]) -> int:
    _expect(report, THM8)
    layout = report.audit.layout
    bits = _bits(report)
    palette, selectors = layout["palette"], layout["selectors"]
    missing = sorted(v for v in [*palette, *selectors] if v not in coloring)
    if missing:
        raise ConstructionError(THM8, f"coloring leaves palette or selector vertices {missing} uncolored")
    code = tuple(
        int(coloring[selectors[2 * (j - 1) + 1]] == coloring[palette[j - 1]]) for j in range(1, bits + 1)
    )
    return decode_index(IndexCode(code))


def lift_transversal_certificate(
    report: CompositionReport, inputs: Sequence[ProblemInstance], index: int, cover: Iterable[int]
) -> VertexSet:
    _expect(report, THM10_FVS, THM10_OCT)
    layout = report.audit.layout
    bits = _bits(report)
    padded = pad_to_power_of_two(inputs)
    source = padded[index - 1]
    members = frozenset(cover)
    if len(members) > source.target or not is_vertex_cover(source.graph, members):
        raise ConstructionError(report.audit.construction, f"not a vertex cover of size <= {source.target}")

    box = k4_in_a_box()
    code = encode_index(index, bits)
    out: set[int] = set()
    for j in range(1, bits + 1):
        terminals = box.one_terminals if code.bit(j) else box.zero_terminals
        out.update(layout[f"box{j}"][term - 1] for term in terminals)
    for i in range(1, len(padded) + 1):
        if i != index:
            out.update(layout[f"V{i}"])
    own = layout[f"V{index}"]
    out.update(own[v - 1] for v in members)
    return frozenset(out)


def decode_transversal_index(report: CompositionReport, transversal: Iterable[int]) -> int | None:
    _expect(report, THM10_FVS, THM10_OCT)
    layout = report.audit.layout
    members = frozenset(transversal)
    box = k4_in_a_box()
    code = []
    for j in range(1, _bits(report) + 1):
        block = layout[f"box{j}"]
        if all(block[term - 1] in members for term in box.one_terminals):
            code.append(1)
        elif all(block[term - 1] in members for term in box.zero_terminals):
            code.append(0)
        else:
            return None
    return decode_index(IndexCode(tuple(code)))


def extend_coloring_through_reduction(
    g: Graph, reduction: ProblemInstance, coloring: Mapping[int, int]
) -> dict[int, int]:
    """3-coloring of g to a 3-coloring of its triangle split graph."""
    if not is_proper_coloring(g, coloring):
        raise ConstructionError("lemma2", "not a proper coloring of every source vertex")
    used = sorted(set(coloring[v] for v in g.vertices))
    if len(used) > 3:
        raise ConstructionError("lemma2", f"source coloring uses {len(used)} colors, not 3")
    palette = list(used)
    fill = 1
    while len(palette) < 3:
        if fill not in palette:
            palette.append(fill)
        fill += 1

    part = reduction.partition
    assert part is not None
    out = {v: coloring[v] for v in g.vertices}
    for (u, v), (a, b, c) in zip(g.sorted_edges(), part.triangles):
        out[a] = coloring[v]
        out[b] = coloring[u]
        out[c] = next(col for col in palette if col not in (coloring[u], coloring[v]))
    return out


def push_transversal_to_originals(inflation: InflationResult, s: Iterable[int]) -> VertexSet:
    """Replace each scaffold vertex by the original endpoint its degree-2 path leads to."""
    owner = {
        getattr(unit, role): unit.owner(role) for unit in inflation.scaffold for role in SCAFFOLD_ROLES
    }
    return frozenset(owner.get(v, v) for v in s)
