from __future__ import annotations

from pathlib import Path

import pytest

from crosscomp.graph import Graph
from crosscomp.instance import (
    CLIQUE,
    CLIQUE_BY_VC,
    TRIANGLE_SPLIT,
    VC_BY_CLIQUE_DELETION,
    WEIGHTED_FVS_BY_VC,
    ParseError,
    ProblemInstance,
    WeightAssignment,
    WitnessInvalidError,
    parse_instance,
    read_instance,
    serialize_instance,
    validate_witness,
)

TRIANGLE_SPLIT_TEXT = """\
# one edge 1-2 reduced to a triangle split graph
problem triangle-split-3-coloring
vertices 5
edge 3 4
edge 4 5
edge 3 5
edge 1 3
edge 2 4
edge 2 5
part_x 1 2
triangle 3 4 5
"""


def test_parse_clique_instance_with_comments():
    inst = parse_instance("problem clique  # k3\nvertices 3\nedge 1 2\nedge 2 3\nedge 1 3\n\ntarget 3\n")
    assert inst.kind == CLIQUE
    assert inst.graph == Graph.complete(3)
    assert inst.target == 3
    assert inst.witness is None


def test_parse_triangle_split_defaults_target_to_three():
    inst = parse_instance(TRIANGLE_SPLIT_TEXT)
    assert inst.kind == TRIANGLE_SPLIT
    assert inst.target == 3
    assert inst.partition is not None
    assert inst.partition.x == frozenset({1, 2})
    assert inst.partition.y == frozenset({3, 4, 5})


def test_parse_triangle_split_rejects_other_targets():
    with pytest.raises(ParseError):
        parse_instance(TRIANGLE_SPLIT_TEXT + "target 4\n")


def test_parse_reports_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_instance("problem clique\nvertices 2\nedge 1 x\ntarget 1\n")
    assert exc.value.line == 3
    assert "not an integer" in str(exc.value)


@pytest.mark.parametrize(
    "text, needle",
    [
        ("problem nope\nvertices 1\ntarget 0\n", "unknown problem kind"),
        ("problem clique\nvertices 2\nvertices 2\ntarget 0\n", "duplicate 'vertices'"),
        ("problem clique\nvertices 2\nedge 1 1\ntarget 0\n", "self-loop"),
        ("problem clique\nvertices 2\nedge 1 3\ntarget 0\n", "outside 1..2"),
        ("problem clique\nvertices 2\nedge 1 2\nedge 2 1\ntarget 0\n", "duplicate edge"),
        ("problem clique\nvertices 2\n", "missing 'target'"),
        ("vertices 2\ntarget 1\n", "missing 'problem'"),
        ("problem clique\nvertices 2\ntarget 1\ncolor 1 2\n", "unknown directive"),
        ("problem weighted-fvs-by-vc\nvertices 2\ntarget 1\nwitness 1\nweight 1 1\n", "missing weight for vertex 2"),
        ("problem clique\nvertices 2\ntarget 1\nwitness 1 1\n", "repeated vertex"),
    ],
)
def test_parse_errors(text: str, needle: str):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert needle in str(exc.value)


def test_witness_must_be_a_vertex_cover():
    text = "problem clique-by-vc\nvertices 3\nedge 1 2\nedge 2 3\ntarget 2\nwitness 1\n"
    with pytest.raises(WitnessInvalidError) as exc:
        parse_instance(text)
    assert "Z is not a vertex cover" in exc.value.violations


def test_witness_on_kind_without_parameter_is_rejected():
    with pytest.raises(WitnessInvalidError):
        parse_instance("problem clique\nvertices 2\ntarget 1\nwitness 1\n")


def test_clique_deletion_witness_leaves_a_clique():
    ok = ProblemInstance(VC_BY_CLIQUE_DELETION, Graph.from_edges(3, [(2, 3)]), 1, witness=frozenset({1}))
    assert validate_witness(ok) == []
    bad = ProblemInstance(VC_BY_CLIQUE_DELETION, Graph.path(3), 1, witness=frozenset({2}))
    assert validate_witness(bad) == ["G - Z is not a clique"]


def test_weights_only_on_weighted_kinds():
    inst = ProblemInstance(CLIQUE_BY_VC, Graph(1), 1, witness=frozenset(), weights=WeightAssignment.unit(1))
    assert validate_witness(inst) == [f"kind {CLIQUE_BY_VC} takes no weights"]
    zero = ProblemInstance(WEIGHTED_FVS_BY_VC, Graph(1), 0, witness=frozenset(), weights=WeightAssignment((0,)))
    assert validate_witness(zero) == ["weights must be positive integers"]


def test_triangle_split_structure_is_checked():
    text = TRIANGLE_SPLIT_TEXT.replace("edge 2 5\n", "edge 1 2\n")
    with pytest.raises(WitnessInvalidError) as exc:
        parse_instance(text)
    assert "G[X] is not edgeless" in exc.value.violations


def test_serialize_is_canonical(tmp_path: Path):
    inst = parse_instance(
        "problem weighted-fvs-by-vc\nweight 2 5\nvertices 2\nweight 1 3\ntarget 4\nwitness 2\nedge 2 1\n"
    )
    text = serialize_instance(inst)
    assert text == (
        "problem weighted-fvs-by-vc\nvertices 2\nedge 1 2\ntarget 4\nwitness 2\nweight 1 3\nweight 2 5\n"
    )
    path = tmp_path / "x.inst"
    path.write_text(text, encoding="utf-8")
    assert read_instance(path) == inst


def test_serialize_triangle_split_reparses():
    inst = parse_instance(TRIANGLE_SPLIT_TEXT)
    assert parse_instance(serialize_instance(inst)) == inst


def test_weight_assignment_helpers():
    w = WeightAssignment.from_mapping(3, {1: 2, 2: 1, 3: 4})
    assert w.of(3) == 4
    assert w.total({1, 3}) == 6
    assert len(w) == 3


@pytest.mark.parametrize(
    "text, line, needle",
    [
        ("problem clique-by-vc\nvertices 2\nedge 1 2\ntarget 1\nwitness 1 7\n", 5, "witness vertices [7] outside 1..2"),
        ("problem triangle-split-3-coloring\nvertices 3\npart_x 0\ntarget 3\n", 3, "part_x vertices [0] outside 1..3"),
        ("problem triangle-split-3-coloring\nvertices 3\ntriangle 1 2 4\n", 3, "triangle vertices [4] outside 1..3"),
    ],
)
def test_out_of_range_vertex_lists_are_parse_errors(text: str, line: int, needle: str):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert exc.value.line == line
    assert needle in str(exc.value)
