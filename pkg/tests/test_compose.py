from __future__ import annotations

from dataclasses import replace

import pytest

import crosscomp.compose as compose
from crosscomp.artifact_writer import OutputValidationError
from crosscomp.compose import (
    MALFORMED,
    THM7,
    THM8,
    THM10_FVS,
    THM10_OCT,
    TRIVIAL_YES,
    WELL_FORMED,
    ConstructionError,
    EquivalenceClassKey,
    audit_errors,
    canonical_instance,
    closed_form,
    compose_batch,
    compose_class,
    decode_index,
    encode_index,
    log2_exact,
    pad_to_power_of_two,
    partition_indices,
    structure_errors,
    validate_audit,
)
from crosscomp.gadgets import triangle_split_reduction
from crosscomp.graph import Graph
from crosscomp.instance import (
    CHROMATIC_BY_VC,
    CLIQUE,
    CLIQUE_BY_VC,
    VERTEX_COVER,
    WEIGHTED_FVS_BY_VC,
    WEIGHTED_OCT_BY_VC,
    ProblemInstance,
    validate_witness,
)
from crosscomp.oracles import decide
from crosscomp.verify import check_or_equivalence


def _clique(g: Graph, ell: int) -> ProblemInstance:
    return ProblemInstance(CLIQUE, g, ell)


def _vc(g: Graph, ell: int) -> ProblemInstance:
    return ProblemInstance(VERTEX_COVER, g, ell)


def test_index_codes():
    assert str(encode_index(1, 2)) == "01"
    assert str(encode_index(4, 2)) == "00"
    assert encode_index(3, 2).bit(1) == 1
    assert [decode_index(encode_index(i, 3)) for i in range(1, 9)] == list(range(1, 9))
    assert str(encode_index(1, 0)) == ""
    with pytest.raises(ConstructionError):
        encode_index(5, 2)


def test_log2_exact_and_padding():
    assert log2_exact(8, THM8) == 3
    with pytest.raises(ConstructionError):
        log2_exact(6, THM8)
    assert pad_to_power_of_two(["a", "b", "c"]) == ["a", "b", "c", "a"]
    assert pad_to_power_of_two(["a"]) == ["a"]
    with pytest.raises(ConstructionError):
        pad_to_power_of_two([])


def test_partition_keeps_first_appearance_order():
    batch = [
        _clique(Graph.path(3), 2),
        _clique(Graph.path(2), 5),
        _clique(Graph.complete(3), 2),
        _clique(Graph.path(2), 1),
    ]
    groups = partition_indices(batch, THM7)
    assert list(groups.values()) == [[0, 2], [1], [3]]
    keys = list(groups)
    assert str(keys[0]) == "well-formed(3,2)"
    assert keys[1] == EquivalenceClassKey(THM7, MALFORMED)


def test_partition_rejects_wrong_source_kind():
    with pytest.raises(ConstructionError):
        partition_indices([_vc(Graph.path(2), 1)], THM7)
    with pytest.raises(ConstructionError):
        partition_indices([_vc(Graph.path(2), 1)], "thm99")


@pytest.mark.parametrize(
    "kind", [CLIQUE_BY_VC, CHROMATIC_BY_VC, WEIGHTED_FVS_BY_VC, WEIGHTED_OCT_BY_VC]
)
def test_canonical_instances_have_the_stated_answer(kind: str):
    for answer in (True, False):
        inst = canonical_instance(kind, answer)
        assert validate_witness(inst) == []
        assert decide(inst).answer is answer


def test_clique_composition_closed_form():
    batch = [_clique(Graph.path(4), 2), _clique(Graph.cycle(4), 2), _clique(Graph(4), 2)]
    (report,) = compose_batch(batch, THM7)
    a = report.audit
    assert (a.l_prime, a.k_prime) == (9, 26)
    assert a.n == 26 + 3
    assert closed_form(a.class_key, 3) == (9, 26, 29)
    assert audit_errors(report) == []
    assert structure_errors(report, batch) == []
    assert report.instance.kind == CLIQUE_BY_VC
    assert a.sidecar_text().splitlines()[:3] == ["construction=thm7", "class=well-formed(4,2)", "t_raw=3"]


@pytest.mark.parametrize(
    "graphs, ell, expected",
    [
        ([Graph(3), Graph(3)], 2, "NO"),
        ([Graph(3), Graph.path(3)], 2, "YES"),
        ([Graph.path(3), Graph.cycle(3)], 3, "YES"),
        ([Graph.path(3), Graph.from_edges(3, [(1, 3)])], 3, "NO"),
        ([Graph.from_edges(3, [(1, 2)])], 2, "YES"),
    ],
)
def test_clique_composition_is_or(graphs: list[Graph], ell: int, expected: str):
    outcome = check_or_equivalence(THM7, [_clique(g, ell) for g in graphs])
    assert outcome.expected == expected
    assert outcome.agreed and outcome.violations == []


def test_clique_composition_breaks_when_column_rule_changes(monkeypatch: pytest.MonkeyPatch):
    batch = [_clique(Graph.from_edges(3, [(1, 2)]), 2)]
    assert check_or_equivalence(THM7, batch).agreed

    original = compose._d_vertex_sees_column

    def mutated(variant: int, p: int, q: int, j: int) -> bool:
        if variant == 1:
            return j == q
        return original(variant, p, q, j)

    monkeypatch.setattr(compose, "_d_vertex_sees_column", mutated)
    outcome = check_or_equivalence(THM7, batch)
    assert outcome.expected == "YES"
    assert outcome.got == "NO"
    assert not outcome.agreed


def test_malformed_clique_class_composes_to_constant_no():
    (report,) = compose_batch([_clique(Graph.complete(2), 3)], THM7)
    assert report.audit.class_key.tag == MALFORMED
    assert report.instance == canonical_instance(CLIQUE_BY_VC, False)
    assert audit_errors(report) == []


def test_chromatic_composition_closed_form():
    k2 = triangle_split_reduction(Graph.complete(2))
    (report,) = compose_batch([k2, k2], THM8)
    a = report.audit
    assert (a.t, a.l_prime, a.k_prime, a.n) == (2, 5, 10, 14)
    assert audit_errors(report) == []
    assert structure_errors(report, [k2, k2]) == []
    assert decide(report.instance).answer


def test_chromatic_composition_pads_to_power_of_two():
    p = triangle_split_reduction(Graph.path(3))
    (report,) = compose_batch([p, p, p], THM8)
    assert (report.audit.t_raw, report.audit.t) == (3, 4)
    assert set(report.audit.layout) >= {"X1", "X2", "X3", "X4", "T", "palette", "selectors"}
    assert audit_errors(report) == []


def test_chromatic_composition_of_non_colorable_input_is_no():
    k4 = triangle_split_reduction(Graph.complete(4))
    outcome = check_or_equivalence(THM8, [k4])
    assert outcome.expected == "NO"
    assert outcome.agreed


def test_weighted_transversal_closed_form():
    batch = [_vc(Graph.complete(2), 1), _vc(Graph.complete(2), 1)]
    (report,) = compose_batch(batch, THM10_FVS)
    a = report.audit
    assert (a.l_prime, a.n, a.k_prime) == (11, 19, 15)
    weights = report.instance.weights
    assert weights is not None
    assert [weights.of(v) for v in a.layout["box1"]] == [4] * 8
    assert weights.of(1) == 1
    assert structure_errors(report, batch) == []


@pytest.mark.parametrize("construction", [THM10_FVS, THM10_OCT])
@pytest.mark.parametrize("ell, expected", [(0, "NO"), (1, "YES")])
def test_weighted_transversal_is_or(construction: str, ell: int, expected: str):
    outcome = check_or_equivalence(construction, [_vc(Graph.complete(2), ell)] * 2)
    assert outcome.expected == expected
    assert outcome.agreed and outcome.violations == []


def test_trivial_yes_class():
    (report,) = compose_batch([_vc(Graph.path(2), 2)], THM10_OCT)
    assert report.audit.class_key.tag == TRIVIAL_YES
    assert decide(report.instance).answer


def test_batch_yields_one_report_per_class():
    batch = [_vc(Graph.path(3), 1), _vc(Graph.path(2), 0), _vc(Graph.from_edges(3, [(1, 3), (2, 3)]), 1)]
    reports = compose_batch(batch, THM10_FVS)
    assert [str(r.audit.class_key) for r in reports] == ["well-formed(3,2,1)", "well-formed(2,1,0)"]
    assert [r.audit.t_raw for r in reports] == [2, 1]


def test_compose_class_rejects_mixed_groups():
    key = EquivalenceClassKey(THM7, WELL_FORMED, (3, 2))
    with pytest.raises(ConstructionError):
        compose_class(key, [_clique(Graph.path(3), 2), _clique(Graph.path(2), 2)])


def test_validate_audit_flags_tampering():
    (report,) = compose_batch([_clique(Graph.path(3), 2)], THM7)
    validate_audit(report)
    bad = replace(report, audit=replace(report.audit, l_prime=report.audit.l_prime + 1))
    with pytest.raises(OutputValidationError):
        validate_audit(bad)
