"""Acceptance suite: each criterion runs, is timed, and lands in REPORT.json / REPORT.md."""
from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable

from crosscomp.artifact_writer import atomic_write_json, atomic_write_text, audit_path
from crosscomp.budget import BudgetParameters, distillation_budget
from crosscomp.compose import (
    THM10_FVS,
    THM10_OCT,
    compose_batch,
    encode_index,
    partition_instances,
    structure_errors,
)
from crosscomp.config import AppConfig
from crosscomp.gadgets import inflate, k4_in_a_box, triangle_split_reduction
from crosscomp.graph import Graph, are_isomorphic, triangles
from crosscomp.instance import VERTEX_COVER, ProblemInstance, read_instance, serialize_instance, validate_witness
from crosscomp.log_jsonl import kv
from crosscomp.oracles import chromatic_number, min_transversal, min_vertex_cover
from crosscomp.verify import check_or_equivalence, run_verification

Outcome = tuple[bool, str]

_clock: Callable[[], float] = time.monotonic


@dataclass
class CriterionResult:
    id: str
    name: str
    status: str
    duration_ms: int
    detail: str
    gating: bool = True


@dataclass
class SuiteContext:
    cfg: AppConfig
    seed: int
    logger: logging.Logger | None = None

    def trials(self, criterion: str, default: int) -> int:
        return self.cfg.acceptance.trials.get(criterion, default)


def all_graphs(max_n: int, max_m: int | None = None) -> list[Graph]:
    """Every labeled graph on 0..max_n vertices with at most max_m edges."""
    out = []
    for n in range(max_n + 1):
        pairs = list(combinations(range(1, n + 1), 2))
        top = len(pairs) if max_m is None else min(max_m, len(pairs))
        for m in range(top + 1):
            out.extend(Graph(n, frozenset(edges)) for edges in combinations(pairs, m))
    return out


def _verification(ctx: SuiteContext, checks: list[str], trials: int) -> Outcome:
    notes = []
    ok = True
    for check in checks:
        report = run_verification(
            check,
            trials=trials,
            seed=ctx.seed,
            defaults=ctx.cfg.verify[check],
            limits=ctx.cfg.oracle_limits,
            failure_dir=ctx.cfg.failure_dir,
            logger=ctx.logger,
        )
        ok = ok and report.ok
        notes.append(
            f"{check}: {report.agreements}/{report.trials} agreed, {len(report.formula_violations)} violations"
        )
    return ok, "; ".join(notes)


def crit_inflation(ctx: SuiteContext) -> Outcome:
    phi = inflate(Graph.complete(2)).graph
    ok = are_isomorphic(phi, Graph.cycle(9))
    return ok, f"n={phi.n} m={phi.m}"


def crit_k4_box(ctx: SuiteContext) -> Outcome:
    box = k4_in_a_box()
    tris = [frozenset(t) for t in triangles(box.graph)]
    hitting = [
        frozenset(s)
        for r in range(9)
        for s in combinations(range(1, 9), r)
        if all(t & frozenset(s) for t in tris)
    ]
    smallest = min(len(s) for s in hitting)
    pairs = {s for s in hitting if len(s) == 2}
    ok = smallest == 2 and pairs == {frozenset(box.zero_terminals), frozenset(box.one_terminals)}
    return ok, f"min={smallest} size2={sorted(sorted(p) for p in pairs)}"


def crit_lemma3(ctx: SuiteContext) -> Outcome:
    limit = ctx.cfg.oracle_limits["transversal"]
    checked = 0
    for g in all_graphs(4, 4):
        vc = min_vertex_cover(g, limit=ctx.cfg.oracle_limits["vertex_cover"])[0]
        phi = inflate(g).graph
        fvs = min_transversal(phi, "all", limit=limit)[0]
        oct_ = min_transversal(phi, "odd", limit=limit)[0]
        for ell in range(5):
            checked += 1
            if not (vc <= ell) == (fvs <= ell) == (oct_ <= ell):
                return False, f"disagreement on edges={g.sorted_edges()} l={ell}"
    return True, f"cases={checked}"


def crit_lemma2(ctx: SuiteContext) -> Outcome:
    limit = ctx.cfg.oracle_limits["chromatic"]
    graphs = all_graphs(5)
    for g in graphs:
        red = triangle_split_reduction(g)
        if validate_witness(red):
            return False, f"invalid reduction output for edges={g.sorted_edges()}"
        if (chromatic_number(g, limit=limit)[0] <= 3) != (chromatic_number(red.graph, limit=limit)[0] <= 3):
            return False, f"disagreement on edges={g.sorted_edges()}"
    return True, f"graphs={len(graphs)}"


def _thm10_batches() -> list[tuple[str, list[ProblemInstance]]]:
    k2 = Graph.complete(2)
    return [
        (mode, [ProblemInstance(VERTEX_COVER, k2, ell)] * 2)
        for mode in (THM10_FVS, THM10_OCT)
        for ell in (0, 1)
    ]


def crit_thm10(ctx: SuiteContext) -> Outcome:
    notes = []
    for construction, batch in _thm10_batches():
        outcome = check_or_equivalence(construction, batch, ctx.cfg.oracle_limits)
        notes.append(f"{construction} l={batch[0].target}: {outcome.expected}->{outcome.got}")
        if not outcome.agreed or outcome.violations:
            return False, "; ".join(notes + outcome.violations)
    return True, "; ".join(notes)


def crit_thm10_structure(ctx: SuiteContext) -> Outcome:
    for construction, batch in _thm10_batches():
        for key, group in partition_instances(batch, construction).items():
            (report,) = compose_batch(group, construction)
            errors = structure_errors(report, group) + validate_witness(report.instance)
            if errors:
                return False, f"{construction} {key}: {'; '.join(errors)}"
    return True, "blocks isomorphic to inflations; Z' is a vertex cover"


def crit_thm10_stretch(ctx: SuiteContext) -> Outcome:
    star = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
    path = Graph.path(4)
    batch = [ProblemInstance(VERTEX_COVER, star, 1), ProblemInstance(VERTEX_COVER, path, 1)]
    outcome = check_or_equivalence(THM10_FVS, batch, ctx.cfg.oracle_limits)
    return outcome.agreed and not outcome.violations, f"{outcome.expected}->{outcome.got}"


def crit_conventions(ctx: SuiteContext) -> Outcome:
    codes = (str(encode_index(1, 2)), str(encode_index(4, 2)))
    res = distillation_budget(BudgetParameters(Fraction(2), Fraction(1), Fraction(1), Fraction(1), 2))
    ok = codes == ("01", "00") and (res.t, res.delta) == (8, Fraction(1, 3))
    return ok, f"codes={codes[0]},{codes[1]} t={res.t} delta={res.delta}"


def crit_determinism(ctx: SuiteContext) -> Outcome:
    batch = [
        ProblemInstance(VERTEX_COVER, Graph.path(3), 1),
        ProblemInstance(VERTEX_COVER, Graph.from_edges(3, [(1, 3), (2, 3)]), 1),
        ProblemInstance(VERTEX_COVER, Graph.from_edges(3, [(1, 2), (1, 3)]), 1),
    ]
    folder = ctx.cfg.report_dir / "determinism"
    sources = [folder / f"input-{i}.inst" for i in range(1, len(batch) + 1)]
    for path, inst in zip(sources, batch):
        atomic_write_text(path, serialize_instance(inst))
    blobs = []
    for attempt in ("a", "b"):
        (report,) = compose_batch([read_instance(p) for p in sources], THM10_FVS)
        out = folder / f"{attempt}.inst"
        atomic_write_text(out, serialize_instance(report.instance))
        atomic_write_text(audit_path(out), report.audit.sidecar_text())
        blobs.append((out.read_bytes(), audit_path(out).read_bytes()))
    return blobs[0] == blobs[1], f"bytes={len(blobs[0][0])}"


Criterion = tuple[str, str, Callable[[SuiteContext], Outcome], bool]

CRITERIA: list[Criterion] = [
    ("1", "inflation of K2 is C9", crit_inflation, True),
    ("2", "K4-in-a-box triangle transversals", crit_k4_box, True),
    ("3", "vertex cover vs FVS/OCT of the inflation", crit_lemma3, True),
    ("4", "triangle-split reduction keeps 3-colorability", crit_lemma2, True),
    ("5", "clique composition OR-equivalence", lambda c: _verification(c, ["thm7"], c.trials("5", 100)), True),
    ("6", "chromatic composition OR-equivalence", lambda c: _verification(c, ["thm8"], c.trials("6", 50)), True),
    (
        "7",
        "apex transformation verdict equivalence",
        lambda c: _verification(c, ["thm9-fvs", "thm9-oct"], c.trials("7", 100)),
        True,
    ),
    ("8", "weighted transversal composition on K2 pairs", crit_thm10, True),
    ("8s", "weighted transversal composition, mixed inputs", crit_thm10_stretch, False),
    ("9", "weighted transversal composition structure", crit_thm10_structure, True),
    (
        "10",
        "fixed-parameter solvers and Turing kernel vs oracles",
        lambda c: _verification(
            c, ["fpt-clique", "fpt-chromatic", "fpt-fvs", "fpt-oct", "turing-kernel"], c.trials("10", 100)
        ),
        True,
    ),
    ("11", "complement chain verdicts", lambda c: _verification(c, ["cor4"], c.trials("11", 100)), True),
    ("12", "index codes and budget formulas", crit_conventions, True),
    ("13", "byte-identical recomposition", crit_determinism, True),
]


def run_criterion(ctx: SuiteContext, cid: str, name: str, fn: Callable[[SuiteContext], Outcome], gating: bool) -> CriterionResult:
    start = _clock()
    try:
        ok, detail = fn(ctx)
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    duration = int((_clock() - start) * 1000)
    limit_s = ctx.cfg.acceptance.time_limits_s.get(cid)
    if ok and limit_s is not None and duration > limit_s * 1000:
        ok, detail = False, f"{detail}; exceeded {limit_s:g}s"
    status = "PASS" if ok else "FAIL"
    if ctx.logger is not None:
        ctx.logger.info(kv(criterion=cid, status=status, duration_ms=duration, gating=gating))
    return CriterionResult(cid, name, status, duration, detail, gating)


def render_markdown(results: list[CriterionResult], overall: str, seed: int) -> str:
    lines = [
        "# Acceptance Report",
        "",
        "## Summary",
        f"- seed: {seed}",
        f"- overall_status: {overall}",
        "",
        "## Criteria",
    ]
    for r in results:
        tag = "" if r.gating else " (non-gating)"
        lines.append(f"- {r.id} {r.name}{tag}: {r.status} duration_ms={r.duration_ms}")
        lines.append(f"  - {r.detail}")
    return "\n".join(lines) + "\n"


def run_acceptance_suite(
    cfg: AppConfig, *, seed: int = 0, logger: logging.Logger | None = None, report_dir: Path | None = None
) -> tuple[list[CriterionResult], int]:
    ctx = SuiteContext(cfg, seed, logger)
    results = []
    for cid, name, fn, gating in CRITERIA:
        if not gating and not cfg.acceptance.run_stretch:
            continue
        results.append(run_criterion(ctx, cid, name, fn, gating))

    overall = "PASS" if all(r.status == "PASS" for r in results if r.gating) else "FAIL"
    out_dir = report_dir or cfg.report_dir
    atomic_write_json(
        out_dir / "REPORT.json",
        {"seed": seed, "overall_status": overall, "criteria": [asdict(r) for r in results]},
    )
    atomic_write_text(out_dir / "REPORT.md", render_markdown(results, overall, seed))
    return results, 0 if overall == "PASS" else 1
