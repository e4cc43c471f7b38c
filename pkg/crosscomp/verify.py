"""Seeded random instances and oracle-backed equivalence checks for every construction."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Mapping, Sequence

from crosscomp.artifact_writer import atomic_write_text
from crosscomp.compose import (
    THM7,
    THM8,
    THM10_FVS,
    THM10_OCT,
    audit_errors,
    compose_class,
    partition_instances,
    structure_errors,
)
from crosscomp.config import DEFAULT_VERIFY, VerifyDefaults
from crosscomp.fpt import (
    fpt_chromatic_by_vc,
    fpt_clique_by_vc,
    fpt_transversal_by_clique_deletion,
    turing_kernel_clique_by_vc,
)
from crosscomp.gadgets import inflate, triangle_split_reduction
from crosscomp.graph import Graph, VertexSet, is_vertex_cover
from crosscomp.instance import (
    BY_CLIQUE_DELETION_KINDS,
    BY_VC_KINDS,
    CHROMATIC_BY_VC,
    CLIQUE,
    CLIQUE_BY_VC,
    FVS_BY_CLIQUE_DELETION,
    OCT_BY_CLIQUE_DELETION,
    TRIANGLE_SPLIT,
    TRIANGLE_SPLIT_TARGET,
    VC_BY_CLIQUE_DELETION,
    VERTEX_COVER,
    WEIGHTED_KINDS,
    ProblemInstance,
    WeightAssignment,
    serialize_instance,
    validate_witness,
)
from crosscomp.log_jsonl import append_jsonl, kv
from crosscomp.oracles import DEFAULT_LIMITS, chromatic_number, decide, max_clique, min_transversal, min_vertex_cover
from crosscomp.transforms import apexify, clique_cover, complement_chain

Limits = Mapping[str, int]


class InfeasibleParametersError(ValueError):
    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(reason)


@dataclass
class TrialOutcome:
    seed: int
    agreed: bool
    expected: str
    got: str
    inputs: list[ProblemInstance] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    construction: str
    trials: int = 0
    agreements: int = 0
    failures: list[TrialOutcome] = field(default_factory=list)
    formula_violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.formula_violations


CheckFn = Callable[[int, VerifyDefaults, Limits | None], TrialOutcome]
BatchBuilder = Callable[[random.Random, VerifyDefaults, Limits | None], list[ProblemInstance]]


def _label(answer: bool) -> str:
    return "YES" if answer else "NO"


# ----------------------------
# random generation
# ----------------------------

def _check_ranges(n_range: tuple[int, int], edge_density: float) -> None:
    lo, hi = n_range
    if lo < 0 or lo > hi:
        raise InfeasibleParametersError(f"bad vertex range {lo}..{hi}")
    if hi > DEFAULT_LIMITS["clique"]:
        raise InfeasibleParametersError(f"vertex range {lo}..{hi} exceeds oracle limits")
    if not 0.0 <= edge_density <= 1.0:
        raise InfeasibleParametersError(f"edge density {edge_density} outside [0, 1]")


def random_graph(rng: random.Random, n: int, edge_density: float, max_edges: int | None = None) -> Graph:
    chosen = [e for e in combinations(range(1, n + 1), 2) if rng.random() < edge_density]
    if max_edges is not None and len(chosen) > max_edges:
        chosen = rng.sample(chosen, max_edges)
    return Graph(n, frozenset(chosen))


def graph_with_edges(rng: random.Random, n: int, m: int) -> Graph:
    pairs = list(combinations(range(1, n + 1), 2))
    if m > len(pairs):
        raise InfeasibleParametersError(f"{m} edges do not fit on {n} vertices")
    return Graph(n, frozenset(rng.sample(pairs, m)))


def greedy_vertex_cover(g: Graph) -> VertexSet:
    """Take highest-degree vertices until covered, then drop redundant ones."""
    cover: set[int] = set()
    uncovered = set(g.edges)
    while uncovered:
        deg: dict[int, int] = {}
        for u, v in uncovered:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        pick = max(sorted(deg), key=lambda v: deg[v])
        cover.add(pick)
        uncovered = {e for e in uncovered if pick not in e}
    for v in sorted(cover):
        if is_vertex_cover(g, cover - {v}):
            cover.discard(v)
    return frozenset(cover)


def _near(rng: random.Random, opt: int, lo: int, hi: int) -> int:
    options = [x for x in (opt - 1, opt, opt + 1) if lo <= x <= hi]
    return rng.choice(options) if options else max(lo, min(opt, hi))


def random_instance(
    kind: str,
    n_range: tuple[int, int],
    edge_density: float,
    l_policy: str,
    seed: int,
    *,
    max_edges: int | None = None,
    limits: Limits | None = None,
) -> ProblemInstance:
    _check_ranges(n_range, edge_density)
    if l_policy not in ("uniform", "near-optimum"):
        raise InfeasibleParametersError(f"unknown target policy: {l_policy}")
    rng = random.Random(seed)
    n = rng.randint(*n_range)

    if kind == TRIANGLE_SPLIT:
        return triangle_split_reduction(random_graph(rng, n, edge_density, max_edges))

    z: VertexSet | None = None
    if kind in BY_CLIQUE_DELETION_KINDS:
        base = random_graph(rng, n, edge_density, max_edges)
        planted = sorted(rng.sample(range(1, n + 1), rng.randint(0, n)))
        g = Graph(n, base.edges | frozenset(combinations(planted, 2)))
        z = frozenset(v for v in g.vertices if v not in planted)
    else:
        g = random_graph(rng, n, edge_density, max_edges)
        if kind in BY_VC_KINDS:
            z = greedy_vertex_cover(g)

    weights = WeightAssignment(tuple(rng.randint(1, 3) for _ in g.vertices)) if kind in WEIGHTED_KINDS else None
    draft = ProblemInstance(kind, g, 0, witness=z, weights=weights)
    hi = weights.total(g.vertices) if weights is not None else n
    if l_policy == "uniform":
        target = rng.randint(0, hi)
    else:
        value = decide(draft, limits).value
        assert value is not None
        target = _near(rng, value, 0, hi)
    return ProblemInstance(kind, g, target, witness=z, weights=weights)


# ----------------------------
# composition checks
# ----------------------------

def check_or_equivalence(
    construction: str, batch: Sequence[ProblemInstance], limits: Limits | None = None, seed: int = 0
) -> TrialOutcome:
    """Compose each class of the batch and compare the composed verdict with the OR of its inputs."""
    expected: list[str] = []
    got: list[str] = []
    violations: list[str] = []
    for key, group in partition_instances(batch, construction).items():
        report = compose_class(key, group)
        violations.extend(f"{key}: {e}" for e in audit_errors(report))
        violations.extend(f"{key}: {e}" for e in structure_errors(report, group))
        expected.append(_label(any(decide(x, limits).answer for x in group)))
        got.append(_label(decide(report.instance, limits).answer))
    return TrialOutcome(
        seed=seed,
        agreed=expected == got,
        expected=",".join(expected),
        got=",".join(got),
        inputs=list(batch),
        violations=violations,
    )


def _limit(limits: Limits | None, name: str) -> int:
    return (limits or {}).get(name, DEFAULT_LIMITS[name])


def thm7_batch(rng: random.Random, d: VerifyDefaults, limits: Limits | None) -> list[ProblemInstance]:
    """Same n for every input; a shared target near the first input's clique number."""
    t = rng.randint(*d.t_range)
    n = rng.randint(*d.n_range)
    graphs = [random_graph(rng, n, d.edge_density, d.max_edges) for _ in range(t)]
    opt, _ = max_clique(graphs[0], limit=_limit(limits, "clique"))
    ell = _near(rng, opt, 1, n + 1) if d.l_policy == "near-optimum" else rng.randint(1, n + 1)
    return [ProblemInstance(CLIQUE, g, ell) for g in graphs]


def thm8_batch(rng: random.Random, d: VerifyDefaults, limits: Limits | None) -> list[ProblemInstance]:
    t = rng.randint(*d.t_range)
    n = rng.randint(*d.n_range)
    first = random_graph(rng, n, d.edge_density, d.max_edges)
    graphs = [first] + [graph_with_edges(rng, n, first.m) for _ in range(t - 1)]
    return [triangle_split_reduction(g) for g in graphs]


def thm10_batch(rng: random.Random, d: VerifyDefaults, limits: Limits | None) -> list[ProblemInstance]:
    t = rng.randint(*d.t_range)
    n = rng.randint(*d.n_range)
    m = rng.randint(0, min(d.max_edges, n * (n - 1) // 2))
    graphs = [graph_with_edges(rng, n, m) for _ in range(t)]
    opt, _ = min_vertex_cover(graphs[0], limit=_limit(limits, "vertex_cover"))
    ell = _near(rng, opt, 0, n) if d.l_policy == "near-optimum" else rng.randint(0, n)
    return [ProblemInstance(VERTEX_COVER, g, ell) for g in graphs]


def _composition_check(construction: str, build: BatchBuilder) -> CheckFn:
    def run(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
        batch = build(random.Random(seed), d, limits)
        return check_or_equivalence(construction, batch, limits, seed=seed)

    return run


# ----------------------------
# reduction and solver checks
# ----------------------------

def _instance(kind: str, seed: int, d: VerifyDefaults, limits: Limits | None) -> ProblemInstance:
    return random_instance(
        kind, d.n_range, d.edge_density, d.l_policy, seed, max_edges=d.max_edges, limits=limits
    )


def check_lemma2(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(*d.n_range), d.edge_density, d.max_edges)
    red = triangle_split_reduction(g)
    cap = _limit(limits, "chromatic")
    before = chromatic_number(g, limit=cap)[0] <= 3
    after = chromatic_number(red.graph, limit=cap)[0] <= 3
    # saved as "chi(G) <= 3" so the artifact replays the same question
    source = ProblemInstance(CHROMATIC_BY_VC, g, TRIANGLE_SPLIT_TARGET, witness=greedy_vertex_cover(g))
    return TrialOutcome(seed, before == after, _label(before), _label(after), [source, red], validate_witness(red))


def check_lemma3(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
    rng = random.Random(seed)
    n = rng.randint(*d.n_range)
    g = random_graph(rng, n, d.edge_density, d.max_edges)
    opt, _ = min_vertex_cover(g, limit=_limit(limits, "vertex_cover"))
    ell = _near(rng, opt, 0, n) if d.l_policy == "near-optimum" else rng.randint(0, n)
    phi = inflate(g).graph
    cap = _limit(limits, "transversal")
    vc = opt <= ell
    fvs = min_transversal(phi, "all", limit=cap)[0] <= ell
    oct_ = min_transversal(phi, "odd", limit=cap)[0] <= ell
    return TrialOutcome(
        seed, vc == fvs == oct_, _label(vc), f"fvs={_label(fvs)} oct={_label(oct_)}", [ProblemInstance(VERTEX_COVER, g, ell)]
    )


def check_cor4(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
    inst = _instance(CLIQUE_BY_VC, seed, d, limits)
    indep, cover = complement_chain(inst)
    a, b, c = (decide(x, limits).answer for x in (inst, indep, cover))
    violations = validate_witness(indep) + validate_witness(cover)
    return TrialOutcome(seed, a == b == c, _label(a), f"is={_label(b)} vc={_label(c)}", [inst], violations)


def _thm9_check(mode: str) -> CheckFn:
    def run(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
        inst = _instance(VC_BY_CLIQUE_DELETION, seed, d, limits)
        out = apexify(inst, "all" if mode == "fvs" else "odd")
        assert inst.witness is not None and out.witness is not None
        family = clique_cover(inst.graph, inst.witness)
        violations = validate_witness(out)
        if len(out.witness) != len(inst.witness) + len(family):
            violations.append(f"k'={len(out.witness)} but |Z|+|family|={len(inst.witness) + len(family)}")
        before = decide(inst, limits).answer
        after = decide(out, limits).answer
        return TrialOutcome(seed, before == after, _label(before), _label(after), [inst], violations)

    return run


def check_turing_kernel(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
    inst = _instance(CLIQUE_BY_VC, seed, d, limits)
    outs = turing_kernel_clique_by_vc(inst)
    k = len(inst.witness or ())
    violations = [f"output {i} has {o.graph.n} > k+1 vertices" for i, o in enumerate(outs, 1) if o.graph.n > k + 1]
    if len(outs) != inst.graph.n - k + 1:
        violations.append(f"expected {inst.graph.n - k + 1} outputs, got {len(outs)}")
    before = decide(inst, limits).answer
    after = any(decide(o, limits).answer for o in outs)
    return TrialOutcome(seed, before == after, _label(before), _label(after), [inst], violations)


def _fpt_check(kind: str, solve: Callable[[ProblemInstance], bool]) -> CheckFn:
    def run(seed: int, d: VerifyDefaults, limits: Limits | None) -> TrialOutcome:
        inst = _instance(kind, seed, d, limits)
        expected = decide(inst, limits).answer
        got = solve(inst)
        return TrialOutcome(seed, expected == got, _label(expected), _label(got), [inst])

    return run


CHECKS: dict[str, CheckFn] = {
    THM7: _composition_check(THM7, thm7_batch),
    THM8: _composition_check(THM8, thm8_batch),
    THM10_FVS: _composition_check(THM10_FVS, thm10_batch),
    THM10_OCT: _composition_check(THM10_OCT, thm10_batch),
    "lemma2": check_lemma2,
    "lemma3": check_lemma3,
    "cor4": check_cor4,
    "thm9-fvs": _thm9_check("fvs"),
    "thm9-oct": _thm9_check("oct"),
    "turing-kernel": check_turing_kernel,
    "fpt-clique": _fpt_check(CLIQUE_BY_VC, lambda x: fpt_clique_by_vc(x).answer),
    "fpt-chromatic": _fpt_check(CHROMATIC_BY_VC, lambda x: fpt_chromatic_by_vc(x).answer),
    "fpt-fvs": _fpt_check(FVS_BY_CLIQUE_DELETION, lambda x: fpt_transversal_by_clique_deletion(x, "all").answer),
    "fpt-oct": _fpt_check(OCT_BY_CLIQUE_DELETION, lambda x: fpt_transversal_by_clique_deletion(x, "odd").answer),
}


# ----------------------------
# runner
# ----------------------------

def replay_command(check: str, seed: int) -> str:
    return f"crosscomp verify --construction {check} --trials 1 --seed {seed}"


def write_failure(failure_dir: Path, check: str, outcome: TrialOutcome) -> Path:
    folder = failure_dir / check / f"seed-{outcome.seed}"
    for i, inst in enumerate(outcome.inputs, start=1):
        atomic_write_text(folder / f"input-{i}.inst", serialize_instance(inst))
    append_jsonl(
        failure_dir / "failures.jsonl",
        {
            "check": check,
            "seed": outcome.seed,
            "expected": outcome.expected,
            "got": outcome.got,
            "violations": outcome.violations,
            "replay": replay_command(check, outcome.seed),
        },
    )
    return folder


def run_verification(
    check: str,
    *,
    trials: int,
    seed: int,
    defaults: VerifyDefaults | None = None,
    limits: Limits | None = None,
    failure_dir: Path | None = None,
    logger: logging.Logger | None = None,
) -> VerificationReport:
    if check not in CHECKS:
        raise KeyError(check)
    d = defaults or DEFAULT_VERIFY[check]
    run = CHECKS[check]
    report = VerificationReport(construction=check)
    for i in range(trials):
        trial_seed = seed + i
        outcome = run(trial_seed, d, limits)
        report.trials += 1
        if outcome.agreed:
            report.agreements += 1
        else:
            report.failures.append(outcome)
        report.formula_violations.extend(f"seed={trial_seed} {v}" for v in outcome.violations)
        if logger is not None:
            logger.info(
                kv(
                    construction=check,
                    trial=i,
                    seed=trial_seed,
                    agreed=outcome.agreed,
                    expected=outcome.expected,
                    got=outcome.got,
                    violations=len(outcome.violations),
                )
            )
        if failure_dir is not None and (not outcome.agreed or outcome.violations):
            write_failure(failure_dir, check, outcome)
    return report
