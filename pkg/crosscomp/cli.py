from __future__ import annotations

import argparse
import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from crosscomp.acceptance import run_acceptance_suite
from crosscomp.artifact_writer import OutputValidationError, atomic_write_text, audit_path, sibling_paths
from crosscomp.budget import BudgetError, BudgetParameters, distillation_budget
from crosscomp.compose import CONSTRUCTIONS, ConstructionError, compose_batch, partition_indices, validate_audit
from crosscomp.config import AppConfig, load_config, load_env
from crosscomp.fpt import (
    fpt_chromatic_by_vc,
    fpt_clique_by_vc,
    fpt_transversal_by_clique_deletion,
    turing_kernel_clique_by_vc,
)
from crosscomp.graph import GraphError
from crosscomp.instance import (
    CHROMATIC_BY_VC,
    CLIQUE_BY_VC,
    FVS_BY_CLIQUE_DELETION,
    OCT_BY_CLIQUE_DELETION,
    ParseError,
    ProblemInstance,
    Verdict,
    WitnessInvalidError,
    read_instance,
    serialize_instance,
)
from crosscomp.log_jsonl import get_logger, kv
from crosscomp.oracles import OracleLimitError, decide
from crosscomp.transforms import RULES, TransformError, apply_rule
from crosscomp.verify import CHECKS, InfeasibleParametersError, run_verification

FPT_SOLVERS: dict[str, Callable[[ProblemInstance], Verdict]] = {
    CLIQUE_BY_VC: fpt_clique_by_vc,
    CHROMATIC_BY_VC: fpt_chromatic_by_vc,
    FVS_BY_CLIQUE_DELETION: lambda inst: fpt_transversal_by_clique_deletion(inst, "all"),
    OCT_BY_CLIQUE_DELETION: lambda inst: fpt_transversal_by_clique_deletion(inst, "odd"),
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_WITNESS = 3
EXIT_CONSTRUCTION = 4
EXIT_INTERRUPTED = 130


def _repo_root() -> Path:
    return Path(__file__).resolve().parents[1]


def _logger(cfg: AppConfig) -> logging.Logger:
    return get_logger(cfg.log_dir)


def _format_witness(witness: object) -> str:
    if witness is None:
        return "none"
    if isinstance(witness, Mapping):
        return ",".join(f"{v}:{witness[v]}" for v in sorted(witness))
    return ",".join(str(v) for v in sorted(witness))  # type: ignore[call-overload]


def _read_all(paths: Sequence[str]) -> list[ProblemInstance]:
    return [read_instance(Path(p)) for p in paths]


# ----------------------------
# commands
# ----------------------------

def cmd_doctor(repo_root: Path) -> int:
    env = load_env(repo_root)
    cfg = load_config(repo_root)
    print("== Doctor ==")
    print("config=OK")
    print("env_load=OK")
    print(f"config_override={env.config_path or 'none'}")
    print(f"log_dir={cfg.log_dir}")
    print(f"failure_dir={cfg.failure_dir}")
    print(f"report_dir={cfg.report_dir}")
    for name, limit in cfg.oracle_limits.items():
        print(f"oracle_limit_{name}={limit}")
    return EXIT_OK


def cmd_solve(repo_root: Path, path: str, engine: str) -> int:
    cfg = load_config(repo_root)
    inst = read_instance(Path(path))
    if engine == "fpt":
        solver = FPT_SOLVERS.get(inst.kind)
        if solver is None:
            print(f"SOLVE ERROR: no fixed-parameter solver for kind {inst.kind}")
            return EXIT_CONSTRUCTION
        verdict = solver(inst)
    else:
        verdict = decide(inst, cfg.oracle_limits)
    _logger(cfg).info(kv(command="solve", engine=engine, kind=inst.kind, n=inst.graph.n, answer=verdict.label))
    print(f"answer={verdict.label}")
    print(f"value={'none' if verdict.value is None else verdict.value}")
    print(f"witness={_format_witness(verdict.witness)}")
    return EXIT_OK


def cmd_compose(repo_root: Path, construction: str, files: Sequence[str], out: str) -> int:
    cfg = load_config(repo_root)
    logger = _logger(cfg)
    instances = _read_all(files)
    reports = compose_batch(instances, construction)
    for report in reports:
        validate_audit(report)
    for report, target in zip(reports, sibling_paths(Path(out), len(reports))):
        atomic_write_text(target, serialize_instance(report.instance))
        atomic_write_text(audit_path(target), report.audit.sidecar_text())
        a = report.audit
        logger.info(kv(construction=construction, cls=a.class_key, t=a.t, n=a.n, out=target))
        print(kv(out=target, **{"class": a.class_key}, t_raw=a.t_raw, t=a.t, l_prime=a.l_prime, k_prime=a.k_prime))
    return EXIT_OK


def cmd_transform(repo_root: Path, rule: str, path: str, out: str) -> int:
    cfg = load_config(repo_root)
    inst = read_instance(Path(path))
    result = apply_rule(rule, inst)
    atomic_write_text(Path(out), serialize_instance(result))
    _logger(cfg).info(kv(command="transform", rule=rule, n=result.graph.n, out=out))
    print(kv(rule=rule, kind=result.kind, n=result.graph.n, m=result.graph.m, target=result.target, out=out))
    return EXIT_OK


def cmd_turing_kernel(repo_root: Path, path: str, out_dir: str) -> int:
    cfg = load_config(repo_root)
    inst = read_instance(Path(path))
    outputs = turing_kernel_clique_by_vc(inst)
    folder = Path(out_dir)
    for i, sub in enumerate(outputs, start=1):
        atomic_write_text(folder / f"instance-{i}.inst", serialize_instance(sub))
    _logger(cfg).info(kv(command="turing-kernel", count=len(outputs), out=folder))
    print(kv(instances=len(outputs), out=folder))
    return EXIT_OK


def cmd_partition(repo_root: Path, construction: str, files: Sequence[str]) -> int:
    instances = _read_all(files)
    for key, idxs in partition_indices(instances, construction).items():
        print(kv(**{"class": key}, members=",".join(files[i] for i in idxs)))
    return EXIT_OK


def _format_power(value: float | None, base: int, exponent: Fraction) -> str:
    return f"{value:.6g}" if value is not None else f"{base}^({exponent})"


def cmd_budget(b: str, c: str, d: str, eps: str, s: str) -> int:
    params = BudgetParameters.parse(b, c, d, eps, s)
    res = distillation_budget(params)
    print(f"t={res.t}")
    print(f"delta={res.delta}")
    print(f"lhs={_format_power(res.lhs, params.s, res.lhs_exponent)}")
    print(f"rhs={_format_power(res.rhs, params.s, res.rhs_exponent)}")
    print(f"identity={'OK' if res.identity_holds else 'MISMATCH'}")
    return EXIT_OK


def cmd_verify(repo_root: Path, check: str, trials: int | None, seed: int, out: str | None) -> int:
    cfg = load_config(repo_root)
    logger = _logger(cfg)
    defaults = cfg.verify[check]
    failure_dir = Path(out) if out else cfg.failure_dir
    report = run_verification(
        check,
        trials=trials if trials is not None else defaults.trials,
        seed=seed,
        defaults=defaults,
        limits=cfg.oracle_limits,
        failure_dir=failure_dir,
        logger=logger,
    )
    print(f"== Verify {check} ==")
    print(f"trials={report.trials}")
    print(f"agreements={report.agreements}")
    print(f"failures={len(report.failures)}")
    print(f"formula_violations={len(report.formula_violations)}")
    for failure in report.failures:
        print(kv(failed_seed=failure.seed, expected=failure.expected, got=failure.got))
    for violation in report.formula_violations:
        print(f"violation={violation}")
    if not report.ok:
        print(f"failure_dir={failure_dir}")
    print(f"status={'PASS' if report.ok else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_accept(repo_root: Path, config: str | None, seed: int) -> int:
    cfg = load_config(repo_root, Path(config) if config else None)
    results, code = run_acceptance_suite(cfg, seed=seed, logger=_logger(cfg))
    print("== Acceptance ==")
    for r in results:
        print(kv(criterion=r.id, status=r.status, duration_ms=r.duration_ms, gating=r.gating))
    print(f"overall={'PASS' if code == 0 else 'FAIL'}")
    print(f"report_dir={cfg.report_dir}")
    return code


# ----------------------------
# entry point
# ----------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crosscomp")
    sub = p.add_subparsers(dest="cmd", required=True)

    sub.add_parser("doctor", help="Check config/env loading and resolved directories")

    p_solve = sub.add_parser("solve", help="Decide an instance with the exact oracles or a parameterized solver")
    p_solve.add_argument("file")
    p_solve.add_argument("--engine", choices=["oracle", "fpt"], default="oracle")

    p_compose = sub.add_parser("compose", help="OR-compose instances, one output per class")
    p_compose.add_argument("--construction", choices=list(CONSTRUCTIONS), required=True)
    p_compose.add_argument("files", nargs="+")
    p_compose.add_argument("-o", "--out", required=True)

    p_transform = sub.add_parser("transform", help="Apply a reduction or parameter transformation")
    p_transform.add_argument("--rule", choices=list(RULES), required=True)
    p_transform.add_argument("file")
    p_transform.add_argument("-o", "--out", required=True)

    p_kernel = sub.add_parser("turing-kernel", help="Split a clique-by-vc instance into small instances")
    p_kernel.add_argument("file")
    p_kernel.add_argument("-o", "--out", required=True, help="Output directory")

    p_partition = sub.add_parser("partition", help="Print the equivalence classes of input files")
    p_partition.add_argument("--construction", choices=list(CONSTRUCTIONS), required=True)
    p_partition.add_argument("files", nargs="+")

    p_budget = sub.add_parser("budget", help="Input count and slack for a size bound")
    p_budget.add_argument("--b", required=True)
    p_budget.add_argument("--c", required=True)
    p_budget.add_argument("--d", required=True)
    p_budget.add_argument("--eps", required=True, help="Positive rational, e.g. 1/2")
    p_budget.add_argument("--s", required=True)

    p_verify = sub.add_parser("verify", help="Seeded oracle check of one construction or solver")
    p_verify.add_argument("--construction", choices=sorted(CHECKS), required=True)
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--seed", type=int, required=True)
    p_verify.add_argument("--out", default=None, help="Failure artifact directory")

    p_accept = sub.add_parser("accept", help="Run the acceptance suite")
    p_accept.add_argument("--config", default=None)
    p_accept.add_argument("--seed", type=int, default=0)
    return p


def dispatch(args: argparse.Namespace, repo_root: Path) -> int:
    if args.cmd == "doctor":
        return cmd_doctor(repo_root)
    if args.cmd == "solve":
        return cmd_solve(repo_root, args.file, args.engine)
    if args.cmd == "compose":
        return cmd_compose(repo_root, args.construction, args.files, args.out)
    if args.cmd == "transform":
        return cmd_transform(repo_root, args.rule, args.file, args.out)
    if args.cmd == "turing-kernel":
        return cmd_turing_kernel(repo_root, args.file, args.out)
    if args.cmd == "partition":
        return cmd_partition(repo_root, args.construction, args.files)
    if args.cmd == "budget":
        return cmd_budget(args.b, args.c, args.d, args.eps, args.s)
    if args.cmd == "verify":
        return cmd_verify(repo_root, args.construction, args.trials, args.seed, args.out)
    if args.cmd == "accept":
        return cmd_accept(repo_root, args.config, args.seed)
    return EXIT_PARSE


def run(argv: Sequence[str] | None = None, repo_root: Path | None = None) -> int:
    args = build_parser().parse_args(argv)
    root = repo_root or _repo_root()
    label = args.cmd.upper()
    try:
        return dispatch(args, root)
    except KeyboardInterrupt:
        print(f"{label} INTERRUPTED")
        return EXIT_INTERRUPTED
    except (ParseError, GraphError, OSError) as exc:
        print(f"{label} ERROR: {exc}")
        return EXIT_PARSE
    except WitnessInvalidError as exc:
        print(f"{label} ERROR: witness invalid: {exc}")
        return EXIT_WITNESS
    except (
        ConstructionError,
        TransformError,
        OracleLimitError,
        BudgetError,
        OutputValidationError,
        InfeasibleParametersError,
    ) as exc:
        print(f"{label} ERROR: {exc}")
        return EXIT_CONSTRUCTION


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
