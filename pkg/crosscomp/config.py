from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml
from dotenv import load_dotenv

from crosscomp.oracles import DEFAULT_LIMITS

L_POLICIES = ("uniform", "near-optimum")


@dataclass
class Env:
    config_path: str | None
    log_dir: str | None
    failure_dir: str | None


def _g(name: str) -> str | None:
    v = os.environ.get(name)
    if v is None or v.strip() == "":
        return None
    return v.strip()


def load_env(repo_root: Path) -> Env:
    # a missing .env is fine; the process environment still applies
    load_dotenv(repo_root / ".env", override=False)
    return Env(
        config_path=_g("CROSSCOMP_CONFIG"),
        log_dir=_g("CROSSCOMP_LOG_DIR"),
        failure_dir=_g("CROSSCOMP_FAILURE_DIR"),
    )


def load_yaml(path: Path) -> dict:
    if not path.exists():
        return {}
    with path.open("r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


@dataclass(frozen=True)
class VerifyDefaults:
    trials: int = 100
    t_range: tuple[int, int] = (1, 4)
    n_range: tuple[int, int] = (3, 4)
    edge_density: float = 0.5
    max_edges: int = 6
    l_policy: str = "near-optimum"


DEFAULT_VERIFY: dict[str, VerifyDefaults] = {
    "thm7": VerifyDefaults(),
    "thm8": VerifyDefaults(trials=50, t_range=(1, 2), n_range=(1, 3), max_edges=3),
    "thm10-fvs": VerifyDefaults(trials=20, t_range=(1, 2), n_range=(2, 3), max_edges=2),
    "thm10-oct": VerifyDefaults(trials=20, t_range=(1, 2), n_range=(2, 3), max_edges=2),
    "lemma2": VerifyDefaults(trials=50, t_range=(1, 1), n_range=(1, 5), max_edges=10),
    "lemma3": VerifyDefaults(trials=50, t_range=(1, 1), n_range=(1, 4), max_edges=4),
    "cor4": VerifyDefaults(t_range=(1, 1), n_range=(1, 7), max_edges=21),
    "thm9-fvs": VerifyDefaults(t_range=(1, 1), n_range=(1, 7), max_edges=21),
    "thm9-oct": VerifyDefaults(t_range=(1, 1), n_range=(1, 7), max_edges=21),
    "turing-kernel": VerifyDefaults(t_range=(1, 1), n_range=(1, 8), max_edges=28),
    "fpt-clique": VerifyDefaults(t_range=(1, 1), n_range=(1, 8), max_edges=28),
    "fpt-chromatic": VerifyDefaults(t_range=(1, 1), n_range=(1, 8), max_edges=28),
    "fpt-fvs": VerifyDefaults(t_range=(1, 1), n_range=(1, 8), max_edges=28),
    "fpt-oct": VerifyDefaults(t_range=(1, 1), n_range=(1, 8), max_edges=28),
}


# wall-clock ceilings per acceptance criterion id, in seconds
DEFAULT_TIME_LIMITS_S: dict[str, float] = {
    "1": 1.0,
    "2": 1.0,
    "3": 60.0,
    "4": 120.0,
    "5": 600.0,
    "6": 600.0,
    "7": 300.0,
    "8": 60.0,
    "10": 300.0,
}


@dataclass(frozen=True)
class AcceptanceSettings:
    trials: dict[str, int] = field(default_factory=dict)
    time_limits_s: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TIME_LIMITS_S))
    run_stretch: bool = False


@dataclass
class AppConfig:
    raw: dict
    oracle_limits: dict[str, int]
    verify: dict[str, VerifyDefaults]
    acceptance: AcceptanceSettings
    log_dir: Path
    failure_dir: Path
    report_dir: Path


def _pair(value: object, fallback: tuple[int, int]) -> tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        return fallback
    lo, hi = (max(0, int(x)) for x in value)
    return (min(lo, hi), max(lo, hi))


def _verify_defaults(check: str, section: dict) -> VerifyDefaults:
    base = DEFAULT_VERIFY.get(check, VerifyDefaults())
    policy = str(section.get("l_policy", base.l_policy)).strip().lower()
    density = float(section.get("edge_density", base.edge_density))
    return replace(
        base,
        trials=max(1, int(section.get("trials", base.trials))),
        t_range=_pair(section.get("t_range"), base.t_range),
        n_range=_pair(section.get("n_range"), base.n_range),
        edge_density=min(1.0, max(0.0, density)),
        max_edges=max(0, int(section.get("max_edges", base.max_edges))),
        l_policy=policy if policy in L_POLICIES else base.l_policy,
    )


def _resolve(repo_root: Path, value: str | Path) -> Path:
    p = Path(value)
    return p if p.is_absolute() else repo_root / p


def load_config(repo_root: Path, path: Path | None = None) -> AppConfig:
    env = load_env(repo_root)
    if path is None:
        path = _resolve(repo_root, env.config_path) if env.config_path else repo_root / "config" / "config.yaml"
    cfg = load_yaml(path)

    oracle_cfg = cfg.get("oracle", {}) or {}
    limits = {name: max(1, int(oracle_cfg.get(name, default))) for name, default in DEFAULT_LIMITS.items()}

    verify_cfg = cfg.get("verify", {}) or {}
    verify = {check: _verify_defaults(check, verify_cfg.get(check, {}) or {}) for check in DEFAULT_VERIFY}

    acc_cfg = cfg.get("acceptance", {}) or {}
    acceptance = AcceptanceSettings(
        trials={str(k): max(1, int(v)) for k, v in (acc_cfg.get("trials", {}) or {}).items()},
        time_limits_s={
            **DEFAULT_TIME_LIMITS_S,
            **{str(k): max(1.0, float(v)) for k, v in (acc_cfg.get("time_limits_s", {}) or {}).items()},
        },
        run_stretch=bool(acc_cfg.get("run_stretch", False)),
    )

    output_cfg = cfg.get("output", {}) or {}
    log_dir = _resolve(repo_root, env.log_dir or output_cfg.get("log_dir") or "logs")
    failure_dir = _resolve(repo_root, env.failure_dir or output_cfg.get("failure_dir") or ".state/failures")
    report_dir = _resolve(repo_root, output_cfg.get("report_dir") or "reports")

    return AppConfig(
        raw=cfg,
        oracle_limits=limits,
        verify=verify,
        acceptance=acceptance,
        log_dir=log_dir,
        failure_dir=failure_dir,
        report_dir=report_dir,
    )
