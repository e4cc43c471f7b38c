from __future__ import annotations

import json
import os
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any


class OutputValidationError(RuntimeError):
    pass


def _to_jsonable(obj: Any) -> Any:
    if is_dataclass(obj) and not isinstance(obj, type):
        return asdict(obj)
    return obj


def atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    # same directory, so the rename is atomic
    os.replace(tmp, path)


def atomic_write_json(path: Path, obj: Any) -> None:
    payload = _to_jsonable(obj)
    data = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    atomic_write_text(path, data + "\n")


def sibling_paths(out: Path, count: int) -> list[Path]:
    """`out` itself for one output, `<stem>.<index><suffix>` for several."""
    if count == 1:
        return [out]
    return [out.with_name(f"{out.stem}.{i}{out.suffix}") for i in range(1, count + 1)]


def audit_path(out: Path) -> Path:
    return out.with_name(out.name + ".audit")
