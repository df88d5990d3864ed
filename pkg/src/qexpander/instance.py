"""JSON instance files.

Example::

    {"group": {"family": "symmetric", "n": 4},
     "generators": ["(1 2)", "(1 2 3 4)"],
     "irrep": "(3,1)"}

``irrep``, ``seed`` and ``tol`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .groups import GeneratorSet, GroupError, GroupSpec, group_from_json
from .irreps import IrrepHandle, parse_irrep


@dataclass(frozen=True)
class Instance:
    group: GroupSpec
    generators: GeneratorSet | None
    irrep: IrrepHandle | None = None
    seed: int | None = None
    tol: float | None = None


def parse_instance(obj: dict) -> Instance:
    if not isinstance(obj, dict) or "group" not in obj:
        raise GroupError("instance must be a JSON object with a 'group' field")
    group = group_from_json(obj["group"])
    texts = obj.get("generators")
    gens = GeneratorSet.parse(group, texts) if texts else None
    irrep = parse_irrep(group, obj["irrep"]) if obj.get("irrep") is not None else None
    return Instance(group, gens, irrep, obj.get("seed"), obj.get("tol"))


def load_instance(path: str | Path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GroupError(f"{path}: invalid JSON ({exc})") from None
    return parse_instance(obj)
