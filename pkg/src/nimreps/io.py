"""JSON serialisation and spec-string parsing.

Every document carries ``"schema": 1``.  Rings may be given inline or as a
path to a ring JSON file.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .classify import NearGroupSolution
from .fusion import (FusionRing, group_ring, ising_ring, near_group_ring, ring_from_tensor,
                     su2_half_ring, su2_ring)
from .groups import FiniteGroup, Subgroup, builtin_group, group_from_table
from .nimrep import NimRep, verify

SCHEMA = 1


class FormatError(ValueError):
    pass


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _body(doc: dict) -> dict:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise FormatError(f"unsupported schema {doc.get('schema')!r}")
    return doc


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from e


def group_to_json(g: FiniteGroup) -> dict:
    return {"schema": SCHEMA, **g.to_dict()}


def group_from_json(doc: dict) -> FiniteGroup:
    doc = _body(doc)
    try:
        return group_from_table(doc["table"], doc.get("names"))
    except KeyError as e:
        raise FormatError(f"group JSON missing {e}") from e


def ring_to_json(r: FusionRing) -> dict:
    return {"schema": SCHEMA, **r.to_dict()}


def ring_from_json(doc, base: Path | None = None) -> FusionRing:
    if isinstance(doc, str):
        path = Path(doc) if base is None else base / doc
        return ring_from_json(load_json(path))
    doc = _body(doc)
    try:
        return ring_from_tensor(doc["names"], doc["unit"], doc["dual"], doc["coeffs"])
    except KeyError as e:
        raise FormatError(f"ring JSON missing {e}") from e


def nimrep_to_json(n: NimRep) -> dict:
    return {"schema": SCHEMA, **n.to_dict(), "ring": ring_to_json(n.ring)}


def nimrep_from_json(doc: dict, base: Path | None = None) -> NimRep:
    doc = _body(doc)
    try:
        ring = ring_from_json(doc["ring"], base)
        mats = np.asarray(doc["mats"], dtype=np.int64)
        if "dim" in doc and mats.ndim == 3 and mats.shape[1] != doc["dim"]:
            raise FormatError("dim does not match mats")
        return verify(ring, mats, doc.get("basis_names"))
    except KeyError as e:
        raise FormatError(f"NIM-rep JSON missing {e}") from e


def nimreps_from_json(doc: dict, base: Path | None = None) -> list[NimRep]:
    """A single NIM-rep document or a collection ``{"nimreps": [...]}``."""
    doc = _body(doc)
    if "nimreps" in doc:
        return [nimrep_from_json(d, base) for d in doc["nimreps"]]
    return [nimrep_from_json(doc, base)]


def solution_to_json(s: NearGroupSolution) -> dict:
    return {"schema": SCHEMA, **s.to_dict()}


def solution_from_json(doc: dict, g: FiniteGroup) -> NearGroupSolution:
    doc = _body(doc)
    orbits = tuple(Subgroup(g, tuple(sorted(h))) for h in doc["orbits"])
    C = tuple(tuple(int(x) for x in row) for row in doc["C"])
    return NearGroupSolution(int(doc["alpha"]), g, orbits, C)


def parse_ring_spec(spec: str) -> FusionRing:
    """``group:<G>``, ``neargroup:<G>:<alpha>``, ``su2:<l>``, ``su2half:<l>`` or ``ising``."""
    parts = spec.split(":")
    kind = parts[0].strip().lower()
    try:
        if kind == "ising" and len(parts) == 1:
            return ising_ring()
        if kind == "group" and len(parts) == 2:
            return group_ring(builtin_group(parts[1]))
        if kind == "neargroup" and len(parts) == 3:
            return near_group_ring(builtin_group(parts[1]), int(parts[2]))
        if kind == "su2" and len(parts) == 2:
            return su2_ring(int(parts[1]))
        if kind == "su2half" and len(parts) == 2:
            return su2_half_ring(int(parts[1]))
    except ValueError as e:
        raise FormatError(f"bad ring spec {spec!r}: {e}") from e
    raise FormatError(f"unknown ring spec {spec!r}")
