"""Canonical JSON serialization for modules, intertwiner tables, vertex tables.

Every file carries the schema version header ``"schema": "logcalc/1"``.
Dumps are canonical (sorted keys, fixed indentation, trailing newline), so a
load -> save round trip is byte-identical on canonical files.  Loaders
validate eagerly and report failures with a JSON-pointer-style path.
"""

from __future__ import annotations

import json
from typing import Any

from .matrix import ExactMatrix
from .mobius import (
    GradedSpace,
    GradingGroup,
    MobiusModule,
    Sl2Action,
    module_valid,
    validate_sl2,
)
from .parser import parse_exponent, parse_scalar
from .printer import exponent_str, scalar_str
from .scalars import ExactScalar, Exponent
from .series import CoeffVector
from .intertwiner import IntertwinerTable, VertexTable

SCHEMA = "logcalc/1"


class SchemaError(ValueError):
    def __init__(self, message: str, pointer: str):
        super().__init__(f"{message} (at {pointer})")
        self.pointer = pointer


def _expect(cond: bool, message: str, pointer: str) -> None:
    if not cond:
        raise SchemaError(message, pointer)


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# matrices

def matrix_to_json(m: ExactMatrix) -> list[list[str]]:
    return [[scalar_str(e) for e in row] for row in m.entries]


def matrix_from_json(data: Any, pointer: str) -> ExactMatrix:
    _expect(isinstance(data, list) and data, "matrix must be a nonempty array", pointer)
    rows = []
    for i, row in enumerate(data):
        _expect(isinstance(row, list), "matrix row must be an array", f"{pointer}/{i}")
        rows.append([_scalar_from(cell, f"{pointer}/{i}/{j}") for j, cell in enumerate(row)])
    return ExactMatrix(rows)


def _scalar_from(cell: Any, pointer: str) -> ExactScalar:
    _expect(isinstance(cell, str), "scalar entries are strings", pointer)
    try:
        return parse_scalar(cell)
    except Exception as exc:
        raise SchemaError(f"bad scalar {cell!r}: {exc}", pointer) from exc


def _exponent_from(cell: Any, pointer: str) -> Exponent:
    _expect(isinstance(cell, str), "exponents are strings", pointer)
    try:
        return parse_exponent(cell)
    except Exception as exc:
        raise SchemaError(f"bad exponent {cell!r}: {exc}", pointer) from exc


# ---------------------------------------------------------------------------
# modules

def module_to_json(m: MobiusModule) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "module",
        "name": m.name,
        "dim": m.dim,
        "group": {"free_rank": m.space.group.free_rank, "torsion": list(m.space.group.torsion)},
        "weights": [exponent_str(w) for w in m.space.weights],
        "degrees": [list(d) for d in m.space.degrees],
        "Lm1": matrix_to_json(m.action.Lm1),
        "L0": matrix_to_json(m.action.L0),
        "L1": matrix_to_json(m.action.L1),
    }


def module_from_json(data: Any, pointer: str = "", validate: bool = True) -> MobiusModule:
    _expect(isinstance(data, dict), "module must be an object", pointer or "/")
    _expect(data.get("schema") == SCHEMA, f"schema must be {SCHEMA!r}", f"{pointer}/schema")
    _expect(data.get("kind") == "module", "kind must be 'module'", f"{pointer}/kind")
    name = data.get("name")
    _expect(isinstance(name, str) and name, "name must be a nonempty string", f"{pointer}/name")
    gdata = data.get("group", {"free_rank": 0, "torsion": []})
    group = GradingGroup(gdata.get("free_rank", 0), gdata.get("torsion", []))
    weights = [_exponent_from(w, f"{pointer}/weights/{i}") for i, w in enumerate(data.get("weights", []))]
    _expect(len(weights) == data.get("dim"), "dim must match the number of weights", f"{pointer}/dim")
    degrees = data.get("degrees")
    space = GradedSpace(name, weights, degrees, group)
    action = Sl2Action(
        matrix_from_json(data.get("Lm1"), f"{pointer}/Lm1"),
        matrix_from_json(data.get("L0"), f"{pointer}/L0"),
        matrix_from_json(data.get("L1"), f"{pointer}/L1"),
    )
    try:
        module = MobiusModule(space, action)
    except ValueError as exc:
        raise SchemaError(str(exc), pointer or "/") from exc
    if validate:
        report = validate_sl2(module)
        if not module_valid(report):
            failed = ", ".join(c.check_id for c in report.failures)
            raise SchemaError(f"module fails structural validation: {failed}", pointer or "/")
    return module


# ---------------------------------------------------------------------------
# intertwiner tables

def table_to_json(t: IntertwinerTable) -> dict:
    modes = []
    for (i, j, n, k), vec in t.canonical_items():
        modes.append(
            {
                "i": i,
                "j": j,
                "n": exponent_str(n),
                "k": k,
                "value": [scalar_str(vec.get(b)) for b in range(t.w3.dim)],
            }
        )
    return {
        "schema": SCHEMA,
        "kind": "intertwiner",
        "type": {
            "w1": module_to_json(t.w1),
            "w2": module_to_json(t.w2),
            "w3": module_to_json(t.w3),
        },
        "modes": modes,
    }


def table_from_json(data: Any, pointer: str = "") -> IntertwinerTable:
    _expect(isinstance(data, dict), "table must be an object", pointer or "/")
    _expect(data.get("schema") == SCHEMA, f"schema must be {SCHEMA!r}", f"{pointer}/schema")
    _expect(data.get("kind") == "intertwiner", "kind must be 'intertwiner'", f"{pointer}/kind")
    tdata = data.get("type")
    _expect(isinstance(tdata, dict), "type must hold the three modules", f"{pointer}/type")
    w1 = module_from_json(tdata.get("w1"), f"{pointer}/type/w1")
    w2 = module_from_json(tdata.get("w2"), f"{pointer}/type/w2")
    w3 = module_from_json(tdata.get("w3"), f"{pointer}/type/w3")
    modes: dict = {}
    for idx, m in enumerate(data.get("modes", [])):
        p = f"{pointer}/modes/{idx}"
        _expect(isinstance(m, dict), "mode must be an object", p)
        i, j, k = m.get("i"), m.get("j"), m.get("k")
        _expect(isinstance(i, int) and 0 <= i < w1.dim, "bad first index", f"{p}/i")
        _expect(isinstance(j, int) and 0 <= j < w2.dim, "bad second index", f"{p}/j")
        _expect(isinstance(k, int) and k >= 0, "log power must be a natural number", f"{p}/k")
        n = _exponent_from(m.get("n"), f"{p}/n")
        value = m.get("value")
        _expect(isinstance(value, list) and len(value) == w3.dim, "value must list all components", f"{p}/value")
        vec = CoeffVector(
            w3.coeff_space,
            {b: _scalar_from(cell, f"{p}/value/{b}") for b, cell in enumerate(value)},
        )
        if not vec.is_zero():
            modes[(i, j, n, k)] = vec
    return IntertwinerTable(w1, w2, w3, modes)


# ---------------------------------------------------------------------------
# vertex tables

def vertex_to_json(vt: VertexTable) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "vertex",
        "modules": {
            "w1": module_to_json(vt.modules[1]),
            "w2": module_to_json(vt.modules[2]),
            "w3": module_to_json(vt.modules[3]),
        },
        "vector_weights": [exponent_str(w) for w in vt.vector_weights],
        "modes": [
            {"slot": slot, "v": v, "n": n, "matrix": matrix_to_json(mat)}
            for (slot, v, n), mat in sorted(vt.modes.items())
        ],
    }


def vertex_from_json(data: Any, pointer: str = "") -> VertexTable:
    _expect(isinstance(data, dict), "vertex table must be an object", pointer or "/")
    _expect(data.get("schema") == SCHEMA, f"schema must be {SCHEMA!r}", f"{pointer}/schema")
    _expect(data.get("kind") == "vertex", "kind must be 'vertex'", f"{pointer}/kind")
    mods = data.get("modules")
    _expect(isinstance(mods, dict), "modules must be an object", f"{pointer}/modules")
    w1 = module_from_json(mods.get("w1"), f"{pointer}/modules/w1")
    w2 = module_from_json(mods.get("w2"), f"{pointer}/modules/w2")
    w3 = module_from_json(mods.get("w3"), f"{pointer}/modules/w3")
    weights = [
        _exponent_from(w, f"{pointer}/vector_weights/{i}")
        for i, w in enumerate(data.get("vector_weights", []))
    ]
    modes: dict = {}
    for idx, m in enumerate(data.get("modes", [])):
        p = f"{pointer}/modes/{idx}"
        slot, v, n = m.get("slot"), m.get("v"), m.get("n")
        _expect(slot in (1, 2, 3), "slot must be 1, 2 or 3", f"{p}/slot")
        _expect(isinstance(v, int) and 0 <= v < len(weights), "bad vector index", f"{p}/v")
        _expect(isinstance(n, int), "vertex modes have integral n", f"{p}/n")
        modes[(slot, v, n)] = matrix_from_json(m.get("matrix"), f"{p}/matrix")
    return VertexTable(w1, w2, w3, weights, modes)


# ---------------------------------------------------------------------------
# top-level file helpers

_KIND_LOADERS = {
    "module": module_from_json,
    "intertwiner": table_from_json,
    "vertex": vertex_from_json,
}


def load_text(text: str):
    data = json.loads(text)
    _expect(isinstance(data, dict), "top level must be an object", "/")
    kind = data.get("kind")
    _expect(kind in _KIND_LOADERS, f"unknown kind {kind!r}", "/kind")
    return _KIND_LOADERS[kind](data)


def dump_object(obj) -> str:
    if isinstance(obj, MobiusModule):
        return canonical_dumps(module_to_json(obj))
    if isinstance(obj, IntertwinerTable):
        return canonical_dumps(table_to_json(obj))
    if isinstance(obj, VertexTable):
        return canonical_dumps(vertex_to_json(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")
