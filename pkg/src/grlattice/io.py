"""JSON file formats for algebras, modules and results.

Algebra::

    {"p": 2, "vertices": ["1", "2"],
     "arrows": [{"name": "a", "src": "1", "tgt": "2"}],
     "relations": [[{"coeff": 1, "path": ["a", "b"]}]]}

Module::

    {"dims": {"1": 1, "2": 2}, "maps": {"a": [[1], [0]]}}

Matrices are lists of rows; a map into a zero space is ``[]`` and a map out
of a zero space is a list of empty rows.
"""

from __future__ import annotations

import json
from typing import Any

from .linalg import MatrixFp, is_prime
from .quiver import AdmissibilityError, Algebra, Representation, validate


class SchemaError(ValueError):
    """Input does not match a file schema; ``path`` locates the offending value."""

    def __init__(self, message: str, path: str = "$", code: str = "schema_violation"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.code = code


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"not UTF-8 ({exc.reason} at byte {exc.start})", code="malformed_json") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{exc.msg} at line {exc.lineno} column {exc.colno}", code="malformed_json") from None


def _expect(value, kind, path):
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise SchemaError(f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}", path)
    return value


def algebra_to_json(alg: Algebra) -> dict:
    return {
        "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in alg.arrows],
        "p": alg.p,
        "relations": [
            [{"coeff": c, "path": list(path)} for c, path in rel.terms] for rel in alg.relations
        ],
        "vertices": list(alg.vertices),
    }


def algebra_from_json(data: Any) -> Algebra:
    _expect(data, dict, "$")
    p = _expect(data.get("p", 2), int, "$.p")
    if not is_prime(p):
        raise SchemaError(f"{p} is not prime", "$.p")
    vertices = _expect(data.get("vertices"), list, "$.vertices")
    for i, v in enumerate(vertices):
        _expect(v, str, f"$.vertices[{i}]")
    arrows = []
    for i, a in enumerate(_expect(data.get("arrows", []), list, "$.arrows")):
        path = f"$.arrows[{i}]"
        _expect(a, dict, path)
        arrows.append(
            tuple(_expect(a.get(k), str, f"{path}.{k}") for k in ("name", "src", "tgt"))
        )
    relations = []
    for i, rel in enumerate(_expect(data.get("relations", []), list, "$.relations")):
        terms = []
        for j, t in enumerate(_expect(rel, list, f"$.relations[{i}]")):
            path = f"$.relations[{i}][{j}]"
            _expect(t, dict, path)
            coeff = _expect(t.get("coeff", 1), int, f"{path}.coeff")
            steps = _expect(t.get("path"), list, f"{path}.path")
            for k, s in enumerate(steps):
                _expect(s, str, f"{path}.path[{k}]")
            terms.append((coeff, tuple(steps)))
        relations.append(terms)
    try:
        return Algebra.create(vertices, arrows, relations, p)
    except AdmissibilityError as exc:
        raise SchemaError(str(exc), "$.relations", code="not_admissible") from None
    except ValueError as exc:
        raise SchemaError(str(exc), "$") from None


def module_to_json(rep: Representation) -> dict:
    return {
        "dims": rep.dims_dict(),
        "maps": {a.name: m.to_lists() for a, m in zip(rep.alg.arrows, rep.maps)},
    }


def module_from_json(alg: Algebra, data: Any) -> Representation:
    _expect(data, dict, "$")
    dims_in = _expect(data.get("dims", {}), dict, "$.dims")
    for v, d in dims_in.items():
        if v not in alg.vertices:
            raise SchemaError(f"unknown vertex {v!r}", f"$.dims.{v}")
        if _expect(d, int, f"$.dims.{v}") < 0:
            raise SchemaError("negative dimension", f"$.dims.{v}")
    dims = {v: dims_in.get(v, 0) for v in alg.vertices}
    maps_in = _expect(data.get("maps", {}), dict, "$.maps")
    q = alg.quiver
    mats = []
    for name in maps_in:
        if name not in [a.name for a in alg.arrows]:
            raise SchemaError(f"unknown arrow {name!r}", f"$.maps.{name}")
    for a in alg.arrows:
        rows, cols = dims[a.tgt], dims[a.src]
        path = f"$.maps.{a.name}"
        m = maps_in.get(a.name)
        if m is None:
            mats.append(MatrixFp.zero(rows, cols, alg.p))
            continue
        _expect(m, list, path)
        if len(m) != rows:
            raise SchemaError(f"arrow {a.name}: {len(m)} rows, expected {rows}", path)
        for i, row in enumerate(m):
            _expect(row, list, f"{path}[{i}]")
            if len(row) != cols:
                raise SchemaError(f"arrow {a.name}: row {i} has {len(row)} entries, expected {cols}", f"{path}[{i}]")
            for j, x in enumerate(row):
                _expect(x, int, f"{path}[{i}][{j}]")
                if not 0 <= x < alg.p:
                    raise SchemaError(f"arrow {a.name}: entry {x} is not a residue mod {alg.p}", f"{path}[{i}][{j}]")
        mats.append(MatrixFp(rows, cols, tuple(tuple(r) for r in m), alg.p))
    rep = Representation(alg, tuple(dims[v] for v in alg.vertices), tuple(mats))
    problem = validate(alg, rep)
    if problem is not None:
        raise SchemaError(problem, "$.maps", code="relation_violation")
    return rep


def parse_algebra_file(data: bytes | str) -> Algebra:
    return algebra_from_json(_load(data))


def parse_module_file(alg: Algebra, data: bytes | str) -> Representation:
    return module_from_json(alg, _load(data))


def parse_json(data: bytes | str) -> Any:
    return _load(data)
