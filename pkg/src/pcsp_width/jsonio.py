"""Reading and writing structures and hypergraphs as JSON.

Errors carry a location: line and column for syntax errors, and the JSON
path of the offending value (``relations[0].tuples[3][1]``) otherwise.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from . import schemas
from .hypergraph import Hypergraph
from .structures import RelationalStructure


class InputError(ValueError):
    pass


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _validate(doc: Any, schema: dict, source: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InputError(f"{source}: at {_path(e.absolute_path)}: {e.message}")


def structure_from_obj(doc: Any, source: str = "<input>") -> RelationalStructure:
    _validate(doc, schemas.STRUCTURE, source)
    n = doc["domain_size"]
    rels = []
    for i, rel in enumerate(doc["relations"]):
        for j, t in enumerate(rel["tuples"]):
            if len(t) != rel["arity"]:
                raise InputError(f"{source}: at relations[{i}].tuples[{j}]: expected {rel['arity']} entries, got {len(t)}")
            for k, v in enumerate(t):
                if v >= n:
                    raise InputError(f"{source}: at relations[{i}].tuples[{j}][{k}]: index {v} out of range [0, {n})")
        rels.append((rel["name"], rel["arity"], [tuple(t) for t in rel["tuples"]]))
    names = [r[0] for r in rels]
    if len(set(names)) != len(names):
        raise InputError(f"{source}: duplicate relation names {names}")
    if "vertex_names" in doc and len(doc["vertex_names"]) != n:
        raise InputError(f"{source}: at vertex_names: expected {n} names")
    return RelationalStructure.build(n, rels)


def structure_to_obj(A: RelationalStructure) -> dict:
    return {
        "domain_size": A.domain_size,
        "relations": [
            {"name": name, "arity": arity, "tuples": [list(t) for t in rel]}
            for (name, arity), rel in zip(A.signature.symbols, A.relations)
        ],
    }


def hypergraph_from_obj(doc: Any, source: str = "<input>") -> Hypergraph:
    _validate(doc, schemas.HYPERGRAPH, source)
    n, r = doc["n"], doc["r"]
    seen = set()
    for j, e in enumerate(doc["edges"]):
        if len(e) != r:
            raise InputError(f"{source}: at edges[{j}]: expected {r} vertices, got {len(e)}")
        for k, v in enumerate(e):
            if v >= n:
                raise InputError(f"{source}: at edges[{j}][{k}]: index {v} out of range [0, {n})")
        if len(set(e)) != r:
            raise InputError(f"{source}: at edges[{j}]: repeated vertex")
        key = tuple(sorted(e))
        if key in seen:
            raise InputError(f"{source}: at edges[{j}]: duplicate edge")
        seen.add(key)
    return Hypergraph(n, r, doc["edges"])


def hypergraph_to_obj(H: Hypergraph) -> dict:
    return {"n": H.n, "r": H.r, "edges": [list(e) for e in H.edges]}


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def load_structure(path: str | Path) -> RelationalStructure:
    return structure_from_obj(parse_json(read_text(path), str(path)), str(path))


def load_hypergraph(path: str | Path) -> Hypergraph:
    return hypergraph_from_obj(parse_json(read_text(path), str(path)), str(path))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
