"""JSON schemas for the structure and hypergraph formats and for CLI reports."""

from __future__ import annotations

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
INDEX = {"type": "integer", "minimum": 0}

STRUCTURE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "relational structure",
    "type": "object",
    "required": ["domain_size", "relations"],
    "properties": {
        "domain_size": {"type": "integer", "minimum": 1},
        "vertex_names": {"type": "array", "items": {"type": "string"}},
        "relations": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "arity", "tuples"],
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "arity": {"type": "integer", "minimum": 1},
                    "tuples": {"type": "array", "items": {"type": "array", "items": INDEX}},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

HYPERGRAPH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "uniform hypergraph",
    "type": "object",
    "required": ["n", "r", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "r": {"type": "integer", "minimum": 2},
        "edges": {"type": "array", "items": {"type": "array", "items": INDEX}},
    },
    "additionalProperties": False,
}

_ENVELOPE = {
    "version": {"type": "string"},
    "command": {"type": "string"},
    "config": {"type": "object"},
    "generated_at": {"type": "string"},
}


def _report(title: str, required: list[str], props: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": title,
        "type": "object",
        "required": ["version", "command", "config", *required],
        "properties": {**_ENVELOPE, **props},
    }


APERIODICITY_REPORT = _report(
    "aperiodicity report",
    ["aperiodic", "mixing_time", "status", "certificate"],
    {
        "aperiodic": {"type": ["boolean", "null"]},
        "mixing_time": {"type": ["integer", "null"], "minimum": 1},
        "status": {"type": "string"},
        "certificate": {"type": "object"},
        "upper_bound_used": {"type": ["integer", "null"]},
        "digraph_criterion": {"type": "object"},
    },
)

FIBROSITY_REPORT = _report(
    "hypergraph statistics",
    ["tau", "n", "m", "fbr_tau", "fbr_max", "pendency", "girth", "sdr_total"],
    {
        "tau": {"type": "integer", "minimum": 1},
        "n": {"type": "integer"},
        "m": {"type": "integer"},
        "fbr_tau": {"type": "integer"},
        "fbr_max": {"type": "integer"},
        "pendency": {"type": "integer"},
        "link_count": {"type": "integer"},
        "girth": {"type": ["integer", "null"]},
        "sdr_total": RATIONAL,
        "sdr_identity": {"type": "boolean"},
        "sparsity": {"type": "object"},
    },
)

GIRTH_REPORT = _report("girth report", ["girth"], {"girth": {"type": ["integer", "null"]}})

LC_REPORT = _report(
    "local consistency report",
    ["answer", "kappa"],
    {"answer": {"enum": ["YES", "NO"]}, "kappa": {"type": "integer", "minimum": 0}},
)

HOM_REPORT = _report(
    "homomorphism report",
    ["found"],
    {"found": {"type": "boolean"}, "map": {"type": ["array", "null"], "items": INDEX}},
)

GAP_REPORT = _report("consistency gap report", ["holds"], {"holds": {"type": "boolean"}})

GENERATION_REPORT = _report(
    "generation report",
    ["seed", "attempts", "success", "verified"],
    {
        "seed": {"type": "integer"},
        "attempts": {"type": "integer"},
        "success": {"type": "boolean"},
        "verified": {"type": "object"},
    },
)

PARAMS_REPORT = _report(
    "parameter report",
    ["ell", "nu", "theta", "mu", "delta"],
    {k: {"type": "string"} for k in ("ell", "nu", "theta", "mu", "delta")},
)

FOOLING_REPORT = _report(
    "fooling report",
    ["fooled", "fooled_kappas", "tau", "lc", "non_homomorphism"],
    {
        "fooled": {"type": "boolean"},
        "fooled_kappas": {"type": "array", "items": {"type": "integer"}},
        "tau": {"type": ["integer", "null"]},
        "lc": {"type": "object"},
        "non_homomorphism": {"type": "object"},
    },
)

REPORTS = {
    "aperiodicity": APERIODICITY_REPORT,
    "mixing-time": APERIODICITY_REPORT,
    "hg-stats": FIBROSITY_REPORT,
    "girth": GIRTH_REPORT,
    "generate": GENERATION_REPORT,
    "lc": LC_REPORT,
    "hom": HOM_REPORT,
    "gap": GAP_REPORT,
    "fool": FOOLING_REPORT,
    "params": PARAMS_REPORT,
}
