"""JSON schemas (draft 2020-12) for the CLI's machine-readable output."""

_opt_int = {"type": ["integer", "null"]}

TRACE_STEP = {
    "type": "object",
    "required": ["key", "case", "pd", "reg", "children"],
    "properties": {
        "key": {"type": "string", "pattern": "^0x[0-9a-f]+$"},
        "case": {"enum": ["level>=2", "level=1", "components", "oracle", "zero"]},
        "pd": _opt_int,
        "reg": _opt_int,
        "z0": {"type": ["string", "null"]},
        "s": _opt_int,
        "params": {"type": "object", "additionalProperties": {"type": "integer"}},
        "children": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["key", "pd", "reg"],
                "properties": {"key": {"type": "string"}, "pd": _opt_int, "reg": _opt_int},
            },
        },
        "reason": {"type": ["string", "null"]},
    },
}

INVARIANT_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "nu3", "pd_ideal", "reg_ideal", "pd_quotient", "reg_quotient",
                 "proximal", "method", "trace", "warnings", "n", "edges", "kind", "field"],
    "properties": {
        "schema": {"const": 1},
        "nu3": {"type": "integer", "minimum": 0},
        "pd_ideal": _opt_int,
        "reg_ideal": _opt_int,
        "pd_quotient": _opt_int,
        "reg_quotient": _opt_int,
        "closed_form_reg_quotient": _opt_int,
        "proximal": {"type": ["boolean", "null"]},
        "method": {"enum": ["recursion", "oracle", "closed-form", "mixed"]},
        "n": {"type": "integer"},
        "edges": {"type": "integer"},
        "kind": {"enum": ["forest", "unicyclic", "other"]},
        "cycle_length": _opt_int,
        "field": {"type": "integer"},
        "trace": {"type": "array", "items": TRACE_STEP},
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
}

BETTI_TABLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["field", "ideal_degrees", "entries", "pd_ideal", "reg_ideal", "pd_quotient", "reg_quotient"],
    "properties": {
        "schema": {"const": 1},
        "field": {"type": "integer"},
        "ideal_degrees": {"type": "object", "additionalProperties": {"type": "integer"}},
        "entries": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 3, "maxItems": 3},
        },
        "pd_ideal": _opt_int,
        "reg_ideal": _opt_int,
        "pd_quotient": _opt_int,
        "reg_quotient": _opt_int,
    },
}

NU_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "t", "nu", "witness"],
    "properties": {
        "schema": {"const": 1},
        "t": {"type": "integer", "minimum": 2},
        "nu": {"type": "integer", "minimum": 0},
        "recursion": _opt_int,
        "witness": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
    },
}

VERIFY_SUMMARY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "family", "count", "seed", "ok", "checks", "problems"],
    "properties": {
        "schema": {"const": 1},
        "family": {"enum": ["tree", "unicyclic"]},
        "n_range": {"type": "array", "items": {"type": "integer"}},
        "count": {"type": "integer"},
        "seed": {"type": "integer"},
        "primes": {"type": "array", "items": {"type": "integer"}},
        "ok": {"type": "boolean"},
        "checks": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": {"type": "integer"}},
        },
        "branches": {"type": "object", "additionalProperties": {"type": "integer"}},
        "problems": {"type": "array", "items": {"type": "object"}},
    },
}

PROBE_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["t", "n", "nu_t", "reg_quotient", "predicted", "holds"],
    "properties": {
        "t": {"type": "integer"},
        "n": {"type": "integer"},
        "nu_t": {"type": "integer"},
        "reg_quotient": _opt_int,
        "predicted": _opt_int,
        "holds": {"type": ["boolean", "null"]},
    },
}
