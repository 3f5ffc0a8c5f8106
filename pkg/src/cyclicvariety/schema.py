"""JSON schemas for the machine-readable reports."""

INT_LIST = {"type": "array", "items": {"type": "integer"}}

CERTIFICATE = {
    "type": "object",
    "required": ["T", "t", "n", "q", "s", "outcome", "witness", "tuples_checked"],
    "additionalProperties": False,
    "properties": {
        "T": INT_LIST,
        "t": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "q": {"type": "integer", "minimum": 2},
        "s": {"type": "integer", "minimum": 1},
        "outcome": {"enum": ["pass", "witness"]},
        "witness": INT_LIST,
        "tuples_checked": {"type": "integer", "minimum": 0},
    },
}

DISTANCE = {
    "type": "object",
    "required": ["kind", "value"],
    "properties": {"kind": {"enum": ["exact", "lower_bound"]}, "value": {"type": "integer", "minimum": 1}},
}

BOUND_REPORT = {
    "type": "object",
    "required": ["code", "bch", "ht", "variety", "certificates", "brute_force"],
    "properties": {
        "code": {
            "type": "object",
            "required": ["n", "q", "k", "S", "field", "alpha", "g"],
            "properties": {
                "n": {"type": "integer"},
                "q": {"type": "integer"},
                "k": {"type": "integer"},
                "S": INT_LIST,
                "field": {"type": "string"},
                "alpha": {"type": "string"},
                "g": {"type": "array"},
            },
        },
        "bch": {"type": "integer"},
        "ht": {"type": "integer"},
        "variety": {"oneOf": [DISTANCE, {"type": "null"}]},
        "variety_T": {"oneOf": [INT_LIST, {"type": "null"}]},
        "certificates": {"type": "array", "items": CERTIFICATE},
        "brute_force": {"type": ["integer", "null"]},
    },
}

RUN_REPORT = {
    "type": "object",
    "required": ["command", "inputs", "result", "timing", "budgets"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {},
        "timing": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["wall_ms"], "properties": {"wall_ms": {"type": "number"}}},
            ]
        },
        "budgets": {
            "type": "object",
            "required": ["points", "tuples", "field", "messages"],
            "properties": {k: {"type": "integer"} for k in ("points", "tuples", "field", "messages")},
        },
    },
}

# result payload schemas by subcommand, where one is fixed
RESULT_SCHEMAS = {
    "certify": CERTIFICATE,
    "code": BOUND_REPORT,
}
