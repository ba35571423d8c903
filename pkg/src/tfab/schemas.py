"""JSON Schemas (draft 2020-12) for ``--json`` outputs, keyed by command."""

_CARD = {"oneOf": [{"type": "integer", "minimum": 0}, {"const": "omega"}]}
_HEIGHT = {"type": "string", "pattern": r"^(inf|\d+)$"}
_ELEMENT = {"type": "object",
            "patternProperties": {r"^\d+\.\d+$": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}},
            "additionalProperties": False}
_ERROR = {"type": "object", "required": ["error", "message"],
          "properties": {"error": {"type": "string"}, "message": {"type": "string"}}}

_LOCAL = {
    "type": "object",
    "required": ["case", "kind", "data"],
    "properties": {
        "case": {"enum": [1, 2, 3, 4]},
        "kind": {"enum": ["IndepWithInfinite", "IndepFinite", "SplitInfinite",
                          "FiniteLadder", "InfiniteLadder"]},
        "data": {"type": "object"},
    },
}

TWOTYPE = {
    "type": "object",
    "required": ["rank", "expression"],
    "properties": {
        "rank": {"enum": [1, 2]},
        "expression": {"type": "array", "minItems": 2, "maxItems": 2,
                       "items": {"type": "array", "items": {"type": "integer"}}},
        "char_single": {"type": "string"},
        "locals": {"type": "object", "patternProperties": {r"^\d+$": _LOCAL},
                   "additionalProperties": False},
        "default": _LOCAL,
    },
}

_RESIDUE = {"type": "object", "required": ["residue", "digits"],
            "properties": {"residue": {"type": "integer", "minimum": 0},
                           "digits": {"type": "string"}}}

SCHEMAS = {
    "char": {"type": "object", "required": ["characteristic", "htype"],
             "properties": {"characteristic": {"type": "string"}, "htype": {"type": "string"}}},
    "htype": {"type": "object", "required": ["htype"]},
    "meet": {"type": "object", "required": ["leq", "geq"],
             "properties": {"leq": {"type": "boolean"}, "geq": {"type": "boolean"}}},
    "height": {"type": "object",
               "oneOf": [{"required": ["prime", "height"],
                          "properties": {"prime": {"type": "integer"}, "height": _HEIGHT}},
                         {"required": ["characteristic", "htype"]}]},
    "reduce": {"type": "object", "required": ["input", "rank", "basis", "expression"],
               "properties": {"rank": {"type": "integer", "minimum": 0},
                              "basis": {"type": "array", "items": _ELEMENT},
                              "expression": {"type": "array",
                                             "items": {"type": "array",
                                                       "items": {"type": "integer"}}}}},
    "decision": {"type": "object", "required": ["relation", "value"],
                 "properties": {"relation": {"type": "string"}, "value": {"type": "boolean"}}},
    "profile": {
        "type": "object", "required": ["group", "szmielew", "types"],
        "properties": {
            "szmielew": {"type": "object", "required": ["D", "U", "Exp", "Tf"],
                         "properties": {"D": {"const": 0}, "U": {"const": 0},
                                        "Exp": {"const": "inf"},
                                        "Tf": {"type": "object",
                                               "required": ["default", "exceptions"],
                                               "properties": {
                                                   "default": _CARD,
                                                   "exceptions": {"type": "object",
                                                                  "additionalProperties": _CARD}}}}},
            "types": {"type": "array",
                      "items": {"type": "object", "required": ["htype", "rank", "independent"],
                                "properties": {"htype": {"type": "string"}, "rank": _CARD,
                                               "independent": _CARD}}},
        },
    },
    "realize2-ladder": {
        "type": "object", "required": ["p", "N", "a", "b", "ladder", "verification"],
        "properties": {"p": {"type": "integer"}, "N": {"type": "integer"},
                       "a": {"type": "array", "items": _RESIDUE},
                       "b": {"type": "array", "items": _RESIDUE},
                       "ladder": {"type": "string"},
                       "verification": {"type": "object", "required": ["ok", "steps"],
                                        "properties": {"ok": {"type": "boolean"}}}},
    },
    "realize2-twotype": {
        "type": "object", "required": ["N", "carrier", "x", "y", "roundtrip", "twotype"],
        "properties": {"x": _ELEMENT, "y": _ELEMENT, "roundtrip": {"type": "boolean"},
                       "twotype": TWOTYPE},
    },
    "extract2-pair": TWOTYPE,
    "extract2-ladder": {"type": "object",
                        "required": ["p", "N", "max_level", "ladder", "steps", "infinite"]},
    "uniq-check": {
        "type": "object", "required": ["reports", "verdict"],
        "properties": {"verdict": {"enum": ["PASS", "FAIL"]},
                       "reports": {"type": "array", "items": {
                           "type": "object",
                           "required": ["rung", "height", "reached", "raising", "classes",
                                        "indeterminate", "verdict"]}}},
    },
    "selftest": {
        "type": "object", "required": ["passed", "failed", "results"],
        "properties": {"results": {"type": "array", "items": {
            "type": "object",
            "required": ["criterion", "title", "passed", "seconds", "limit", "details"]}}},
    },
    "error": _ERROR,
}
