"""JSON schemas (draft 2020-12) for every CLI output document."""

_NUM = {"type": "number"}
_COMPLEX = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_COMPLEX_OR_NULL = {"oneOf": [_COMPLEX, {"type": "null"}]}
_TRI = {"oneOf": [{"type": "boolean"}, {"const": "ambiguous"}, {"type": "null"}]}

_ERROR = {
    "type": "object",
    "required": ["kind", "message"],
    "properties": {"kind": {"type": "string"}, "message": {"type": "string"}},
}

POINT = {
    "type": "object",
    "required": ["chart", "coords", "label"],
    "properties": {
        "chart": {"enum": ["affine", "U1", "U2"]},
        "coords": {"type": "array", "items": _NUM, "minItems": 4, "maxItems": 4},
        "label": {"type": "string"},
        "exact": {"type": "array", "items": {"type": ["string", "null"]}},
        "multiplicity": {"type": "integer", "minimum": 1},
    },
}

LINE = {
    "type": "object",
    "required": ["kind", "label"],
    "properties": {
        "kind": {"enum": ["slope", "vertical", "infinity"]},
        "label": {"type": "string"},
        "m": _COMPLEX,
        "b": _COMPLEX,
        "a": _COMPLEX,
    },
}

FIELD = {
    "type": "object",
    "required": ["P", "Q"],
    "properties": {"P": {"type": "string"}, "Q": {"type": "string"}},
}

CLASSIFICATION = {
    "type": "object",
    "required": ["kind", "eigenvalues", "ratio", "poincare_domain", "dicritical", "formal", "ambiguous"],
    "properties": {
        "kind": {"enum": ["NonDegenerateIrreducible", "SaddleNode", "ResonantNode", "LinearizableRational",
                          "Degenerate"]},
        "eigenvalues": {"type": "array", "items": _COMPLEX, "minItems": 2, "maxItems": 2},
        "ratio": _COMPLEX_OR_NULL,
        "poincare_domain": {"type": ["boolean", "null"]},
        "dicritical": {"type": ["boolean", "null"]},
        "formal": {"type": "boolean"},
        "ambiguous": {"type": "boolean"},
        "alternatives": {"type": "array", "items": {"type": "string"}},
        "notes": {"type": "array", "items": {"type": "string"}},
        "m": {"type": ["integer", "null"]},
        "lambda_formal": _COMPLEX_OR_NULL,
        "n": {"type": ["integer", "null"]},
        "c": _COMPLEX_OR_NULL,
        "p_over_q": {"type": "string"},
        "point": POINT,
    },
}

_ENVELOPE = {
    "command": {"type": "string"},
    "errors": {"type": "array", "items": _ERROR},
}


def _doc(required, properties):
    props = dict(_ENVELOPE)
    props.update(properties)
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "errors"] + list(required),
        "properties": props,
    }


_SING_SET = {
    "linf_invariant": {"type": "boolean"},
    "singularities": {"type": "array", "items": POINT},
    "tangency_points": {"type": "array", "items": POINT},
}

_INDEX_REPORT = {
    "type": "object",
    "required": ["line", "entries", "sum", "expected", "pass", "ambiguous", "errors"],
    "properties": {
        "line": LINE,
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "direction", "cs", "kind", "ambiguous"],
                "properties": {
                    "point": POINT,
                    "direction": {"type": "array", "items": _COMPLEX},
                    "cs": _COMPLEX,
                    "cs_exact": {"type": ["string", "null"]},
                    "kind": {"type": ["string", "null"]},
                    "ambiguous": {"type": "boolean"},
                },
            },
        },
        "sum": _COMPLEX_OR_NULL,
        "sum_exact": {"type": ["string", "null"]},
        "expected": {"type": "integer"},
        "pass": {"type": ["boolean", "null"]},
        "ambiguous": {"type": "boolean"},
        "errors": {"type": "array"},
    },
}

_CHARTS = {
    "type": "object",
    "required": ["nu", "dicritical", "tangent_cone", "chart1", "chart2", "divisor_singularities"],
    "properties": {
        "nu": {"type": "integer", "minimum": 1},
        "dicritical": {"type": "boolean"},
        "tangent_cone": {"type": "string"},
        "chart1": FIELD,
        "chart2": FIELD,
        "divisor_singularities": {"type": "array"},
        "tangency_points": {"type": "array"},
    },
}

_CURVATURE = {
    "C": {"type": "number", "maximum": 0},
    "A_cp1": {"type": "number", "minimum": 0},
    "A_phi": {"type": "number", "minimum": 0},
    "nu": {"type": "number", "minimum": 0},
    "R": {"type": "number", "exclusiveMinimum": 0},
    "box": {"type": "array", "items": _NUM, "minItems": 4, "maxItems": 4},
    "error_bound": {"type": "number", "minimum": 0},
    "quadrature_error": {"type": "number", "minimum": 0},
    "ode_error": {"type": "number", "minimum": 0},
    "coverage": {"type": "number", "minimum": 0, "maximum": 1},
    "converged": {"type": "boolean"},
    "samples": {"type": "integer", "minimum": 0},
    "warnings": {"type": "array", "items": {"type": "string"}},
}
_CURVATURE_REQUIRED = ["C", "A_cp1", "nu", "R", "error_bound", "samples", "warnings"]

_APPLICABILITY = {
    "type": "object",
    "required": ["theorem", "holds", "reasons", "conclusion", "tag"],
    "properties": {
        "theorem": {"type": "string"},
        "scope": {"type": ["string", "null"]},
        "holds": _TRI,
        "reasons": {"type": "array", "items": {"type": "object"}},
        "conclusion": {"type": ["string", "null"]},
        "tag": {"type": ["string", "null"]},
    },
}

SCHEMAS = {
    "singularities": _doc(["linf_invariant", "singularities", "tangency_points"], _SING_SET),
    "invariant-lines": _doc(["infinitely_many", "invariant_lines"], {
        "infinitely_many": {"type": "boolean"},
        "invariant_lines": {"type": "array", "items": LINE},
    }),
    "classify": _doc(["classification"], {"classification": CLASSIFICATION}),
    "cs-sum": _doc(["index_report"], {"index_report": _INDEX_REPORT}),
    "blowup": _doc(["blowup"], {"blowup": _CHARTS}),
    "resolve": _doc(["tree", "generalized_curve"], {
        "generalized_curve": {"enum": ["YES", "NO", "UNKNOWN"]},
        "tree": {
            "type": "object",
            "required": ["depth", "blowups", "complete", "dicritical", "ambiguous", "leaves", "root"],
            "properties": {
                "depth": {"type": "integer", "minimum": 0},
                "blowups": {"type": "integer", "minimum": 0},
                "complete": {"type": "boolean"},
                "dicritical": {"type": "boolean"},
                "ambiguous": {"type": "boolean"},
                "leaves": {"type": "array", "items": CLASSIFICATION},
                "root": {"type": "object"},
            },
        },
    }),
    "curvature": _doc(_CURVATURE_REQUIRED, _CURVATURE),
    "nu": _doc(_CURVATURE_REQUIRED, _CURVATURE),
    "fiber-count": _doc(["count", "raw", "R", "r_inner"], {
        "count": {"type": "integer"},
        "raw": _COMPLEX,
        "outer_winding": _COMPLEX,
        "inner_winding": _COMPLEX,
        "R": _NUM,
        "r_inner": _NUM,
        "min_modulus": _NUM,
        "nodes": {"type": "integer"},
    }),
    "verify-form": _doc(["defines_foliation", "residual", "residue_report"], {
        "defines_foliation": {"type": "boolean"},
        "residual": {"type": "string"},
        "cleared_form": {"type": "object", "required": ["A", "B"]},
        "residue_report": {
            "type": "object",
            "required": ["pattern"],
            "properties": {"pattern": {"enum": ["logarithmic", "poincare_dulac_pullback", "mixed"]}},
        },
        "form": {"type": "object"},
    }),
    "report": _doc(["field", "singularities", "invariant_lines", "theorems"], {
        "field": FIELD,
        "degree": {"type": "integer"},
        "linf_invariant": {"type": "boolean"},
        "singularities": {
            "type": "array",
            "items": {
                "allOf": [POINT, {
                    "type": "object",
                    "required": ["classification", "generalized_curve"],
                    "properties": {
                        "classification": {"oneOf": [CLASSIFICATION, {"type": "null"}]},
                        "generalized_curve": {"enum": ["YES", "NO", "UNKNOWN", None]},
                    },
                }],
            },
        },
        "invariant_lines": {"oneOf": [{"type": "array", "items": LINE}, {"const": "infinitely_many"}]},
        "theorems": {
            "type": "object",
            "required": ["thm1", "thm52", "thm2_affine", "thm2_projective"],
            "properties": {k: _APPLICABILITY for k in ("thm1", "thm52", "thm2_affine", "thm2_projective")},
        },
        "curvature": {"oneOf": [{"type": "object", "required": _CURVATURE_REQUIRED, "properties": _CURVATURE},
                                {"type": "null"}]},
        "index_sums": {"type": "array"},
        "ambiguous": {"type": "boolean"},
    }),
}

ERROR_DOCUMENT = _doc([], {})


def schema_for(command):
    return SCHEMAS.get(command, ERROR_DOCUMENT)
