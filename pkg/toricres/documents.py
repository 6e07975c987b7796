"""JSON wire format of the toricres command line.

Input documents describe a polytope, a characteristic pair, a hyper
characteristic pair or an embedded polytope. Output documents wrap a
payload with the tool version and the configuration used. Output is
canonical: sorted keys, fixed list orders and integers beyond the safe
JSON range written as decimal strings.
"""

import json
from fractions import Fraction

import jsonschema

from . import __version__
from .charpair import HyperCharPair, RCharPair
from .cobordism import EmbeddedPolytope
from .errors import InputError
from .polytope import SimplePolytope

__all__ = [
    "SAFE_JSON_INTEGER",
    "INPUT_SCHEMA",
    "INPUT_KINDS",
    "OUTPUT_KINDS",
    "load_document",
    "parse_document",
    "build",
    "dumps",
    "output_document",
    "encode_int",
    "encode_vector",
    "encode_rational",
    "polytope_document",
    "pair_document",
    "embedded_document",
    "face_document",
    "choice_document",
    "trace_document",
    "certificate_document",
]

SAFE_JSON_INTEGER = 2**53 - 1

INPUT_KINDS = ("polytope", "rcharpair", "hypercharpair", "embedded_polytope")
OUTPUT_KINDS = ("report", "orders", "locus", "blowup_result", "trace", "certificate")

INPUT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "toricres input document",
    "type": "object",
    "required": ["kind", "dim", "facets", "vertices"],
    "properties": {
        "kind": {"enum": list(INPUT_KINDS)},
        "dim": {"type": "integer", "minimum": 1},
        "facets": {"type": "array", "minItems": 1, "items": {"type": "string", "minLength": 1}},
        "vertices": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "vectors": {"type": "array", "items": {"type": "array", "minItems": 1, "items": {"$ref": "#/definitions/integer"}}},
        "coordinates": {"type": "array", "items": {"type": "array", "minItems": 1, "items": {"$ref": "#/definitions/rational"}}},
        "metadata": {"type": "object"},
    },
    "definitions": {
        "integer": {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]},
        "rational": {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+(/0*[1-9][0-9]*)?$"}]},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"enum": ["rcharpair", "hypercharpair"]}}}, "then": {"required": ["vectors"]}},
        {"if": {"properties": {"kind": {"const": "embedded_polytope"}}}, "then": {"required": ["coordinates"]}},
    ],
}

_validator = jsonschema.Draft7Validator(INPUT_SCHEMA)


def _where(error):
    path = "/".join(str(part) for part in error.absolute_path)
    return f"at /{path}" if path else "at top level"


def parse_document(data, source="<input>"):
    """Check ``data`` against the input schema and return it.

    Output documents of kind ``blowup_result`` are accepted too; their
    ``payload.pair`` is the document returned.
    """
    if isinstance(data, dict) and isinstance(data.get("payload"), dict) and "pair" in data["payload"]:
        data = data["payload"]["pair"]
    errors = sorted(_validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise InputError(f"{source}: schema violation {_where(first)}: {first.message}")
    return data


def load_document(stream, source=None):
    """Read and schema-check a JSON document from a path or an open text stream."""
    source = source or getattr(stream, "name", str(stream))
    try:
        if hasattr(stream, "read"):
            text = stream.read()
        else:
            with open(stream, "r", encoding="utf-8") as f:
                text = f.read()
    except OSError as exc:
        raise InputError(f"{source}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{source}: not valid UTF-8 at byte {exc.start}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(data, source)


def _polytope(doc):
    return SimplePolytope(doc["dim"], doc["facets"], doc["vertices"])


def build(doc, kind=None):
    """Turn a schema-checked document into a library object.

    :param kind: interpret the document as this kind instead of its own
    """
    kind = kind or doc["kind"]
    if kind not in INPUT_KINDS:
        raise InputError(f"unknown kind {kind!r}")
    polytope = _polytope(doc)
    if kind == "polytope":
        return polytope
    if kind == "embedded_polytope":
        if "coordinates" not in doc:
            raise InputError("embedded_polytope needs coordinates")
        return EmbeddedPolytope(polytope, [[Fraction(x) for x in point] for point in doc["coordinates"]])
    if "vectors" not in doc:
        raise InputError(f"{kind} needs vectors")
    vectors = [[int(x) for x in vector] for vector in doc["vectors"]]
    if kind == "rcharpair":
        return RCharPair(polytope, vectors)
    return HyperCharPair(polytope, vectors)


def encode_int(value):
    value = int(value)
    return value if abs(value) <= SAFE_JSON_INTEGER else str(value)


def encode_vector(vector):
    return [encode_int(x) for x in vector]


def encode_rational(value):
    return str(Fraction(value))


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def output_document(kind, payload, config=None):
    if kind not in OUTPUT_KINDS:
        raise ValueError(f"unknown output kind {kind!r}")
    return {"kind": kind, "tool_version": __version__, "config": config or {}, "payload": payload}


def polytope_document(polytope, kind="polytope"):
    return {
        "kind": kind,
        "dim": polytope.dim,
        "facets": list(polytope.facet_names),
        "vertices": [sorted(vertex) for vertex in polytope.vertices],
    }


def pair_document(pair):
    kind = "hypercharpair" if isinstance(pair, HyperCharPair) else "rcharpair"
    doc = polytope_document(pair.polytope, kind)
    doc["vectors"] = [encode_vector(vector) for vector in pair.vectors]
    return doc


def embedded_document(ep):
    doc = polytope_document(ep.polytope, "embedded_polytope")
    doc["coordinates"] = [[encode_rational(x) for x in point] for point in ep.coordinates]
    return doc


def face_document(face):
    return {"facets": list(face.key), "names": face.names()}


def choice_document(choice):
    return {
        "face": face_document(choice.face),
        "coefficients": [encode_rational(c) for c in choice.coefficients],
        "lattice_point": encode_vector(choice.lattice_point),
        "d": encode_int(choice.d),
        "new_vector": encode_vector(choice.new_vector),
        "fallback": choice.fallback,
    }


def _summary_document(summary):
    return {
        "num_facets": summary.num_facets,
        "num_vertices": summary.num_vertices,
        "vertex_orders": encode_vector(summary.vertex_orders),
        "singular_faces": summary.singular_faces,
    }


def trace_document(trace):
    steps = []
    for step in trace.steps:
        steps.append(
            {
                "index": step.index,
                "order": encode_int(step.order),
                "choice": choice_document(step.choice),
                "predicted": [{"vertex": index, "order": encode_int(order)} for index, order in sorted(step.predicted.items())],
                "before": _summary_document(step.before_summary),
                "after": _summary_document(step.after_summary),
                "result": pair_document(step.after),
            }
        )
    return {
        "config": trace.config.to_dict(),
        "initial": pair_document(trace.initial),
        "steps": steps,
        "num_steps": trace.num_steps,
        "complete": trace.complete,
        "final": pair_document(trace.final) if trace.final is not None else None,
    }


def certificate_document(certificate):
    return {
        "boundary": pair_document(certificate.boundary),
        "transverse_vector": encode_vector(certificate.transverse_vector),
        "transverse_source": certificate.transverse_source,
        "prism": pair_document(certificate.prism),
        "trace": trace_document(certificate.trace),
        "locality": [
            {"step": entry.step, "face": face_document(entry.face), "cap": entry.cap, "literal": entry.literal}
            for entry in certificate.locality
        ],
    }
