"""JSON encodings of quadruples, pencils and derived data.

Matrices are lists of rows; each entry is a ``[re, im]`` pair. On the exact
backend the parts are strings such as ``"-3/4"``, on the float backend they
are numbers. Output is deterministic: keys are sorted and floats are written
with 17 significant digits.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .algebra import EXACT, FLOAT, BiPoly, zeros
from .algebra.scalars import GaussianRational
from .errors import SchemaError
from .loop_orbit import RationalMap
from .pencil import Pencil, Quadruple

# -- scalars ------------------------------------------------------------------------------


def encode_scalar(x):
    if isinstance(x, GaussianRational):
        return [str(x.re), str(x.im)]
    z = complex(x)
    return [z.real, z.imag]


def _part(v, backend, field):
    if backend == EXACT:
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise SchemaError(f"exact entries must be strings like '3/4', got {v!r}", field)
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"cannot parse {v!r} as a rational", field) from None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"float entries must be numbers, got {v!r}", field)
    return float(v)


def decode_scalar(v, backend: str, field: str = "value"):
    if not isinstance(v, list) or len(v) != 2:
        raise SchemaError("scalar must be a [re, im] pair", field)
    re, im = _part(v[0], backend, field), _part(v[1], backend, field)
    return GaussianRational(re, im) if backend == EXACT else complex(re, im)


def encode_matrix(a) -> list:
    a = np.asarray(a)
    return [[encode_scalar(x) for x in row] for row in a]


def decode_matrix(rows, shape, backend: str, field: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise SchemaError(f"expected {shape[0]} rows", field)
    out = zeros(shape, backend)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise SchemaError(f"row {i} must have {shape[1]} entries", f"{field}[{i}]")
        for j, v in enumerate(row):
            out[i, j] = decode_scalar(v, backend, f"{field}[{i}][{j}]")
    return out


# -- deterministic JSON ---------------------------------------------------------------------


def _dump(obj, out: list):
    if obj is None or isinstance(obj, (bool, np.bool_)):
        out.append(json.dumps(None if obj is None else bool(obj)))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        out.append(format(x, ".17g") if math.isfinite(x) else json.dumps(str(x)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)) + ":")
            _dump(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _dump(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Byte-stable JSON: sorted keys, no whitespace, ``%.17g`` floats."""
    out: list = []
    _dump(obj, out)
    return "".join(out)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", "<root>") from None


# -- quadruples and pencils --------------------------------------------------------------------


def _header(doc):
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object", "<root>")
    for key in ("k", "l"):
        v = doc.get(key)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise SchemaError("must be a non-negative integer", key)
    backend = doc.get("backend", EXACT)
    if backend not in (EXACT, FLOAT):
        raise SchemaError("must be 'exact' or 'float'", "backend")
    return doc["k"], doc["l"], backend


def quadruple_to_json(q: Quadruple) -> dict:
    return {"k": q.k, "l": q.l, "backend": q.backend,
            "X": encode_matrix(q.X), "Y": encode_matrix(q.Y), "F": encode_matrix(q.F), "G": encode_matrix(q.G)}


def pencil_to_json(p: Pencil) -> dict:
    return {"k": p.k, "l": p.l, "backend": p.backend,
            "A0": encode_matrix(p.A0), "A1": encode_matrix(p.A1),
            "B0": encode_matrix(p.B0), "B1": encode_matrix(p.B1)}


def _require(doc, key):
    if key not in doc:
        raise SchemaError("missing field", key)
    return doc[key]


def quadruple_from_json(doc) -> Quadruple:
    k, l, be = _header(doc)
    shapes = {"X": (k, k), "Y": (l, l), "F": (k, l), "G": (l, k)}
    return Quadruple(**{name: decode_matrix(_require(doc, name), s, be, name) for name, s in shapes.items()})


def pencil_from_json(doc) -> Pencil:
    k, l, be = _header(doc)
    n = k + l
    shapes = {"A0": (n, k), "A1": (n, k), "B0": (n, l), "B1": (n, l)}
    return Pencil(k, l, **{name: decode_matrix(_require(doc, name), s, be, name) for name, s in shapes.items()})


def load_instance(doc):
    """Quadruple if the document has ``X``, otherwise Pencil."""
    if isinstance(doc, dict) and "A0" in doc:
        return pencil_from_json(doc)
    return quadruple_from_json(doc)


# -- derived data ---------------------------------------------------------------------------


def bipoly_to_json(p: BiPoly) -> dict:
    """Coefficient table ``{"i,j": [re, im]}`` plus a readable string."""
    return {"terms": {f"{a},{b}": encode_scalar(c) for (a, b), c in p.terms()}, "text": str(p)}


def rational_map_to_json(r) -> dict:
    return {"backend": r.backend, "l": r.l, "Y": encode_matrix(r.Y),
            "poles": [encode_scalar(z) for z in r.poles],
            "residues": [encode_matrix(m) for m in r.residues]}


def rational_map_from_json(doc):
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object", "<root>")
    l = doc.get("l")
    if isinstance(l, bool) or not isinstance(l, int) or l < 0:
        raise SchemaError("must be a non-negative integer", "l")
    be = doc.get("backend", EXACT)
    if be not in (EXACT, FLOAT):
        raise SchemaError("must be 'exact' or 'float'", "backend")
    poles = _require(doc, "poles")
    residues = _require(doc, "residues")
    if not isinstance(poles, list) or not isinstance(residues, list) or len(poles) != len(residues):
        raise SchemaError("poles and residues must be lists of equal length", "residues")
    return RationalMap(decode_matrix(_require(doc, "Y"), (l, l), be, "Y"),
                       tuple(decode_scalar(z, be, f"poles[{i}]") for i, z in enumerate(poles)),
                       tuple(decode_matrix(m, (l, l), be, f"residues[{i}]") for i, m in enumerate(residues)))


def orbit_spec_to_json(spec) -> dict:
    return {"poles": [encode_scalar(z) for z in spec.poles], "Q0": spec.Q0.to_json(),
            "residue_classes": [c.to_json() for c in spec.residue_classes], "ranks": list(spec.ranks),
            "semisimple": spec.semisimple}
