import json

import numpy as np
import pytest
from conftest import quad

from spectral_pencil import EXACT, FLOAT, RationalMap, gq, to_exact
from spectral_pencil.cli.generate import random_quadruple
from spectral_pencil.errors import SchemaError
from spectral_pencil.io import (decode_scalar, dumps, encode_scalar, load_instance, loads, pencil_from_json,
                                pencil_to_json, quadruple_from_json, quadruple_to_json, rational_map_from_json,
                                rational_map_to_json)
from spectral_pencil.pencil import Pencil, Quadruple


def same_quadruple(a, b):
    return a.backend == b.backend and all(np.array_equal(getattr(a, n), getattr(b, n)) for n in "XYFG")


def test_scalar_encoding():
    assert encode_scalar(gq(-3, 1) / 4) == ["-3/4", "1/4"]
    assert encode_scalar(1.5 - 2j) == [1.5, -2.0]
    assert decode_scalar(["-3/4", "1/4"], EXACT) == gq(-3, 1) / 4
    assert decode_scalar(["2", 0], EXACT) == 2
    assert decode_scalar([1, -2.5], FLOAT) == 1 - 2.5j


def test_quadruple_round_trip(rng):
    for backend in (EXACT, FLOAT):
        for _ in range(5):
            k, l = (int(v) for v in rng.integers(1, 4, 2))
            q = random_quadruple(rng, k, l, backend)
            back = quadruple_from_json(loads(dumps(quadruple_to_json(q))))
            assert same_quadruple(q, back)


def test_float_round_trip_is_bit_exact(rng):
    q = random_quadruple(rng, 2, 2, FLOAT)
    back = quadruple_from_json(loads(dumps(quadruple_to_json(q))))
    assert all(np.array_equal(getattr(q, n).view(np.float64), getattr(back, n).view(np.float64)) for n in "XYFG")


def test_pencil_round_trip():
    p = Pencil(1, 1, to_exact([[1], [0]]), to_exact([[0], [1]]), to_exact([[0], [2]]), to_exact([[1], [0]]))
    back = load_instance(loads(dumps(pencil_to_json(p))))
    assert isinstance(back, Pencil)
    assert all(np.array_equal(getattr(p, n), getattr(back, n)) for n in ("A0", "A1", "B0", "B1"))
    assert isinstance(load_instance(quadruple_to_json(quad([[0]], [[0]], [[1]], [[1]]))), Quadruple)


def test_rational_map_round_trip():
    one = to_exact([[1, 0], [0, 0]])
    r = RationalMap(to_exact([[1, 2], [3, 4]]), (gq(0), gq(1, 1)), (one, one * gq(0, 2)))
    back = rational_map_from_json(loads(dumps(rational_map_to_json(r))))
    assert back.poles == r.poles and all(np.array_equal(a, b) for a, b in zip(back.residues, r.residues))


def test_dumps_is_deterministic_and_sorted():
    doc = {"b": [1.0, 0.1, 2], "a": {"z": None, "y": True}}
    assert dumps(doc) == '{"a":{"y":true,"z":null},"b":[1,0.10000000000000001,2]}'
    assert json.loads(dumps(doc)) == doc


@pytest.mark.parametrize("doc,field", [
    ({"l": 1}, "k"),
    ({"k": -1, "l": 1}, "k"),
    ({"k": 1, "l": True}, "l"),
    ({"k": 1, "l": 1, "backend": "mpmath"}, "backend"),
    ({"k": 1, "l": 1, "X": [[["0", "0"]]], "Y": [[["0", "0"]]], "F": [[["1", "0"]]]}, "G"),
    ({"k": 1, "l": 1, "X": [[["0", "0"]]], "Y": [], "F": [[["1", "0"]]], "G": [[["1", "0"]]]}, "Y"),
    ({"k": 1, "l": 2, "X": [[["0", "0"]]], "Y": [[["0", "0"], ["0", "0"]], [["0", "0"]]],
      "F": [[["1", "0"], ["0", "0"]]], "G": [[["1", "0"]], [["0", "0"]]]}, "Y[1]"),
    ({"k": 1, "l": 1, "X": [[["0", "0"]]], "Y": [[["0", "0"]]], "F": [[["1/0", "0"]]], "G": [[["1", "0"]]]}, "F[0][0]"),
    ({"k": 1, "l": 1, "X": [[["0", "0"]]], "Y": [[["0", "0"]]], "F": [[["1", "0"]]], "G": [[1.5]]}, "G[0][0]"),
    ({"k": 1, "l": 1, "backend": "float", "X": [[["0", 0]]], "Y": [[[0, 0]]], "F": [[[1, 0]]],
      "G": [[[1, 0]]]}, "X[0][0]"),
])
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError) as info:
        load_instance(doc)
    assert info.value.field == field
    assert str(info.value).startswith(field + ":")


def test_schema_errors_for_documents():
    with pytest.raises(SchemaError) as info:
        loads('{"k": 1,\n "l": }')
    assert "line 2" in str(info.value)
    with pytest.raises(SchemaError):
        load_instance([1, 2])
    with pytest.raises(SchemaError):
        pencil_from_json({"k": 1, "l": 1, "A0": [[["1", "0"]]]})
    with pytest.raises(SchemaError):
        rational_map_from_json({"l": 1, "Y": [[["0", "0"]]], "poles": [["0", "0"]], "residues": []})
