"""Comparison of library cohomology against the Cech oracle, shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy

from spectral_pencil import BiPoly, CohClassSpace, Twist, gq, induced_map

from oracles.cech import oracle_induced_map
from oracles.symbolic import sym_scalar


def random_poly(rng, dz, de) -> BiPoly:
    """Random Gaussian-rational polynomial of bidegree at most ``(dz, de)``."""
    terms = {}
    for a in range(dz + 1):
        for b in range(de + 1):
            if rng.random() < 0.7:
                re = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
                terms[(a, b)] = gq(re, int(rng.integers(-3, 4)))
    return BiPoly.from_dict(terms)


def map_agrees(poly: BiPoly, src, dst, degree) -> bool:
    """Library ``induced_map`` equals the oracle's coboundary-reduced map, exactly."""
    lib = induced_map([[poly]], [src], [dst], degree)
    sbasis = CohClassSpace(Twist(*src), degree).basis
    dbasis = CohClassSpace(Twist(*dst), degree).basis
    oracle = oracle_induced_map([(m, sym_scalar(c)) for m, c in poly.terms()], src, dst, degree)
    expected = np.full((len(dbasis), len(sbasis)), sympy.Integer(0), dtype=object)
    for row_mono, col in oracle.items():
        for col_mono, v in col.items():
            expected[dbasis.index(row_mono), sbasis.index(col_mono)] = v
    if lib.shape != expected.shape:
        return False
    return all(sympy.expand(sym_scalar(a) - b) == 0 for a, b in zip(lib.flat, expected.flat))
