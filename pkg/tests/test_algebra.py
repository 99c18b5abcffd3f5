from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from spectral_pencil import (EXACT, FLOAT, BiPoly, ConjClassInvariant, GaussianRational, ToleranceConfig,
                             adjugate, bipoly_divide, bipoly_gcd, charpoly, det, diagonalize, eigen, gq, inv,
                             nullspace, rank, to_exact, zeros)
from spectral_pencil.errors import BackendUnsupported, NonSplitting, NotDiagonalizable

from oracles.symbolic import E, Z, sym_bipoly, sym_matrix, sym_scalar

zeta, eta = BiPoly.zeta(), BiPoly.eta()


def random_exact(rng, shape, height=5):
    re = rng.integers(-height, height + 1, shape)
    im = rng.integers(-height, height + 1, shape)
    den = rng.integers(1, 4, shape)
    out = zeros(shape, EXACT)
    for idx in np.ndindex(*shape):
        out[idx] = GaussianRational(Fraction(int(re[idx]), int(den[idx])), int(im[idx]))
    return out


# -- scalars --------------------------------------------------------------------------------

rational = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 20))
gaussian = st.builds(GaussianRational, rational, rational)


@given(gaussian, gaussian, gaussian)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


def test_gaussian_basics():
    i = gq(0, 1)
    assert i * i == -1
    assert complex(gq(Fraction(1, 2), -3)) == 0.5 - 3j
    assert str(gq(Fraction(-3, 4), 1)) == "-3/4+1i"
    assert str(gq(2, 0)) == "2" and str(gq(0, -1)) == "-1i"
    assert gq(2, 0) == 2 and hash(gq(2, 0)) == hash(gq(2, 0))


def test_tolerance_config_rejects_nonpositive():
    with pytest.raises(ValueError):
        ToleranceConfig(rank_rel_tol=0)


# -- rank --------------------------------------------------------------------------------------


def test_rank_examples():
    assert rank(np.eye(3)) == 3
    assert rank(to_exact(np.eye(3, dtype=int))) == 3
    assert rank(zeros((2, 4), EXACT)) == 0
    assert rank(np.zeros((2, 4))) == 0
    assert rank(np.array([[1, 0], [0, 1e-15]])) == 1


def test_rank_threshold_is_inclusive():
    # a singular value exactly at the threshold counts as nonzero
    assert rank(np.diag([1.0, 1e-9])) == 2
    assert rank(np.diag([1.0, 0.99e-9])) == 1


def test_rank_nullity_on_random_exact_matrices(rng):
    for _ in range(100):
        r, c = (int(v) for v in rng.integers(1, 6, 2))
        m = random_exact(rng, (r, c), height=2)
        if rng.random() < 0.5 and r > 1:
            m[-1] = m[0] * gq(2, 1)
        ker = nullspace(m)
        assert rank(m) + ker.shape[1] == c
        assert all(x == 0 for x in (m @ ker).flat)


def test_exact_rank_matches_sympy(rng):
    for _ in range(20):
        a = random_exact(rng, (4, 2), height=3)
        b = random_exact(rng, (2, 5), height=3)
        m = a @ b + (random_exact(rng, (4, 5), height=1) if rng.random() < 0.5 else zeros((4, 5), EXACT))
        assert rank(m) == sym_matrix(m).rank()


# -- charpoly, det, adjugate -----------------------------------------------------------------------


def test_charpoly_examples():
    assert charpoly(zeros((2, 2), EXACT)) == [0, 0, 1]
    a, b = gq(3, 1), gq(-2, 0)
    d = to_exact(np.zeros((2, 2), dtype=int))
    d[0, 0], d[1, 1] = a, b
    assert charpoly(d) == [a * b, -(a + b), 1]
    assert charpoly(to_exact([[1, 2], [3, 4]])) == [-2, -5, 1]


def test_charpoly_and_det_match_sympy(rng):
    lam = sympy.Symbol("lam")
    for n in (1, 2, 3, 4):
        m = random_exact(rng, (n, n))
        sym = sym_matrix(m)
        expected = sympy.Poly(sym.charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
        got = charpoly(m)
        assert all(sympy.expand(e - sym_scalar(g)) == 0 for e, g in zip(expected, got))
        d = det(m)
        assert sympy.expand(sym.det() - sym_scalar(d)) == 0


def test_charpoly_similarity_invariance(rng):
    for _ in range(10):
        m = random_exact(rng, (3, 3))
        g = random_exact(rng, (3, 3))
        if det(g) == 0:
            continue
        assert charpoly(g @ m @ inv(g)) == charpoly(m)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    np.testing.assert_allclose(charpoly(g @ m @ np.linalg.inv(g)), charpoly(m), atol=1e-9)


def test_charpoly_of_products(rng):
    # det(lam - GF) = lam^(l-k) det(lam - FG)
    for k, l in ((1, 2), (2, 3), (2, 2), (1, 4)):
        f = random_exact(rng, (k, l))
        g = random_exact(rng, (l, k))
        assert charpoly(g @ f) == [0] * (l - k) + charpoly(f @ g)


def test_adjugate():
    m = to_exact([[1, 2], [3, 4]])
    assert det(m) == -2
    assert np.all(adjugate(m) == to_exact([[4, -2], [-3, 1]]))
    sing = to_exact([[1, 2], [2, 4]])
    assert np.all(adjugate(sing) == to_exact([[4, -2], [-2, 1]]))
    f = np.array([[1, 2], [3, 4]], dtype=complex)
    np.testing.assert_allclose(adjugate(f), [[4, -2], [-3, 1]])


# -- eigenvalues ---------------------------------------------------------------------------------------


def test_eigen_examples():
    assert eigen(to_exact(np.diag([1, 1, 2]))) == [(1, 2), (2, 1)]
    assert eigen(to_exact([[0, 1], [0, 0]])) == [(0, 2)]
    assert eigen(to_exact([[0, -1], [1, 0]])) == [(gq(0, -1), 1), (gq(0, 1), 1)]
    vals = eigen(np.diag([1.0, 1.0 + 1e-12, 2.0]))
    assert [m for _, m in vals] == [2, 1]


def test_eigen_rejects_irrational_spectrum():
    with pytest.raises(NonSplitting):
        eigen(to_exact([[0, 2], [1, 0]]))


def test_eigen_gaussian_rational_roots(rng):
    for _ in range(10):
        d = [gq(Fraction(int(a), 3), int(b)) for a, b in rng.integers(-6, 7, (3, 2))]
        v = random_exact(rng, (3, 3))
        if det(v) == 0:
            continue
        m = v @ np.diag(np.array(d, dtype=object)) @ inv(v)
        got = {lam: mult for lam, mult in eigen(m)}
        for lam in set(d):
            assert got[lam] == d.count(lam)


def test_eigen_large_denominator_roots():
    # roots with denominators far beyond the float-rounding guess must still be recovered exactly
    d = [gq(Fraction(7, 997), Fraction(-3, 1009)), gq(Fraction(-11, 983), 2), gq(Fraction(5, 991), 0)]
    v = to_exact([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    m = v @ np.diag(np.array(d, dtype=object)) @ inv(v)
    assert {lam for lam, _ in eigen(m)} == set(d)


def test_diagonalize():
    blocks, v, vinv = diagonalize(to_exact([[2, 1], [0, 3]]))
    assert blocks == [(2, 1), (3, 1)]
    assert np.all(vinv @ to_exact([[2, 1], [0, 3]]) @ v == to_exact([[2, 0], [0, 3]]))
    with pytest.raises(NotDiagonalizable):
        diagonalize(to_exact([[1, 1], [0, 1]]))
    with pytest.raises(NotDiagonalizable):
        diagonalize(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_conj_class_invariant():
    j = ConjClassInvariant.of(to_exact([[0, 1], [0, 0]]))
    z = ConjClassInvariant.of(zeros((2, 2), EXACT))
    assert j.rank_sequence == ((1, 0),) and z.rank_sequence == ((0, 0),)
    assert not j.same_class(z) and j.charpoly == z.charpoly
    assert not j.is_semisimple and z.is_semisimple
    # float eigenvalues whose (Re, Im) order flips under roundoff are still paired up
    a = ConjClassInvariant.of(np.diag([1.0, 1.0 + 2j, 1.0 + 2j]).astype(complex))
    b = ConjClassInvariant.of(np.diag([1.0 - 1e-13, 1.0 + 1e-13 + 2j, 1.0 + 1e-13 + 2j]).astype(complex))
    assert a.same_class(b)
    f = ConjClassInvariant.of(np.array([[0, 1], [0, 0]], dtype=complex))
    g = ConjClassInvariant.of(np.array([[0, 2], [0, 1e-13]], dtype=complex))
    assert f.same_class(g)


# -- bivariate polynomials ---------------------------------------------------------------------------------


def test_bipoly_arithmetic():
    p = zeta * eta - 1
    assert p.degree == (1, 1)
    assert (p * p).coeff(2, 2) == 1 and (p * p).coeff(1, 1) == -2
    assert p(gq(2), gq(Fraction(1, 2))) == 0
    assert BiPoly.from_dict({}).is_zero()
    assert (p - p).is_zero() and (p - p).coeffs.shape == (0, 0)
    assert p.diff_zeta() == eta
    f = p.to_float()
    assert f.backend == FLOAT and f.allclose(BiPoly.from_dict({(1, 1): 1.0, (0, 0): -1.0}, backend=FLOAT))


def test_bipoly_gcd_examples():
    p = zeta * eta - 1
    assert bipoly_gcd((p ** 2), (p ** 2).diff_zeta()) == p
    assert bipoly_gcd(p, zeta + eta) == BiPoly.constant(1)
    assert bipoly_gcd(2 * p, BiPoly.from_dict({})) == p
    with pytest.raises(BackendUnsupported):
        bipoly_gcd(p.to_float(), p.to_float())


def _random_bipoly(rng, dz, de):
    c = rng.integers(-3, 4, (dz + 1, de + 1))
    return BiPoly.from_dict({(a, b): gq(int(c[a, b]), int(rng.integers(-1, 2))) for a in range(dz + 1)
                             for b in range(de + 1)})


def test_bipoly_gcd_of_common_factor_is_associate(rng):
    for _ in range(15):
        p, q, r = (_random_bipoly(rng, *(int(v) for v in rng.integers(0, 3, 2))) for _ in range(3))
        if r.is_zero() or p.is_zero() or q.is_zero():
            continue
        g = bipoly_gcd(p * r, q * r)
        expected = (r * bipoly_gcd(p, q)).normalized()
        assert g == expected


def test_bipoly_gcd_matches_sympy(rng):
    for _ in range(10):
        common = _random_bipoly(rng, 1, 1)
        p = common * _random_bipoly(rng, 1, 2)
        q = common * _random_bipoly(rng, 2, 1)
        if p.is_zero() or q.is_zero():
            continue
        sg = sympy.gcd(sym_bipoly(p), sym_bipoly(q), Z, E, extension=sympy.I)
        ratio = sympy.cancel(sym_bipoly(bipoly_gcd(p, q)) / sg)
        assert not ratio.free_symbols


def test_bipoly_divide():
    p = zeta * eta - 1
    assert bipoly_divide(p * (zeta + 2), zeta + 2) == p
    with pytest.raises(ValueError):
        bipoly_divide(p, zeta + 2)
