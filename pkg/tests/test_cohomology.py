import numpy as np
import pytest
import sympy
from conftest import quad
from hypothesis import given
from hypothesis import strategies as st
from oracles.agreement import map_agrees, random_poly
from oracles.cech import cech_dims

from spectral_pencil import (EXACT, BiPoly, CohClassSpace, MonadComplex, Twist, closed_form_chi,
                             euler_characteristic, gq, hilbert_polynomial, induced_map, koszul_complex,
                             line_bundle_dims, monad_cohomology, p1_splitting_type, rank_theorem_check,
                             resolution_complex, sheaf_cohomology, theorem1_check, to_exact)
from spectral_pencil.cli.generate import random_quadruple
from spectral_pencil.cli.suites import random_curve
from spectral_pencil.errors import BidegreeMismatch, DegenerateInput, NotAResolution

zeta, eta = BiPoly.zeta(), BiPoly.eta()
TWISTS = [(p, q) for p in range(-4, 5) for q in range(-4, 5)]


# -- line bundles ------------------------------------------------------------------------------------


def test_line_bundle_dims_examples():
    assert line_bundle_dims((2, 3)) == (12, 0, 0)
    assert line_bundle_dims((-1, 5)) == (0, 0, 0)
    assert line_bundle_dims((-3, 1)) == (0, 4, 0)
    assert line_bundle_dims(Twist(-3, -2)) == (0, 0, 2)


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_line_bundle_euler_characteristic(p, q):
    h0, h1, h2 = line_bundle_dims((p, q))
    assert h0 - h1 + h2 == (p + 1) * (q + 1)
    assert min(h0, h1, h2) >= 0
    # Serre duality with K = O(-2, -2)
    assert line_bundle_dims((-2 - p, -2 - q)) == (h2, h1, h0)


@pytest.mark.parametrize("twist", TWISTS)
def test_line_bundle_dims_match_cech_oracle(twist):
    assert line_bundle_dims(twist) == cech_dims(*twist)


def test_basis_conventions():
    assert CohClassSpace(Twist(1, 0), 0).basis == ((0, 0), (1, 0))
    assert CohClassSpace(Twist(-3, 1), 1).basis == ((-2, 0), (-2, 1), (-1, 0), (-1, 1))
    assert CohClassSpace(Twist(-3, -3), 2).basis == ((-2, -2), (-2, -1), (-1, -2), (-1, -1))
    for t in TWISTS:
        assert tuple(CohClassSpace(Twist(*t), d).dim for d in range(3)) == line_bundle_dims(t)


# -- induced maps -----------------------------------------------------------------------------------


def test_induced_map_examples():
    m = induced_map([[zeta]], [(1, 0)], [(2, 0)], 0)
    assert m.shape == (3, 2)
    assert np.all(m == to_exact([[0, 0], [1, 0], [0, 1]]))
    # zeta^-1 in H1(O(-2, q)) goes to zeta^0, which is a coboundary in O(-1, q)
    m = induced_map([[zeta]], [(-2, 0)], [(-1, 0)], 1)
    assert m.shape == (0, 1)
    m = induced_map([[zeta * eta]], [(-3, -3)], [(-2, -2)], 2)
    assert m.shape == (1, 4)
    assert np.all(m == to_exact([[1, 0, 0, 0]]))


def test_induced_map_rejects_bad_bidegree():
    with pytest.raises(BidegreeMismatch):
        induced_map([[zeta ** 2]], [(0, 0)], [(1, 0)], 0)
    with pytest.raises(BidegreeMismatch):
        induced_map([[BiPoly.constant(1)]], [(0, 0)], [(-1, 0)], 0)


def test_induced_map_is_functorial(rng):
    # H(b) o H(a) = H(b a) for composable multiplications
    for _ in range(10):
        s = tuple(int(v) for v in rng.integers(-4, 2, 2))
        a, b = random_poly(rng, 1, 1), random_poly(rng, 1, 0)
        for deg in range(3):
            ma = induced_map([[a]], [s], [(s[0] + 1, s[1] + 1)], deg)
            mb = induced_map([[b]], [(s[0] + 1, s[1] + 1)], [(s[0] + 2, s[1] + 1)], deg)
            mab = induced_map([[a * b]], [s], [(s[0] + 2, s[1] + 1)], deg)
            assert np.all(mb @ ma == mab) if mab.size else mab.shape == (mb @ ma).shape


@pytest.mark.parametrize("mult", ["zeta", "eta", "zeta*eta", "1+zeta+2i*eta"])
def test_elementary_maps_match_cech_oracle(mult):
    poly = {"zeta": zeta, "eta": eta, "zeta*eta": zeta * eta, "1+zeta+2i*eta": 1 + zeta + gq(0, 2) * eta}[mult]
    dz, de = poly.degree
    for p, q in TWISTS:
        dst = (p + dz, q + de)
        if max(abs(dst[0]), abs(dst[1])) > 4:
            continue
        for deg in range(3):
            assert map_agrees(poly, (p, q), dst, deg), (mult, (p, q), deg)


def test_random_maps_match_cech_oracle(rng):
    checked = 0
    while checked < 20:
        src = tuple(int(v) for v in rng.integers(-4, 5, 2))
        bideg = tuple(int(v) for v in rng.integers(0, 3, 2))
        dst = (src[0] + bideg[0], src[1] + bideg[1])
        if max(abs(dst[0]), abs(dst[1])) > 4:
            continue
        deg = int(rng.integers(0, 3))
        assert map_agrees(random_poly(rng, *bideg), src, dst, deg)
        checked += 1


# -- monads and the resolution --------------------------------------------------------------------------


def test_sheaf_cohomology_examples(E1):
    assert sheaf_cohomology(E1, (0, 0)) == (0, 0)
    assert sheaf_cohomology(E1, (1, 0))[0] == 1
    assert sheaf_cohomology(E1, (0, 1))[0] == 1
    # chi(F(-1, -1)) = -2 and h0 = 0, so h1 = 2
    assert sheaf_cohomology(E1, (-1, -1)) == (0, 2)
    assert sheaf_cohomology(E1, (-1, 1)) == (0, 0)
    assert monad_cohomology(resolution_complex(E1)) == (0, 0, 0)


def test_sheaf_cohomology_of_E1_is_O_of_a_conic():
    # C = {zeta*eta = 1} is a (1,1)-curve isomorphic to P1 on which O(x, y) has degree x + y;
    # chi(F) = 0 makes F the degree -1 bundle, so F(x, y) has degree d - 1 with d = x + y
    e1 = quad([[0]], [[0]], [[1]], [[1]])
    for x in range(-3, 4):
        for y in range(-3, 4):
            d = x + y
            assert sheaf_cohomology(e1, (x, y)) == (max(0, d), max(0, -d))


def test_random_quadruples_acyclic(rng):
    for backend in ("exact", "float"):
        for _ in range(5):
            k, l = (int(v) for v in rng.integers(1, 4, 2))
            q = random_quadruple(rng, k, l, backend)
            assert sheaf_cohomology(q) == (0, 0)
            assert sheaf_cohomology(q, (0, 1))[0] == k
            assert sheaf_cohomology(q, (1, 0))[0] == l


def test_not_a_resolution():
    zero = BiPoly.from_dict({})
    c = MonadComplex([(-1, 0)], [(0, 0)], [[zero]])
    with pytest.raises(NotAResolution):
        monad_cohomology(c)
    with pytest.raises(NotAResolution):
        monad_cohomology(MonadComplex([(-1, 0)], [(0, 0), (0, 0)], [[zeta], [zeta]]))
    with pytest.raises(BidegreeMismatch):
        MonadComplex([(0, 0)], [(0, 0)], [[zeta]])


def test_koszul_genus(rng):
    assert monad_cohomology(koszul_complex(zeta * eta - 1, 1, 1)) == (1, 0, 0)
    for k, l in ((1, 1), (2, 2), (2, 3), (3, 3), (4, 2)):
        p = random_curve(rng, k, l)
        assert monad_cohomology(koszul_complex(p, k, l)) == (1, (k - 1) * (l - 1), 0)


def test_koszul_matches_line_bundle_sequence():
    # h(O_S(x, y)) from 0 -> O(x-k, y-l) -> O(x, y) -> O_S(x, y) -> 0 on a reducible curve
    p = (zeta - 1) * (zeta + 1) * (eta - 2)
    k, l = 2, 1
    for x in range(-2, 3):
        for y in range(-2, 3):
            h0, h1, _ = monad_cohomology(koszul_complex(p, k, l), (x, y))
            a, b = line_bundle_dims((x - k, y - l)), line_bundle_dims((x, y))
            assert h0 - h1 == (b[0] - b[1] + b[2]) - (a[0] - a[1] + a[2])


# -- Hilbert polynomial --------------------------------------------------------------------------------


def test_hilbert_examples(E1, k1l2):
    assert hilbert_polynomial(E1) == zeta + eta
    assert hilbert_polynomial(k1l2) == 2 * zeta + eta


def test_hilbert_random(rng):
    for _ in range(5):
        k, l = (int(v) for v in rng.integers(1, 4, 2))
        q = random_quadruple(rng, k, l, EXACT)
        assert hilbert_polynomial(q) == l * zeta + k * eta
        assert euler_characteristic(q, (1, 1)) == k + l


def test_closed_form_chi_is_linear():
    x, y = sympy.symbols("x y")
    for k in range(1, 4):
        for l in range(1, 4):
            assert sympy.expand(closed_form_chi(k, l, (x, y)) - (l * x + k * y)) == 0


# -- splitting on P1 -----------------------------------------------------------------------------------


def test_p1_splitting_examples():
    c0, c1 = to_exact([[0], [1]]), to_exact([[-1], [0]])
    st_ = p1_splitting_type(c0, c1)
    assert st_.degrees == (1,) and st_.torsion == 0
    st_ = p1_splitting_type(to_exact([[0], [0]]), to_exact([[-1], [0]]))
    assert st_.degrees == (0,) and st_.torsion == 1
    with pytest.raises(DegenerateInput):
        p1_splitting_type(to_exact([[0, 0], [1, 0]]), to_exact([[-1, 0], [0, 0]]))


def test_p1_splitting_of_W1(rng):
    # coker (X - zeta; G) : O(-1)^k -> O^(k+l) is O(1)^rank G + O^(l - rank G) when G is injective enough
    for k, l, rg in ((1, 2, 1), (2, 3, 2), (2, 2, 2), (1, 3, 1)):
        q = random_quadruple(rng, k, l, EXACT, rank_g=rg)
        c0 = np.concatenate([q.X, q.G], axis=0)
        c1 = np.concatenate([to_exact(-np.eye(k, dtype=int)), to_exact(np.zeros((l, k), dtype=int))], axis=0)
        st_ = p1_splitting_type(c0, c1)
        assert st_.degrees == (1,) * k + (0,) * (l - k) and st_.torsion == 0


def test_p1_splitting_float():
    st_ = p1_splitting_type(np.array([[0.0], [1.0]]), np.array([[-1.0], [0.0]]))
    assert st_.degrees == (1,) and st_.torsion == 0


# -- rank theorem and the four vanishings ------------------------------------------------------------------


def test_rank_theorem_E1(E1):
    r = rank_theorem_check(E1)
    assert (r.rankF, r.rankG, r.h0_m11, r.h1_1m1) == (1, 1, 0, 0)
    assert r.ranks_full and r.vanishing and r.equivalence_holds


def test_rank_theorem_F_zero():
    # F = 0 drops rank F; the cohomology that detects it is h1(F(1,-1)) = k - rank F
    q = quad([[0]], [[0, 0], [0, 1]], [[0, 0]], [[1], [0]])
    r = rank_theorem_check(q)
    assert (r.rankF, r.rankG, r.h0_m11, r.h1_1m1) == (0, 1, 0, 1)
    assert not r.ranks_full and not r.vanishing and r.equivalence_holds


def test_rank_theorem_G_zero():
    q = quad([[0]], [[0, 0], [0, 1]], [[1, 0]], [[0], [0]])
    r = rank_theorem_check(q)
    assert (r.rankF, r.rankG, r.h0_m11, r.h1_1m1) == (1, 0, 1, 0)
    assert r.equivalence_holds


def test_rank_theorem_cohomology_counts_rank_defect(rng):
    for _ in range(10):
        k = int(rng.integers(1, 3))
        l = int(rng.integers(k, 4))
        rf, rg = (int(v) for v in rng.integers(0, k + 1, 2))
        q = random_quadruple(rng, k, l, EXACT, rank_f=rf, rank_g=rg)
        r = rank_theorem_check(q)
        assert (r.rankF, r.rankG) == (rf, rg)
        assert r.h0_m11 == k - rg and r.h1_1m1 == k - rf
        assert r.equivalence_holds


def test_rank_theorem_needs_k_le_l():
    q = quad(np.zeros((2, 2), dtype=int), [[0]], [[1], [0]], [[1, 0]])
    with pytest.raises(ValueError):
        rank_theorem_check(q)


def test_theorem1(E1):
    t = theorem1_check(E1)
    assert (t.h0_L_0m1, t.h1_L_0m1, t.h0_L_m10, t.h1_L_1m2) == (0, 0, 0, 0)
    assert t.all_vanish and t.agrees_with_rank_theorem
    assert t.chi_L == 1 and t.degree_L == 0


def test_theorem1_degenerate_cases():
    f_zero = theorem1_check(quad([[0]], [[0, 0], [0, 1]], [[0, 0]], [[1], [0]]))
    assert f_zero.h0_L_m10 == 0 and f_zero.h1_L_1m2 == 1
    assert not f_zero.all_vanish and f_zero.agrees_with_rank_theorem
    g_zero = theorem1_check(quad([[0]], [[0, 0], [0, 1]], [[1, 0]], [[0], [0]]))
    assert g_zero.h0_L_m10 == 1 and g_zero.h1_L_1m2 == 0
    assert not g_zero.all_vanish and g_zero.agrees_with_rank_theorem


def test_theorem1_degree(rng):
    q = random_quadruple(rng, 2, 3, EXACT)
    t = theorem1_check(q)
    # chi(L) = chi(F(0,1)) = k, and deg L = g + k - 1 with g = (k-1)(l-1)
    assert t.chi_L == 2 and t.degree_L == 2 + 2 - 1
