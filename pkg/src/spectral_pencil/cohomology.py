"""Bigraded Cech cohomology of line bundles on P1 x P1 and of monad cokernels.

Cohomology classes of ``O(p, q)`` are represented by Laurent monomials
``zeta**a eta**b``; per factor, ``H^0`` uses exponents ``0..d`` and ``H^1``
uses ``d+1..-1``. A map given by multiplication with a bihomogeneous
polynomial acts on classes by multiplying in the Laurent ring and dropping
every product monomial outside the target basis (it is a coboundary).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import DEFAULT_TOL, EXACT, FLOAT, BiPoly, ToleranceConfig, det, rank, zeros
from .algebra.scalars import GaussianRational
from .errors import BidegreeMismatch, DegenerateInput, NonLinearHilbert, NotAResolution
from .pencil import as_pencil


@dataclass(frozen=True, order=True)
class Twist:
    p: int
    q: int

    def __add__(self, other):
        return Twist(self.p + other[0], self.q + other[1])

    def __getitem__(self, i):
        return (self.p, self.q)[i]

    def __iter__(self):
        return iter((self.p, self.q))


def _tw(t) -> Twist:
    return t if isinstance(t, Twist) else Twist(*t)


def line_bundle_dims(t) -> tuple:
    """``(h0, h1, h2)`` of ``O(p, q)``; ``h0 - h1 + h2 = (p+1)(q+1)``."""
    p, q = _tw(t)
    h0 = (p + 1) * (q + 1) if p >= 0 and q >= 0 else 0
    h1 = 0
    if p >= 0 and q <= -2:
        h1 += (p + 1) * (-q - 1)
    if p <= -2 and q >= 0:
        h1 += (-p - 1) * (q + 1)
    h2 = (-p - 1) * (-q - 1) if p <= -2 and q <= -2 else 0
    return h0, h1, h2


def _p1_exponents(d, i):
    return range(0, d + 1) if i == 0 else range(d + 1, 0)


@dataclass(frozen=True)
class CohClassSpace:
    """Monomial basis of ``H^degree(O(twist))``.

    Degree 1 lists the ``H^1 x H^0`` chunk before the ``H^0 x H^1`` chunk.
    """

    twist: Twist
    degree: int

    @cached_property
    def basis(self) -> tuple:
        p, q = self.twist
        chunks = {0: [(0, 0)], 1: [(1, 0), (0, 1)], 2: [(1, 1)]}[self.degree]
        return tuple((a, b) for i, j in chunks for a in _p1_exponents(p, i) for b in _p1_exponents(q, j))

    @cached_property
    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)


def induced_map(entries, src, dst, degree: int, backend: str | None = None) -> np.ndarray:
    """Matrix of ``H^degree(sum O(src)) -> H^degree(sum O(dst))``.

    ``entries[i][j]`` is the polynomial (or ``None`` for zero) from source
    summand ``j`` to target summand ``i``; its bidegree must fit inside
    ``dst[i] - src[j]``.
    """
    src = [_tw(t) for t in src]
    dst = [_tw(t) for t in dst]
    if backend is None:
        backend = next((e.backend for row in entries for e in row if e is not None), EXACT)
    sspaces = [CohClassSpace(t, degree) for t in src]
    dspaces = [CohClassSpace(t, degree) for t in dst]
    soff = np.concatenate([[0], np.cumsum([s.dim for s in sspaces])]).astype(int)
    doff = np.concatenate([[0], np.cumsum([s.dim for s in dspaces])]).astype(int)
    out = zeros((int(doff[-1]), int(soff[-1])), backend)
    for i, dsp in enumerate(dspaces):
        for j, ssp in enumerate(sspaces):
            e = entries[i][j]
            if e is None or e.is_zero():
                continue
            dz, de = dst[i].p - src[j].p, dst[i].q - src[j].q
            if dz < 0 or de < 0 or e.degree[0] > dz or e.degree[1] > de:
                raise BidegreeMismatch(f"entry ({i},{j}) of bidegree {e.degree} cannot map "
                                       f"O{tuple(src[j])} to O{tuple(dst[i])}")
            if not ssp.dim or not dsp.dim:
                continue
            terms = e.terms()
            for col, (a, b) in enumerate(ssp.basis):
                for (c, d), coef in terms:
                    row = dsp.index.get((a + c, b + d))
                    if row is not None:
                        r, s = doff[i] + row, soff[j] + col
                        out[r, s] = out[r, s] + coef
    return out


# -- monads -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MonadComplex:
    """Two-term complex ``sum O(source) -> sum O(target)`` with polynomial entries."""

    source: tuple
    target: tuple
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(_tw(t) for t in self.source))
        object.__setattr__(self, "target", tuple(_tw(t) for t in self.target))
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        if len(self.matrix) != len(self.target) or any(len(r) != len(self.source) for r in self.matrix):
            raise ValueError("matrix shape does not match the summands")
        for i, row in enumerate(self.matrix):
            for j, e in enumerate(row):
                if e is None or e.is_zero():
                    continue
                dz, de = self.target[i].p - self.source[j].p, self.target[i].q - self.source[j].q
                if dz < 0 or de < 0 or e.degree[0] > dz or e.degree[1] > de:
                    raise BidegreeMismatch(f"entry ({i},{j}) has bidegree {e.degree}, expected <= {(dz, de)}")

    @property
    def backend(self) -> str:
        return next((e.backend for row in self.matrix for e in row if e is not None), EXACT)

    def twisted(self, extra) -> "MonadComplex":
        extra = _tw(extra)
        return MonadComplex(tuple(t + extra for t in self.source), tuple(t + extra for t in self.target),
                            self.matrix)

    def evaluate(self, zeta, eta) -> np.ndarray:
        be = self.backend
        out = zeros((len(self.target), len(self.source)), be)
        for i, row in enumerate(self.matrix):
            for j, e in enumerate(row):
                if e is not None:
                    out[i, j] = e(zeta, eta)
        return out

    def det_is_zero(self) -> bool:
        """Whether ``det`` of the (square) matrix vanishes identically."""
        be = self.backend
        if be == EXACT:
            # a polynomial of bidegree <= (dz, de) vanishing on a (dz+1) x (de+1) grid is zero
            dz = sum(max((e.degree[0] for e in row if e is not None), default=0) for row in self.matrix)
            de = sum(max((e.degree[1] for e in row if e is not None), default=0) for row in self.matrix)
            for i in range(max(dz, 0) + 1):
                for j in range(max(de, 0) + 1):
                    if det(self.evaluate(GaussianRational(i), GaussianRational(j))):
                        return False
            return True
        pts = [(0.3141 + 0.2718j, -0.5772 + 1.4142j), (1.618 - 0.693j, 0.9189 + 0.3010j), (-1.2021 + 0.5j, 2.5029j)]
        for z, e in pts:
            m = self.evaluate(z, e)
            scale = np.prod([max(np.linalg.norm(r), 1e-300) for r in m]) if m.size else 1.0
            if abs(np.linalg.det(m)) > 1e-10 * scale:
                return False
        return True


def _les_dims(c: MonadComplex, tol: ToleranceConfig):
    """Cohomology of ``coker`` from the long exact sequence of an injective sheaf map."""
    be = c.backend
    ranks, src_dims, dst_dims = [], [], []
    for deg in range(3):
        phi = induced_map(c.matrix, c.source, c.target, deg, backend=be)
        ranks.append(rank(phi, tol))
        src_dims.append(phi.shape[1])
        dst_dims.append(phi.shape[0])
    h0 = (dst_dims[0] - ranks[0]) + (src_dims[1] - ranks[1])
    h1 = (dst_dims[1] - ranks[1]) + (src_dims[2] - ranks[2])
    h2 = dst_dims[2] - ranks[2]
    return h0, h1, h2


def monad_cohomology(c: MonadComplex, extra=(0, 0), tol: ToleranceConfig = DEFAULT_TOL) -> tuple:
    """``(h0, h1, h2)`` of ``coker(c)(extra)``; the cokernel must be a 1-dimensional sheaf."""
    if len(c.source) != len(c.target):
        raise NotAResolution("monad must be square")
    if c.det_is_zero():
        raise NotAResolution("determinant vanishes identically")
    h0, h1, h2 = _les_dims(c.twisted(extra), tol)
    if h2 != 0:
        raise NotAResolution(f"cokernel has h2 = {h2}; it is not 1-dimensional")
    return h0, h1, h2


def resolution_complex(p) -> MonadComplex:
    """``O(-2,-1)^k + O(-1,-2)^l -> O(-1,-1)^(k+l)`` given by ``M(zeta, eta)``."""
    p = as_pencil(p)
    be = p.backend
    rows = []
    for i in range(p.n):
        row = []
        for j in range(p.k):
            row.append(BiPoly.from_dict({(0, 0): p.A0[i, j], (1, 0): p.A1[i, j]}, backend=be))
        for j in range(p.l):
            row.append(BiPoly.from_dict({(0, 0): p.B0[i, j], (0, 1): p.B1[i, j]}, backend=be))
        rows.append(row)
    source = [Twist(-2, -1)] * p.k + [Twist(-1, -2)] * p.l
    return MonadComplex(source, [Twist(-1, -1)] * p.n, rows)


def sheaf_cohomology(p, extra=(0, 0), tol: ToleranceConfig = DEFAULT_TOL) -> tuple:
    """``(h0, h1)`` of ``F(extra)`` where ``F = coker M``."""
    h0, h1, _ = monad_cohomology(resolution_complex(p), extra, tol)
    return h0, h1


def koszul_complex(poly: BiPoly, k: int, l: int) -> MonadComplex:
    """``O(-k, -l) -> O`` by a polynomial of bidegree ``(k, l)``; the cokernel is ``O_S``."""
    return MonadComplex([Twist(-k, -l)], [Twist(0, 0)], [[poly]])


HILBERT_GRID = tuple(range(-2, 4))


def euler_characteristic(p, twist, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    h0, h1 = sheaf_cohomology(p, twist, tol)
    return h0 - h1


def closed_form_chi(k: int, l: int, twist) -> int:
    """Alternating sum of ``chi(O(a, b)) = (a+1)(b+1)`` over the resolution terms."""
    x, y = _tw(twist)
    return (k + l) * x * y - k * (x - 1) * y - l * x * (y - 1)


def hilbert_polynomial(p, tol: ToleranceConfig = DEFAULT_TOL) -> BiPoly:
    """Fit ``chi(F(x, y))`` on ``{-2..3}^2``; returns ``l x + k y`` as a polynomial in ``(x, y)``.

    The fit must be exactly linear and agree with :func:`closed_form_chi`
    at every grid point, otherwise :class:`NonLinearHilbert` is raised.
    """
    p = as_pencil(p)
    chi = {(x, y): euler_characteristic(p, (x, y), tol) for x in HILBERT_GRID for y in HILBERT_GRID}
    c0 = chi[(0, 0)]
    cx = chi[(1, 0)] - c0
    cy = chi[(0, 1)] - c0
    for (x, y), v in chi.items():
        if v != c0 + cx * x + cy * y:
            raise NonLinearHilbert(f"chi(F({x},{y})) = {v} breaks linearity")
        if v != closed_form_chi(p.k, p.l, (x, y)):
            raise NonLinearHilbert(f"chi(F({x},{y})) = {v} disagrees with the resolution count")
    return BiPoly.from_dict({(0, 0): c0, (1, 0): cx, (0, 1): cy}, backend=EXACT)


# -- splitting on P1 ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingType:
    degrees: tuple  # descending
    torsion: int


def p1_splitting_type(c0, c1, tol: ToleranceConfig = DEFAULT_TOL) -> SplittingType:
    """Grothendieck type of ``coker(O(-1)^m -> O^n)`` given by ``C(zeta) = c0 + c1 zeta``.

    Read off from ``h0(W(d))`` for ``d = -(n+2)..n``, each computed by the
    long exact sequence on P1 (realised as ``P1 x P1`` with eta-twist 0).
    """
    c0, c1 = np.asarray(c0), np.asarray(c1)
    n, m = c0.shape
    be = EXACT if c0.dtype == object else FLOAT
    if rank(np.concatenate([c0, c1], axis=0), tol) < m:
        raise DegenerateInput("C has a constant kernel vector")
    probe = (c0 + c1 * (GaussianRational(7, 3) if be == EXACT else complex(0.7071, 0.3183)))
    if rank(probe, tol) < m:
        raise DegenerateInput("C is not generically of full column rank")
    entries = [[BiPoly.from_dict({(0, 0): c0[i, j], (1, 0): c1[i, j]}, backend=be) for j in range(m)]
               for i in range(n)]
    h0 = {}
    for d in range(-(n + 2), n + 1):
        c = MonadComplex([Twist(d - 1, 0)] * m, [Twist(d, 0)] * n, entries)
        h0[d] = _les_dims(c, tol)[0]
    # h0(W(d)) - h0(W(d-1)) counts summands O(a) with a >= -d
    at_least = {d: h0[d] - h0[d - 1] for d in range(-(n + 1), n + 1)}
    degrees = []
    for d in range(-(n + 1), n + 1):
        count = at_least[d] - at_least.get(d - 1, 0)
        degrees.extend([-d] * count)
    degrees.sort(reverse=True)
    torsion = h0[0] - sum(a + 1 for a in degrees if a >= 0)
    return SplittingType(tuple(degrees), torsion)


# -- theorem checkers -------------------------------------------------------------------------


@dataclass(frozen=True)
class RankTheoremReport:
    rankF: int
    rankG: int
    h0_m11: int
    h1_1m1: int
    ranks_full: bool
    vanishing: bool
    equivalence_holds: bool


def rank_theorem_check(q, tol: ToleranceConfig = DEFAULT_TOL) -> RankTheoremReport:
    """Compare ``rank F = rank G = k`` with ``h0(F(-1,1)) = 0 = h1(F(1,-1))``.

    Both sides are computed independently: ranks from the matrices, the
    cohomology from the resolution.
    """
    if q.k > q.l:
        raise ValueError("rank theorem needs k <= l")
    rf, rg = rank(q.F, tol), rank(q.G, tol)
    h0 = sheaf_cohomology(q, (-1, 1), tol)[0]
    h1 = sheaf_cohomology(q, (1, -1), tol)[1]
    full = rf == q.k and rg == q.k
    vanish = h0 == 0 and h1 == 0
    return RankTheoremReport(rf, rg, h0, h1, full, vanish, full == vanish)


@dataclass(frozen=True)
class Theorem1Report:
    h0_L_0m1: int
    h1_L_0m1: int
    h0_L_m10: int
    h1_L_1m2: int
    all_vanish: bool
    ranks_full: bool
    agrees_with_rank_theorem: bool
    chi_L: int
    degree_L: int


def theorem1_check(q, tol: ToleranceConfig = DEFAULT_TOL) -> Theorem1Report:
    """The four vanishings with ``L = F(0, 1)``.

    ``L(0,-1) = F``, ``L(-1,0) = F(-1,1)`` and ``L(1,-2) = F(1,-1)``.
    ``degree_L`` is ``chi(L) + g - 1`` with ``g = (k-1)(l-1)``, the degree
    ``L`` would have as a line bundle on a smooth support.
    """
    rt = rank_theorem_check(q, tol)
    h0, h1 = sheaf_cohomology(q, (0, 0), tol)
    vanish = h0 == 0 and h1 == 0 and rt.h0_m11 == 0 and rt.h1_1m1 == 0
    chi_l = euler_characteristic(q, (0, 1), tol)
    genus = (q.k - 1) * (q.l - 1)
    return Theorem1Report(h0, h1, rt.h0_m11, rt.h1_1m1, vanish, rt.ranks_full, vanish == rt.ranks_full,
                          chi_l, chi_l + genus - 1)
