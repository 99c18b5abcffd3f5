"""Linear matrix pencils ``M(zeta, eta) = (A0 + A1 zeta | B0 + B1 eta)`` and quadruples.

A :class:`Quadruple` ``(X, Y, F, G)`` is the normalized pencil

    M(zeta, eta) = [[X - zeta, F],
                    [G,        Y - eta]]

All determinants are taken literally on this block order.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .algebra import (DEFAULT_TOL, EXACT, FLOAT, BiPoly, ToleranceConfig, adjugate, adjugate_batch, backend_of,
                      bipoly_divide, bipoly_gcd, convert, det, eigen, eye, interpolate_grid, inv, is_singular,
                      nullspace, rank, to_float, zeros)
from .algebra.scalars import GaussianRational
from .errors import (BackendUnsupported, NonSplitting, PointAtInfinityOnSupport, SingularGroupElement,
                     ZeroDeterminant)


def _frozen(a):
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Pencil:
    k: int
    l: int
    A0: np.ndarray
    A1: np.ndarray
    B0: np.ndarray
    B1: np.ndarray

    def __post_init__(self):
        n = self.k + self.l
        for name, cols in (("A0", self.k), ("A1", self.k), ("B0", self.l), ("B1", self.l)):
            a = _frozen(getattr(self, name))
            if a.shape != (n, cols):
                raise ValueError(f"{name} must be {n}x{cols}, got {a.shape}")
            object.__setattr__(self, name, a)
        backend_of(self.A0, self.A1, self.B0, self.B1)

    @property
    def n(self) -> int:
        return self.k + self.l

    @property
    def backend(self) -> str:
        return backend_of(self.A0)

    def matrix(self, zeta, eta) -> np.ndarray:
        return np.concatenate([self.A0 + zeta * self.A1, self.B0 + eta * self.B1], axis=1)

    def with_backend(self, backend: str) -> "Pencil":
        return Pencil(self.k, self.l, *(convert(a, backend) for a in (self.A0, self.A1, self.B0, self.B1)))

    def pencil(self) -> "Pencil":
        return self


@dataclass(frozen=True, eq=False)
class Quadruple:
    X: np.ndarray
    Y: np.ndarray
    F: np.ndarray
    G: np.ndarray

    def __post_init__(self):
        for name in ("X", "Y", "F", "G"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        k, l = self.X.shape[0], self.Y.shape[0]
        shapes = {"X": (k, k), "Y": (l, l), "F": (k, l), "G": (l, k)}
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} must be {shape[0]}x{shape[1]}, got {getattr(self, name).shape}")
        backend_of(self.X, self.Y, self.F, self.G)

    @property
    def k(self) -> int:
        return self.X.shape[0]

    @property
    def l(self) -> int:
        return self.Y.shape[0]

    @property
    def n(self) -> int:
        return self.k + self.l

    @property
    def backend(self) -> str:
        return backend_of(self.X) if self.k else backend_of(self.Y)

    def matrix(self, zeta, eta) -> np.ndarray:
        be = self.backend
        top = np.concatenate([self.X - zeta * eye(self.k, be), self.F], axis=1)
        bottom = np.concatenate([self.G, self.Y - eta * eye(self.l, be)], axis=1)
        return np.concatenate([top, bottom], axis=0)

    def pencil(self) -> Pencil:
        be, k, l = self.backend, self.k, self.l
        A0 = np.concatenate([self.X, self.G], axis=0)
        B0 = np.concatenate([self.F, self.Y], axis=0)
        A1 = -np.concatenate([eye(k, be), zeros((l, k), be)], axis=0)
        B1 = -np.concatenate([zeros((k, l), be), eye(l, be)], axis=0)
        return Pencil(k, l, A0, A1, B0, B1)

    def with_backend(self, backend: str) -> "Quadruple":
        return Quadruple(*(convert(a, backend) for a in (self.X, self.Y, self.F, self.G)))

    def replace(self, **kw) -> "Quadruple":
        parts = {"X": self.X, "Y": self.Y, "F": self.F, "G": self.G}
        parts.update(kw)
        return Quadruple(**parts)

    def allclose(self, other: "Quadruple", atol=1e-10) -> bool:
        return all(np.allclose(to_float(a), to_float(b), atol=atol)
                   for a, b in zip((self.X, self.Y, self.F, self.G), (other.X, other.Y, other.F, other.G)))

    def __eq__(self, other):
        if not isinstance(other, Quadruple):
            return NotImplemented
        return all(a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))
                   for a, b in zip((self.X, self.Y, self.F, self.G), (other.X, other.Y, other.F, other.G)))

    __hash__ = None


def as_pencil(p) -> Pencil:
    return p.pencil()


# -- normalization and group actions -------------------------------------------------


def normalize(p: Pencil, tol: ToleranceConfig = DEFAULT_TOL):
    """Bring a pencil to quadruple form by ``g = -(A1 | B1)^{-1}``.

    Returns ``(quadruple, gauge)``.
    """
    p = as_pencil(p)
    lead = np.concatenate([p.A1, p.B1], axis=1)
    if is_singular(lead, tol):
        raise PointAtInfinityOnSupport("det(A1 | B1) = 0: (inf, inf) lies on the support; "
                                       "move it with mobius_shift first")
    gauge = -inv(lead)
    a0 = gauge @ p.A0
    b0 = gauge @ p.B0
    k = p.k
    return Quadruple(X=a0[:k], Y=b0[k:], F=b0[:k], G=a0[k:]), gauge


def mobius_shift(p, a, b) -> Pencil:
    """Pull back along ``[s:t] -> [s + a t : t]`` in each factor.

    The new point ``(inf, inf)`` corresponds to the old ``(1/a, 1/b)``, so any
    ``a, b`` with ``det M(1/a, 1/b) != 0`` clears the point at infinity.
    """
    p = as_pencil(p)
    return Pencil(p.k, p.l, p.A0, p.A1 + a * p.A0, p.B0, p.B1 + b * p.B0)


def _check_invertible(g, tol):
    g = np.asarray(g)
    if g.shape[0] != g.shape[1] or is_singular(g, tol):
        raise SingularGroupElement("group element is not invertible")
    return inv(g)


def act_full(p, g, h1, h2, tol: ToleranceConfig = DEFAULT_TOL) -> Pencil:
    """``(A(zeta) | B(eta)) -> g (A(zeta) h1^{-1} | B(eta) h2^{-1})``."""
    p = as_pencil(p)
    if np.asarray(g).shape != (p.n, p.n) or np.asarray(h1).shape != (p.k, p.k) or np.asarray(h2).shape != (p.l, p.l):
        raise SingularGroupElement("group element has the wrong size")
    _check_invertible(g, tol)
    h1i = _check_invertible(h1, tol)
    h2i = _check_invertible(h2, tol)
    return Pencil(p.k, p.l, g @ p.A0 @ h1i, g @ p.A1 @ h1i, g @ p.B0 @ h2i, g @ p.B1 @ h2i)


def act_K(q: Quadruple, g, h, tol: ToleranceConfig = DEFAULT_TOL) -> Quadruple:
    """``(g, h).(X, Y, F, G) = (g X g^-1, h Y h^-1, g F h^-1, h G g^-1)``."""
    if np.asarray(g).shape != (q.k, q.k) or np.asarray(h).shape != (q.l, q.l):
        raise SingularGroupElement("group element has the wrong size")
    gi = _check_invertible(g, tol) if q.k else g
    hi = _check_invertible(h, tol) if q.l else h
    return Quadruple(g @ q.X @ gi, h @ q.Y @ hi, g @ q.F @ hi, h @ q.G @ gi)


# -- spectral curve -------------------------------------------------------------------


def _grid_matrices(p) -> np.ndarray:
    p = as_pencil(p)
    be = p.backend
    out = np.empty((p.k + 1, p.l + 1, p.n, p.n), dtype=object if be == EXACT else complex)
    for i in range(p.k + 1):
        for j in range(p.l + 1):
            zi = GaussianRational(i) if be == EXACT else complex(i)
            ej = GaussianRational(j) if be == EXACT else complex(j)
            out[i, j] = p.matrix(zi, ej)
    return out


def spectral_det(p) -> BiPoly:
    """``det M(zeta, eta)`` by interpolation on the grid ``0..k x 0..l``."""
    p = as_pencil(p)
    mats = _grid_matrices(p)
    if p.backend == EXACT:
        vals = np.empty(mats.shape[:2], dtype=object)
        for idx in np.ndindex(*mats.shape[:2]):
            vals[idx] = det(mats[idx])
    else:
        vals = np.linalg.det(mats) if p.n else np.ones(mats.shape[:2], dtype=complex)
    poly = BiPoly(interpolate_grid(vals, p.backend), bounds=(p.k, p.l), backend=p.backend)
    if poly.is_zero():
        raise ZeroDeterminant("det M(zeta, eta) vanishes identically")
    return poly


def adjugate_coefficients(p) -> np.ndarray:
    """Coefficient tables of ``adj M(zeta, eta)``, shape ``(k+1, l+1, n, n)``."""
    p = as_pencil(p)
    mats = _grid_matrices(p)
    if p.backend == EXACT:
        adj = np.empty(mats.shape, dtype=object)
        for idx in np.ndindex(*mats.shape[:2]):
            adj[idx] = adjugate(mats[idx])
    else:
        adj = adjugate_batch(mats)
    return interpolate_grid(adj, p.backend)


@dataclass(frozen=True, eq=False)
class SpectralCurve:
    det_poly: BiPoly
    squarefree_part: BiPoly
    minimal_poly: BiPoly


def minimal_polynomial(p) -> BiPoly:
    """``det M`` divided by the gcd of all ``(n-1)``-minors (exact backend).

    This is the largest invariant factor of ``M`` over Q(i)[zeta, eta].
    """
    p = as_pencil(p)
    if p.backend != EXACT:
        raise BackendUnsupported("minimal_polynomial needs the exact backend")
    d = spectral_det(p)
    coeffs = adjugate_coefficients(p)
    g = BiPoly(np.empty((0, 0), dtype=object), bounds=(0, 0), backend=EXACT)
    for i in range(p.n):
        for j in range(p.n):
            g = bipoly_gcd(g, BiPoly(coeffs[:, :, i, j], backend=EXACT))
            if g.degree == (0, 0):
                break
        if g.degree == (0, 0):
            break
    return bipoly_divide(d, g).normalized()


def spectral_curve(p) -> SpectralCurve:
    p = as_pencil(p)
    d = spectral_det(p)
    if p.backend != EXACT:
        return SpectralCurve(d, d, d)
    # in characteristic 0, gcd(d, d_zeta, d_eta) = prod f_i^(e_i - 1)
    g = bipoly_gcd(d, bipoly_gcd(d.diff_zeta(), d.diff_eta()))
    sqf = bipoly_divide(d, g).normalized()
    return SpectralCurve(d, sqf, minimal_polynomial(p))


# -- bipurity and the geometric resolution ---------------------------------------------


@dataclass(frozen=True)
class BipurityReport:
    vertical_ok: bool
    horizontal_ok: bool
    witnesses: tuple = field(default_factory=tuple)

    @property
    def bipure(self) -> bool:
        return self.vertical_ok and self.horizontal_ok


def _unobservable_subspace(a, c, tol):
    """Largest ``a``-invariant subspace inside ``ker c`` (columns)."""
    n = a.shape[0]
    be = backend_of(a)
    rows = []
    power = eye(n, be)
    for _ in range(max(n, 1)):
        rows.append(c @ power)
        power = power @ a
    obs = np.concatenate(rows, axis=0) if rows else zeros((0, n), be)
    return nullspace(obs, tol)


def _witnesses(a, c, direction, tol):
    basis = _unobservable_subspace(a, c, tol)
    d = basis.shape[1]
    if d == 0:
        return []
    # restriction of a to the invariant subspace: a @ basis = basis @ t
    if backend_of(a) == EXACT:
        from .algebra import rref

        aug = np.concatenate([basis, a @ basis], axis=1)
        red, piv = rref(aug)
        t = red[:d, d:]
    else:
        t = np.linalg.lstsq(basis, a @ basis, rcond=None)[0]
    try:
        eig = eigen(t, tol)
    except NonSplitting:
        return [{"direction": direction, "point": None, "vector": basis[:, 0]}]
    out = []
    for lam, _ in eig:
        ker = nullspace(t - lam * eye(d, backend_of(t)), tol)
        if ker.shape[1]:
            out.append({"direction": direction, "point": lam, "vector": basis @ ker[:, 0]})
    return out


def bipurity_check(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> BipurityReport:
    """Detect subsheaves supported on vertical or horizontal lines.

    A vertical witness is ``v != 0`` with ``(X - zeta0) v = 0`` and ``G v = 0``;
    then ``(v, 0)`` kills ``M(zeta0, eta)`` for every ``eta``. Horizontal
    witnesses use ``(Y - eta0) v = 0`` and ``F v = 0``.
    """
    vert = _witnesses(q.X, q.G, "vertical", tol) if q.k else []
    hor = _witnesses(q.Y, q.F, "horizontal", tol) if q.l else []
    return BipurityReport(not vert, not hor, tuple(vert + hor))


def geometric_resolution_check(q: Quadruple, zetas=(), etas=(), tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Check ``dim span[X - zeta0; G] = k`` and ``dim span[F; Y - eta0] = l`` at samples.

    ``None`` or ``inf`` stands for the point at infinity, where both blocks
    are ``-identity`` stacked on zero and trivially of full rank.
    """
    be = q.backend
    for z in zetas:
        if z is None or (not isinstance(z, GaussianRational) and np.isinf(complex(z))):
            continue
        block = np.concatenate([q.X - z * eye(q.k, be), q.G], axis=0)
        if rank(block, tol) != q.k:
            return False
    for e in etas:
        if e is None or (not isinstance(e, GaussianRational) and np.isinf(complex(e))):
            continue
        block = np.concatenate([q.F, q.Y - e * eye(q.l, be)], axis=0)
        if rank(block, tol) != q.l:
            return False
    return True


# -- curve sampling -------------------------------------------------------------------


@dataclass(frozen=True)
class CurveSample:
    zeta: complex
    etas: tuple
    degree_drop: int


def sample_curve(p, zetas, rel_tol: float = 1e-12) -> list:
    """Finite eta-roots of ``det M(zeta, .)`` for each ``zeta`` in ``zetas``.

    ``degree_drop`` is ``l - deg_eta det M(zeta, .)``: the number of roots
    that escaped to ``eta = inf``.
    """
    p = as_pencil(p)
    poly = spectral_det(p).to_float()
    scale = np.abs(poly.coeffs).max() if poly.coeffs.size else 1.0
    out = []
    for z in zetas:
        z = complex(z)
        coeffs = [complex(c) for c in poly.in_eta(z)]
        while coeffs and abs(coeffs[-1]) <= rel_tol * scale * max(1.0, abs(z)) ** p.k:
            coeffs.pop()
        deg = len(coeffs) - 1
        roots = np.roots(coeffs[::-1]) if deg > 0 else np.array([])
        roots = sorted((complex(r) for r in roots), key=lambda r: (r.real, r.imag))
        out.append(CurveSample(z, tuple(roots), p.l - max(deg, 0)))
    return out


def curve_csv(samples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["zeta_re", "zeta_im", "eta_re", "eta_im"])
    for s in samples:
        for e in s.etas:
            # adding 0.0 turns -0.0 into 0.0
            w.writerow([f"{x + 0.0:.17g}" for x in (s.zeta.real, s.zeta.imag, e.real, e.imag)])
    return buf.getvalue()
