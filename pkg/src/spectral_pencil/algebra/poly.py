"""Univariate and bivariate polynomials over either backend.

Univariate polynomials are plain lists of coefficients in ascending degree.
Bivariate polynomials in (zeta, eta) are :class:`BiPoly` objects.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import BackendUnsupported
from .scalars import EXACT, FLOAT, ONE, ZERO, GaussianRational, backend_of, is_exact, is_zero, zeros

# -- univariate ---------------------------------------------------------------


def utrim(p, atol=0.0):
    p = list(p)
    while p and (is_zero(p[-1]) if atol == 0.0 else abs(complex(p[-1])) <= atol):
        p.pop()
    return p


def udeg(p):
    return len(utrim(p)) - 1


def uadd(p, q):
    n = max(len(p), len(q))
    zero = _zero_like(p, q)
    return utrim([(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)])


def usub(p, q):
    return uadd(p, [-c for c in q])


def uscale(p, c):
    return utrim([c * x for x in p])


def umul(p, q):
    if not p or not q:
        return []
    zero = _zero_like(p, q)
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return utrim(out)


def uderiv(p):
    return utrim([i * p[i] for i in range(1, len(p))])


def ueval(p, x):
    acc = _zero_like(p)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def udivmod(p, q):
    """Division with remainder over a field (exact or float)."""
    p, q = utrim(p), utrim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [], p
    r = list(p)
    lead = q[-1]
    out = [_zero_like(p)] * (len(p) - len(q) + 1)
    for i in range(len(p) - len(q), -1, -1):
        c = r[i + len(q) - 1] / lead
        out[i] = c
        if is_zero(c):
            continue
        for j, b in enumerate(q):
            r[i + j] = r[i + j] - c * b
    return utrim(out), utrim(r[: len(q) - 1])


def uexact_div(p, q):
    quo, rem = udivmod(p, q)
    if rem:
        raise ValueError("polynomial division is not exact")
    return quo


def umonic(p):
    p = utrim(p)
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def ugcd(p, q):
    """Monic gcd over Q(i) by the Euclidean algorithm (exact only)."""
    p, q = utrim(p), utrim(q)
    while q:
        p, q = q, udivmod(p, q)[1]
    return umonic(p)


def _zero_like(*polys):
    for p in polys:
        for c in p:
            return ZERO if isinstance(c, GaussianRational) else 0j
    return ZERO


# -- interpolation ------------------------------------------------------------


@lru_cache(maxsize=None)
def _vandermonde_inverse_exact(d):
    """Inverse of the Vandermonde matrix on nodes 0..d, as Fractions."""
    n = d + 1
    a = [[Fraction(i) ** j for j in range(n)] + [Fraction(int(i == r)) for r in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def vandermonde_inverse(d: int, backend: str) -> np.ndarray:
    """``V^{-1}`` where ``V[i, j] = i**j`` on the integer nodes ``0..d``."""
    inv = _vandermonde_inverse_exact(d)
    if backend == EXACT:
        out = np.empty((d + 1, d + 1), dtype=object)
        for i, row in enumerate(inv):
            for j, x in enumerate(row):
                out[i, j] = GaussianRational._raw(x, Fraction(0))
        return out
    return np.array([[float(x) for x in row] for row in inv], dtype=complex)


def interpolate_grid(values: np.ndarray, backend: str) -> np.ndarray:
    """Coefficients from samples on the grid ``0..k x 0..l``.

    ``values`` has shape ``(k+1, l+1, ...)``; the trailing axes are carried
    along, so matrix-valued samples give matrix-valued coefficients.
    """
    k, l = values.shape[0] - 1, values.shape[1] - 1
    vz = vandermonde_inverse(k, backend)
    ve = vandermonde_inverse(l, backend)
    tmp = np.tensordot(vz, values, axes=([1], [0]))
    out = np.tensordot(ve, tmp, axes=([1], [1]))
    return np.swapaxes(out, 0, 1)


# -- bivariate ----------------------------------------------------------------


class BiPoly:
    """Polynomial ``sum c[a, b] zeta**a eta**b``.

    ``coeffs`` is trimmed to the actual support (an empty ``(0, 0)`` table for
    the zero polynomial); ``bounds`` records the nominal bidegree, which is at
    least the actual one.
    """

    __slots__ = ("coeffs", "bounds", "backend")

    def __init__(self, coeffs, bounds=None, backend=None):
        arr = np.asarray(coeffs)
        if arr.size == 0:
            arr = arr.reshape((0, 0))
        elif arr.ndim != 2:
            raise ValueError("coefficient table must be two-dimensional")
        if backend is None:
            backend = EXACT if arr.dtype == object else FLOAT
        if backend == FLOAT and arr.dtype == object:
            arr = np.array([[complex(x) for x in row] for row in arr], dtype=complex).reshape(arr.shape)
        elif backend == FLOAT:
            arr = arr.astype(complex)
        self.backend = backend
        self.coeffs = _trim2(arr)
        actual = (self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1)
        if bounds is None:
            bounds = actual
        bounds = (int(bounds[0]), int(bounds[1]))
        if self.coeffs.size and (bounds[0] < actual[0] or bounds[1] < actual[1]):
            raise ValueError(f"bounds {bounds} smaller than support {actual}")
        self.bounds = bounds
        self.coeffs.flags.writeable = False

    @classmethod
    def from_dict(cls, terms: dict, backend=EXACT, bounds=None):
        if not terms:
            return cls(zeros((0, 0), backend), bounds=bounds or (0, 0), backend=backend)
        dz = max(a for a, _ in terms)
        de = max(b for _, b in terms)
        arr = zeros((dz + 1, de + 1), backend)
        for (a, b), c in terms.items():
            arr[a, b] = arr[a, b] + (GaussianRational(c) if backend == EXACT else complex(c))
        return cls(arr, bounds=bounds, backend=backend)

    @classmethod
    def constant(cls, c, backend=EXACT):
        return cls.from_dict({(0, 0): c}, backend=backend)

    @classmethod
    def zeta(cls, backend=EXACT):
        return cls.from_dict({(1, 0): 1}, backend=backend)

    @classmethod
    def eta(cls, backend=EXACT):
        return cls.from_dict({(0, 1): 1}, backend=backend)

    # structure

    def is_zero(self):
        return self.coeffs.size == 0

    @property
    def degree(self):
        """Actual ``(deg_zeta, deg_eta)``; ``(-1, -1)`` for zero."""
        return (self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1) if self.coeffs.size else (-1, -1)

    def coeff(self, a, b):
        if 0 <= a < self.coeffs.shape[0] and 0 <= b < self.coeffs.shape[1]:
            return self.coeffs[a, b]
        return ZERO if self.backend == EXACT else 0j

    def terms(self):
        """Nonzero ``((a, b), c)`` pairs in lexicographic order."""
        return [((a, b), c) for (a, b), c in np.ndenumerate(self.coeffs) if not is_zero(c)]

    def leading_coeff(self):
        """Coefficient of the lexicographically largest (zeta, eta) monomial."""
        t = self.terms()
        return t[-1][1] if t else None

    def padded(self, bounds):
        out = zeros((bounds[0] + 1, bounds[1] + 1), self.backend)
        dz, de = self.coeffs.shape
        out[:dz, :de] = self.coeffs
        return out

    # arithmetic

    def _check(self, other):
        if not isinstance(other, BiPoly):
            return None
        if other.backend != self.backend:
            raise TypeError("cannot mix exact and float polynomials")
        return other

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other, self.backend)
        other = self._check(other)
        b = (max(self.bounds[0], other.bounds[0]), max(self.bounds[1], other.bounds[1]))
        return BiPoly(self.padded(b) + other.padded(b), bounds=b, backend=self.backend)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(-self.coeffs if self.coeffs.size else self.coeffs, bounds=self.bounds, backend=self.backend)

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other, self.backend)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly(self.coeffs * other if self.coeffs.size else self.coeffs,
                          bounds=self.bounds, backend=self.backend)
        other = self._check(other)
        b = (self.bounds[0] + other.bounds[0], self.bounds[1] + other.bounds[1])
        out = zeros((b[0] + 1, b[1] + 1), self.backend)
        if self.is_zero() or other.is_zero():
            return BiPoly(out, bounds=b, backend=self.backend)
        if self.backend == FLOAT:
            from scipy.signal import convolve2d

            full = convolve2d(self.coeffs, other.coeffs)
            out[: full.shape[0], : full.shape[1]] = full
        else:
            for (a1, b1), c1 in self.terms():
                for (a2, b2), c2 in other.terms():
                    out[a1 + a2, b1 + b2] = out[a1 + a2, b1 + b2] + c1 * c2
        return BiPoly(out, bounds=b, backend=self.backend)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = BiPoly.constant(1, self.backend)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other, self.backend)
        if self.coeffs.shape != other.coeffs.shape:
            return False
        return all(x == y for x, y in zip(self.coeffs.flat, other.coeffs.flat))

    __hash__ = None

    def allclose(self, other, rtol=1e-9, atol=1e-12):
        b = (max(self.bounds[0], other.bounds[0], 0), max(self.bounds[1], other.bounds[1], 0))
        x = np.asarray(self.padded(b), dtype=complex) if self.backend == FLOAT else _c(self.padded(b))
        y = np.asarray(other.padded(b), dtype=complex) if other.backend == FLOAT else _c(other.padded(b))
        return np.allclose(x, y, rtol=rtol, atol=atol)

    def __call__(self, zeta, eta):
        acc = ZERO if self.backend == EXACT else 0j
        for a in range(self.coeffs.shape[0] - 1, -1, -1):
            row = ZERO if self.backend == EXACT else 0j
            for b in range(self.coeffs.shape[1] - 1, -1, -1):
                row = row * eta + self.coeffs[a, b]
            acc = acc * zeta + row
        return acc

    def in_eta(self, zeta):
        """Univariate coefficients in eta after substituting zeta."""
        return utrim([ueval(list(self.coeffs[:, b]), zeta) for b in range(self.coeffs.shape[1])])

    def diff_zeta(self):
        if self.coeffs.shape[0] <= 1:
            return BiPoly(zeros((0, 0), self.backend), bounds=(0, 0), backend=self.backend)
        c = self.coeffs[1:] * np.arange(1, self.coeffs.shape[0]).reshape(-1, 1)
        if self.backend == EXACT:
            c = np.array([[GaussianRational(x) for x in row] for row in c], dtype=object).reshape(c.shape)
        return BiPoly(c, backend=self.backend)

    def diff_eta(self):
        return self.transpose().diff_zeta().transpose()

    def transpose(self):
        return BiPoly(self.coeffs.T.copy(), bounds=self.bounds[::-1], backend=self.backend)

    def normalized(self):
        """Scale so the lexicographically leading coefficient is 1."""
        lead = self.leading_coeff()
        if lead is None:
            return self
        return BiPoly(self.coeffs * (1 / lead), bounds=self.bounds, backend=self.backend)

    def to_float(self):
        if self.backend == FLOAT:
            return self
        return BiPoly(_c(self.coeffs) if self.coeffs.size else np.zeros((0, 0), complex),
                      bounds=self.bounds, backend=FLOAT)

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        terms = self.terms()
        if not terms:
            return "0"
        parts = []
        for (a, b), c in reversed(terms):
            mono = "*".join(v for v in (_pw("zeta", a), _pw("eta", b)) if v)
            cs = str(c) if self.backend == EXACT else f"({c.real:.6g}{c.imag:+.6g}j)"
            if mono:
                if cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"({cs})*{mono}" if self.backend == EXACT else f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")


def _pw(v, e):
    return "" if e == 0 else (v if e == 1 else f"{v}^{e}")


def _c(arr):
    out = np.empty(arr.shape, dtype=complex)
    for idx, x in np.ndenumerate(arr):
        out[idx] = complex(x)
    return out


def _trim2(arr):
    if arr.size == 0:
        return arr.reshape((0, 0))
    nz = np.array([[not is_zero(x) for x in row] for row in arr], dtype=bool).reshape(arr.shape)
    if not nz.any():
        return arr[:0, :0].copy()
    rows = np.nonzero(nz.any(axis=1))[0]
    cols = np.nonzero(nz.any(axis=0))[0]
    return arr[: rows[-1] + 1, : cols[-1] + 1].copy()


# -- exact bivariate division and gcd -------------------------------------------
# Internally a bivariate polynomial is a list (over zeta-degree) of univariate
# polynomials in eta.


def _to_rows(p: BiPoly):
    return [utrim(list(p.coeffs[a, :])) for a in range(p.coeffs.shape[0])]


def _from_rows(rows):
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    if not rows:
        return BiPoly(zeros((0, 0), EXACT), bounds=(0, 0), backend=EXACT)
    de = max((len(r) for r in rows), default=1)
    arr = zeros((len(rows), max(de, 1)), EXACT)
    for a, r in enumerate(rows):
        for b, c in enumerate(r):
            arr[a, b] = c
    return BiPoly(arr, backend=EXACT)


def _require_exact(*ps):
    for p in ps:
        if p.backend != EXACT:
            raise BackendUnsupported("bivariate gcd/division needs the exact backend")


def _prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` in zeta over Q(i)[eta]."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [umul(c, lb) for c in r]
        for j, c in enumerate(b):
            r[shift + j] = usub(r[shift + j], umul(lr, c))
        while r and not r[-1]:
            r.pop()
    return r


def _content(rows):
    g = []
    for r in rows:
        if r:
            g = ugcd(g, r) if g else umonic(r)
            if len(g) == 1:
                break
    return g


def bipoly_divide(p: BiPoly, q: BiPoly) -> BiPoly:
    """Exact quotient ``p / q``; raises ``ValueError`` if ``q`` does not divide ``p``."""
    _require_exact(p, q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = _to_rows(p), _to_rows(q)
    while b and not b[-1]:
        b.pop()
    quo = [[] for _ in range(max(len(a) - len(b) + 1, 0))]
    lb = b[-1]
    while a and len(a) >= len(b):
        shift = len(a) - len(b)
        c = uexact_div(a[-1], lb)
        quo[shift] = uadd(quo[shift], c)
        for j, x in enumerate(b):
            a[shift + j] = usub(a[shift + j], umul(c, x))
        while a and not a[-1]:
            a.pop()
    if a:
        raise ValueError("polynomial division is not exact")
    return _from_rows(quo)


def bipoly_gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """Greatest common divisor over Q(i), lexicographically monic.

    Zeta is the main variable: contents in Q(i)[eta] are split off, the
    primitive parts run through a subresultant remainder sequence, and the
    primitive part of the last nonzero remainder times the gcd of the
    contents is returned.
    """
    _require_exact(p, q)
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    a, b = _to_rows(p), _to_rows(q)
    ca, cb = _content(a), _content(b)
    cont = ugcd(ca, cb)
    a = [uexact_div(r, ca) if r else [] for r in a]
    b = [uexact_div(r, cb) if r else [] for r in b]
    if len(a) < len(b):
        a, b = b, a
    g, h = [ONE], [ONE]
    while True:
        if len(b) == 1:
            # b is a nonzero constant in zeta; the primitive gcd is 1.
            b = [[ONE]]
            break
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        a = b
        denom = umul(g, _upow(h, delta))
        b = [uexact_div(c, denom) if c else [] for c in r]
        g = a[-1]
        if delta > 0:
            h = uexact_div(_upow(g, delta), _upow(h, delta - 1))
    pp = _content(b)
    b = [uexact_div(c, pp) if c else [] for c in b]
    result = _from_rows([umul(cont, c) for c in b])
    return result.normalized()


def _upow(p, n):
    out = [ONE]
    for _ in range(n):
        out = umul(out, p)
    return out

