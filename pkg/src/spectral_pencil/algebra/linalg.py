"""Dense linear algebra on both backends.

Exact ranks use fraction-free integer elimination on the realification of a
Gaussian-rational matrix; float ranks count singular values against
``rank_rel_tol * sigma_max``.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import NonSplitting, NotDiagonalizable
from .poly import udivmod, ueval, ugcd, uderiv, umonic, utrim
from .scalars import (DEFAULT_TOL, EXACT, FLOAT, ONE, ZERO, GaussianRational, ToleranceConfig, backend_of,
                      eye, is_exact, zeros)

# -- rank ---------------------------------------------------------------------


def _realified_integer_rows(m: np.ndarray):
    """Integer rows of ``[[A, -B], [B, A]]`` for ``m = A + iB``, each row scaled to Z."""
    top, bottom = [], []
    for row in m:
        den = 1
        for x in row:
            den = math.lcm(den, x.re.denominator, x.im.denominator)
        a = [int(x.re * den) for x in row]
        b = [int(x.im * den) for x in row]
        top.append(a + [-v for v in b])
        bottom.append(b + a)
    return top + bottom


def _integer_rank(rows, ncols) -> int:
    rows = [r for r in rows if any(r)]
    rank = 0
    for _ in range(ncols):
        if not rows:
            break
        best = None
        for idx, r in enumerate(rows):
            v = r[0]
            if v and (best is None or abs(v) < abs(rows[best][0])):
                best = idx
                if abs(v) == 1:
                    break
        if best is None:
            rows = [r[1:] for r in rows]
            continue
        prow = rows.pop(best)
        p = prow[0]
        rank += 1
        nxt = []
        for r in rows:
            f = r[0]
            if f:
                r = [p * x - f * y for x, y in zip(r[1:], prow[1:])]
                g = math.gcd(*r)
                if g > 1:
                    r = [x // g for x in r]
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r[1:])
        rows = [r for r in nxt if any(r)]
    return rank


def rank(m, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if is_exact(m):
        return _integer_rank(_realified_integer_rows(m), 2 * m.shape[1]) // 2
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero((s >= tol.rank_rel_tol * s[0]) & (s > 0)))


# -- exact elimination ----------------------------------------------------------


def _rref_exact(m: np.ndarray):
    a = [list(row) for row in m]
    nrows = len(a)
    ncols = m.shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = np.empty((nrows, ncols), dtype=object)
    for i in range(nrows):
        out[i, :] = a[i]
    return out, pivots


def rref(m):
    """Reduced row echelon form and pivot columns (exact backend)."""
    return _rref_exact(np.asarray(m))


def nullspace(m, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Columns spanning the right kernel."""
    m = np.asarray(m)
    ncols = m.shape[1]
    if is_exact(m):
        if m.shape[0] == 0:
            return eye(ncols, EXACT)
        red, pivots = _rref_exact(m)
        free = [c for c in range(ncols) if c not in pivots]
        basis = zeros((ncols, len(free)), EXACT)
        for j, fc in enumerate(free):
            basis[fc, j] = ONE
            for i, pc in enumerate(pivots):
                basis[pc, j] = -red[i, fc]
        return basis
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=complex)
    r = rank(m, tol)
    _, _, vh = np.linalg.svd(m)
    return vh[r:].conj().T


def det(m):
    m = np.asarray(m)
    n = m.shape[0]
    if n == 0:
        return ONE if is_exact(m) else 1.0 + 0j
    if not is_exact(m):
        return complex(np.linalg.det(m))
    a = [list(row) for row in m]
    sign = ONE
    acc = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        acc = acc * p
        inv = ONE / p
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * acc


def inv(m):
    m = np.asarray(m)
    n = m.shape[0]
    if not is_exact(m):
        return np.linalg.inv(m)
    aug = np.concatenate([m, eye(n, EXACT)], axis=1)
    red, pivots = _rref_exact(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:]


def solve(a, b):
    """Solve ``a x = b`` for square invertible ``a``."""
    if is_exact(a):
        return inv(a) @ b
    return np.linalg.solve(a, b)


def is_singular(m, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return rank(m, tol) < m.shape[0]


# -- characteristic polynomial and adjugate ----------------------------------------


def _faddeev_leverrier(m):
    """Coefficients ``c`` of ``det(lambda I - m)`` (ascending) and the adjugate."""
    n = m.shape[0]
    one = eye(n, EXACT)
    c = [ZERO] * (n + 1)
    c[n] = ONE
    mk = zeros((n, n), EXACT)
    prev = mk
    for k in range(1, n + 1):
        prev = mk
        mk = m @ mk + c[n - k + 1] * one
        am = m @ mk
        tr = sum((am[i, i] for i in range(n)), ZERO)
        c[n - k] = -tr / k
    # m_n satisfies m @ m_n = -c_0 I, and adj(m) = (-1)^(n-1) m_n.
    adj = mk if n % 2 == 1 else -mk
    return c, adj


def charpoly(m) -> list:
    """Monic ``det(lambda I - m)`` as ascending coefficients, length ``n + 1``."""
    m = np.asarray(m)
    n = m.shape[0]
    if n == 0:
        return [ONE] if is_exact(m) else [1.0 + 0j]
    if is_exact(m):
        return _faddeev_leverrier(m)[0]
    coeffs = np.poly(np.linalg.eigvals(m))[::-1]
    return [complex(x) for x in coeffs]


def adjugate(m) -> np.ndarray:
    """Classical adjoint; well defined for singular matrices too."""
    m = np.asarray(m)
    n = m.shape[0]
    if n == 0:
        return m.copy()
    if n == 1:
        return eye(1, backend_of(m))
    if is_exact(m):
        return _faddeev_leverrier(m)[1]
    return adjugate_batch(m[None])[0]


def adjugate_batch(ms: np.ndarray) -> np.ndarray:
    """Float adjugates of a stack ``(..., n, n)`` via batched cofactor minors."""
    n = ms.shape[-1]
    if n == 1:
        return np.ones_like(ms)
    idx = np.arange(n)
    keep = np.array([np.delete(idx, i) for i in range(n)])
    minors = ms[..., keep[:, None, :, None], keep[None, :, None, :]]
    cof = np.linalg.det(minors)
    signs = (-1.0) ** (idx[:, None] + idx[None, :])
    return np.swapaxes(cof * signs, -1, -2)


# -- eigenvalues ---------------------------------------------------------------------


def _eigen_key(x):
    return (x.re, x.im) if isinstance(x, GaussianRational) else (x.real, x.imag)


def _gaussian_integer_poly(p):
    den = 1
    for c in p:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    return [GaussianRational(c.re * den, c.im * den) for c in p]


def _round_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(round(x * (1 << bits)), 1 << bits)


def _newton_root(p, z0: complex, lead: GaussianRational):
    """Exact root of ``p`` near ``z0`` or ``None``.

    Any root ``a/b`` in lowest terms over Z[i] has ``b | lead``, so once the
    iterate is within ``1/(2|lead|)`` of it, ``round(lead z) / lead`` is the
    root itself. Newton steps are taken in exact arithmetic on a dyadic grid
    fine enough for that.
    """
    bits = int(lead.norm()).bit_length() + 64
    dp = uderiv(p)
    z = GaussianRational(Fraction(z0.real), Fraction(z0.imag))
    for _ in range(40):
        w = lead * z
        cand = GaussianRational(round(w.re), round(w.im)) / lead
        if not ueval(p, cand):
            return cand
        d = ueval(dp, z)
        if not d:
            return None
        z = z - ueval(p, z) / d
        z = GaussianRational(_round_dyadic(z.re, bits), _round_dyadic(z.im, bits))
    return None


def _exact_roots(p):
    """Distinct roots in Q(i) of a squarefree polynomial; raises if it does not split."""
    p = _gaussian_integer_poly(utrim(p))
    deg = len(p) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [-p[0] / p[1]]
    approx = np.roots([complex(c) for c in reversed(p)])
    roots = []
    rest = p
    for z in approx:
        if len(rest) == 2:
            found = -rest[0] / rest[1]
        else:
            found = _newton_root(rest, complex(z), p[-1])
        if found is None:
            raise NonSplitting("characteristic polynomial does not split over Q(i)")
        roots.append(found)
        rest, rem = udivmod(rest, [-found, ONE])
        assert not rem
    return roots


def eigen(m, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigenvalues with algebraic multiplicities, sorted ascending by (Re, Im).

    Exact inputs need a characteristic polynomial that splits over Q(i);
    float eigenvalues within ``eig_tol`` are merged into one cluster.
    """
    m = np.asarray(m)
    n = m.shape[0]
    if n == 0:
        return []
    if is_exact(m):
        cp = charpoly(m)
        sqf = umonic(udivmod(cp, ugcd(cp, uderiv(cp)))[0])
        out = []
        for root in _exact_roots(sqf):
            mult, rest = 0, cp
            while True:
                q, r = udivmod(rest, [-root, ONE])
                if r:
                    break
                mult += 1
                rest = q
            out.append((root, mult))
        out.sort(key=lambda t: _eigen_key(t[0]))
        return out
    vals = sorted(np.linalg.eigvals(m), key=_eigen_key)
    clusters = []
    for v in vals:
        for c in clusters:
            centre = np.mean(c)
            if abs(v - centre) <= tol.eig_tol * max(1.0, abs(centre)):
                c.append(v)
                break
        else:
            clusters.append([v])
    out = [(complex(np.mean(c)), len(c)) for c in clusters]
    out.sort(key=lambda t: _eigen_key(t[0]))
    return out


def diagonalize(m, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigen-decomposition ``m = V diag V^{-1}`` grouped into eigenvalue blocks.

    Returns ``(blocks, V, Vinv)`` where ``blocks`` lists ``(eigenvalue, size)``
    in ascending (Re, Im) order and the columns of ``V`` follow that order.
    """
    m = np.asarray(m)
    n = m.shape[0]
    backend = backend_of(m)
    blocks = eigen(m, tol)
    cols = []
    for lam, mult in blocks:
        shifted = m - lam * eye(n, backend)
        if backend == EXACT:
            ker = nullspace(shifted)
        else:
            # judge the kernel against the scale of m; shifted alone may be pure roundoff
            _, s, vh = np.linalg.svd(shifted)
            scale = max(np.linalg.norm(m, 2), abs(lam))
            r = int(np.count_nonzero(s > tol.rank_rel_tol * scale)) if scale else 0
            if n - r < mult:
                raise NotDiagonalizable("geometric multiplicity below algebraic multiplicity")
            ker = vh[n - mult:].conj().T
        if ker.shape[1] != mult:
            raise NotDiagonalizable("geometric multiplicity below algebraic multiplicity")
        cols.append(ker)
    v = np.concatenate(cols, axis=1) if cols else zeros((0, 0), backend)
    if backend == FLOAT and n and np.linalg.cond(v) > 1.0 / tol.eig_tol:
        raise NotDiagonalizable("eigenvector matrix is numerically singular")
    return blocks, v, inv(v)
