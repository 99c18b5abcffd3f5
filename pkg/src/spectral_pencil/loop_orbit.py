"""Rational matrix functions ``R(zeta) = Y + sum_i R_i / (zeta - zeta_i)`` and orbit data.

A quadruple with diagonalizable ``X`` gives ``R(zeta) = Y + G (zeta - X)^{-1} F``;
the residue at the eigenvalue ``zeta_i`` is ``G_i F_i`` in coordinates where
``X`` is block-scalar, and it has rank ``k_i`` exactly when the group action
is free there.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import (DEFAULT_TOL, EXACT, ConjClassInvariant, ToleranceConfig, backend_of, det, eigen, eye, rank,
                      rref, zeros)
from .algebra.conjugacy import match_points
from .algebra.scalars import GaussianRational
from .pencil import Quadruple
from .poisson import x_blocks, y_blocks


def _key(z):
    return (z.re, z.im) if isinstance(z, GaussianRational) else (complex(z).real, complex(z).imag)


@dataclass(frozen=True, eq=False)
class RationalMap:
    """``Y + sum R_i / (zeta - zeta_i)`` with poles sorted ascending by (Re, Im)."""

    Y: np.ndarray
    poles: tuple
    residues: tuple

    def __post_init__(self):
        if len(self.poles) != len(self.residues):
            raise ValueError("one residue per pole")
        order = sorted(range(len(self.poles)), key=lambda i: _key(self.poles[i]))
        poles = tuple(self.poles[i] for i in order)
        if any(poles[i] == poles[i + 1] for i in range(len(poles) - 1)):
            raise ValueError("poles must be distinct")
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "residues", tuple(np.asarray(self.residues[i]) for i in order))
        object.__setattr__(self, "Y", np.asarray(self.Y))

    @property
    def l(self) -> int:
        return self.Y.shape[0]

    @property
    def backend(self) -> str:
        return backend_of(self.Y)

    def ranks(self, tol: ToleranceConfig = DEFAULT_TOL) -> tuple:
        return tuple(rank(r, tol) for r in self.residues)

    def __call__(self, zeta):
        out = self.Y
        for z, r in zip(self.poles, self.residues):
            out = out + r * (1 / (zeta - z))
        return out


def to_rational_map(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> RationalMap:
    """``Y + G (zeta - X)^{-1} F`` as poles and residues; needs diagonalizable ``X``."""
    if q.k == 0:
        return RationalMap(q.Y, (), ())
    blocks = x_blocks(q, tol)
    return RationalMap(q.Y, tuple(lam for lam, _, _ in blocks), tuple(g @ f for _, f, g in blocks))


def _full_rank_factor(r, tol):
    """``r = g @ f`` with ``g`` of full column rank and ``f`` of full row rank."""
    if backend_of(r) == EXACT:
        red, pivots = rref(r)
        return r[:, pivots], red[:len(pivots)]
    qm, t, perm = scipy.linalg.qr(r, pivoting=True)
    d = np.abs(np.diag(t))
    k = int(np.count_nonzero(d >= tol.rank_rel_tol * d[0])) if d.size and d[0] > 0 else 0
    f = np.zeros((k, r.shape[1]), dtype=complex)
    f[:, perm] = t[:k]
    return qm[:, :k], f


def from_rational_map(r: RationalMap, tol: ToleranceConfig = DEFAULT_TOL) -> Quadruple:
    """A quadruple with ``X = diag(zeta_i I_{k_i})``, ``k_i = rank R_i``.

    The residues are split as ``R_i = G_i F_i`` by a pivoted factorization
    (reduced row echelon form on the exact backend, column-pivoted QR on
    floats), which fixes the ``GL(k_i)`` gauge. No poles gives ``k = 0``.
    """
    be, l = r.backend, r.l
    fs, gs, diag = [], [], []
    for z, res in zip(r.poles, r.residues):
        g, f = _full_rank_factor(res, tol)
        fs.append(f)
        gs.append(g)
        diag += [z] * f.shape[0]
    k = len(diag)
    x = zeros((k, k), be)
    for i, z in enumerate(diag):
        x[i, i] = z
    f = np.concatenate(fs, axis=0) if fs else zeros((0, l), be)
    g = np.concatenate(gs, axis=1) if gs else zeros((l, 0), be)
    return Quadruple(x, r.Y, f, g)


# -- orbit invariants ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbitSpec:
    """Pole positions plus the classes ``Q_0`` of ``Y`` and ``Q_i`` of each residue."""

    poles: tuple
    Q0: ConjClassInvariant
    residue_classes: tuple
    semisimple: bool

    @property
    def ranks(self) -> tuple:
        return tuple(c.rank for c in self.residue_classes)

    def same_orbit(self, other: "OrbitSpec", tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        perm = match_points(self.poles, other.poles, tol)
        if perm is None:
            return False
        return self.Q0.same_class(other.Q0, tol) and all(
            self.residue_classes[i].same_class(other.residue_classes[j], tol) for i, j in enumerate(perm))


def orbit_invariants(r: RationalMap, tol: ToleranceConfig = DEFAULT_TOL) -> OrbitSpec:
    """Finite data determining the semi-reduced orbit of ``R``.

    Non-semisimple ``Y`` or residues are accepted; the ``semisimple`` flag is
    cleared and a warning is emitted, since the invariants are then only
    conjectured to separate orbits.
    """
    q0 = ConjClassInvariant.of(r.Y, tol)
    classes = tuple(ConjClassInvariant.of(m, tol) for m in r.residues)
    semisimple = q0.is_semisimple and all(c.is_semisimple for c in classes)
    if not semisimple:
        warnings.warn("non-semisimple Y or residue: orbit invariants may not separate orbits", stacklevel=2)
    return OrbitSpec(r.poles, q0, classes, semisimple)


# -- boundary data -----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """Restriction to ``eta = inf`` (or ``zeta = inf``) and its first-order data.

    ``points`` are ``(pole, multiplicity)`` pairs and ``slopes[i]`` lists the
    eigenvalues of ``F_i G_i`` (resp. ``G^j F^j``) with multiplicity.
    """

    direction: str
    points: tuple
    first_order: tuple
    slopes: tuple


def _eigenvalue_list(m, tol):
    out = []
    for lam, mult in eigen(m, tol):
        out += [lam] * mult
    return tuple(out)


def boundary_data(q: Quadruple, direction: str = "eta", tol: ToleranceConfig = DEFAULT_TOL) -> BoundaryData:
    """Points of the curve on ``eta = inf`` (``direction="eta"``) or ``zeta = inf``."""
    if direction == "eta":
        mats = [(lam, f @ g) for lam, f, g in x_blocks(q, tol)] if q.k else []
    elif direction == "zeta":
        mats = [(lam, g @ f) for lam, f, g in y_blocks(q, tol)] if q.l else []
    else:
        raise ValueError("direction must be 'eta' or 'zeta'")
    return BoundaryData(direction,
                        tuple((lam, m.shape[0]) for lam, m in mats),
                        tuple(ConjClassInvariant.of(m, tol) for _, m in mats),
                        tuple(_eigenvalue_list(m, tol) for _, m in mats))


def free_properness_check(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``rank F_i = rank G_i = k_i`` on every eigenvalue block of ``X``."""
    return all(rank(f, tol) == f.shape[0] and rank(g, tol) == f.shape[0] for _, f, g in x_blocks(q, tol))


def block_determinant(q: Quadruple, zeta, eta, tol: ToleranceConfig = DEFAULT_TOL):
    """``det(X - zeta) det(R(zeta) - eta)``, which equals ``det M(zeta, eta)`` off the poles."""
    be = q.backend
    r = to_rational_map(q, tol)
    return det(q.X - zeta * eye(q.k, be)) * det(r(zeta) - eta * eye(q.l, be))
