"""Seeded random quadruples.

Exact entries are Gaussian rationals whose real and imaginary parts have
numerators in ``[-10, 10]`` and denominators in ``[1, 10]``; float entries
are standard complex normals. Constrained matrices (prescribed rank or
eigenvalue multiplicities) are products of such draws.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..algebra import EXACT, FLOAT, inv, rank, zeros
from ..algebra.scalars import GaussianRational
from ..errors import GenerationFailed, ZeroDeterminant
from ..pencil import Quadruple, spectral_det

MAX_RETRIES = 100


def random_matrix(rng: np.random.Generator, shape, backend: str, height: int = 10) -> np.ndarray:
    if backend == FLOAT:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    num = rng.integers(-height, height + 1, size=(2,) + tuple(shape))
    den = rng.integers(1, height + 1, size=(2,) + tuple(shape))
    out = zeros(shape, EXACT)
    for idx in np.ndindex(*shape):
        out[idx] = GaussianRational(Fraction(int(num[0][idx]), int(den[0][idx])),
                                    Fraction(int(num[1][idx]), int(den[1][idx])))
    return out


def random_invertible(rng, n: int, backend: str) -> np.ndarray:
    for _ in range(MAX_RETRIES):
        g = random_matrix(rng, (n, n), backend)
        if rank(g) == n:
            return g
    raise GenerationFailed("no invertible matrix drawn")


def random_of_rank(rng, shape, r: int, backend: str) -> np.ndarray:
    """Product of ``shape[0] x r`` and ``r x shape[1]`` draws, retried until the rank is ``r``."""
    if not 0 <= r <= min(shape):
        raise GenerationFailed(f"rank {r} impossible for shape {shape}")
    if r == 0:
        return zeros(shape, backend)
    for _ in range(MAX_RETRIES):
        m = random_matrix(rng, (shape[0], r), backend) @ random_matrix(rng, (r, shape[1]), backend)
        if rank(m) == r:
            return m
    raise GenerationFailed(f"no rank-{r} matrix drawn")


def random_diagonalizable(rng, mults, backend: str, height: int = 5) -> np.ndarray:
    """``V diag(lambda_i I_{m_i}) V^{-1}`` with distinct Gaussian-integer eigenvalues."""
    n = sum(mults)
    seen = set()
    eig = []
    while len(eig) < len(mults):
        z = (int(rng.integers(-height, height + 1)), int(rng.integers(-height, height + 1)))
        if z not in seen:
            seen.add(z)
            eig.append(z)
    d = zeros((n, n), backend)
    pos = 0
    for (re, im), m in zip(eig, mults):
        for _ in range(m):
            d[pos, pos] = GaussianRational(re, im) if backend == EXACT else complex(re, im)
            pos += 1
    v = random_invertible(rng, n, backend)
    return v @ d @ inv(v)


def random_quadruple(rng, k: int, l: int, backend: str = EXACT, rank_f=None, rank_g=None, x_mults=None,
                     y_mults=None) -> Quadruple:
    """Random quadruple with optional rank and diagonalizability constraints.

    Retries up to 100 times until ``det M`` is not identically zero.
    """
    for _ in range(MAX_RETRIES):
        x = random_diagonalizable(rng, x_mults, backend) if x_mults else random_matrix(rng, (k, k), backend)
        y = random_diagonalizable(rng, y_mults, backend) if y_mults else random_matrix(rng, (l, l), backend)
        f = random_of_rank(rng, (k, l), rank_f, backend) if rank_f is not None else random_matrix(rng, (k, l), backend)
        g = random_of_rank(rng, (l, k), rank_g, backend) if rank_g is not None else random_matrix(rng, (l, k), backend)
        q = Quadruple(x, y, f, g)
        try:
            spectral_det(q)
        except ZeroDeterminant:
            continue
        return q
    raise GenerationFailed("det M vanished identically on every draw")
