from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .linalg import charpoly, eigen, rank
from .scalars import DEFAULT_TOL, GaussianRational, EXACT, FLOAT, ToleranceConfig, backend_of, eye


def _scaled_rank(power, shifted, m, tol) -> int:
    # thresholds are relative to |T - lambda|^m, not to the power itself,
    # whose own scale collapses to roundoff once it should be zero
    s = np.linalg.svd(power, compute_uv=False)
    scale = max(s[0], np.linalg.norm(shifted, 2) ** m)
    return 0 if scale == 0 else int(np.count_nonzero(s >= tol.rank_rel_tol * scale))


def match_points(a, b, tol: ToleranceConfig = DEFAULT_TOL, slack: float = 1.0):
    """Pair two lists of complex points, or return ``None`` if they differ.

    Exact points must coincide as listed. Float points are paired by minimal
    total distance, so near-ties in the (Re, Im) ordering do not matter; the
    result ``perm`` has ``b[perm[i]]`` matched with ``a[i]``.
    """
    if len(a) != len(b):
        return None
    if all(isinstance(x, (GaussianRational, int)) for x in (*a, *b)):
        return list(range(len(a))) if list(a) == list(b) else None
    ca, cb = np.array([complex(x) for x in a]), np.array([complex(x) for x in b])
    cost = np.abs(ca[:, None] - cb[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = [0] * len(a)
    for i, j in zip(rows, cols):
        if cost[i, j] > slack * tol.eig_tol * max(1.0, abs(ca[i]), abs(cb[j])):
            return None
        perm[i] = int(j)
    return perm


@dataclass(frozen=True)
class ConjClassInvariant:
    """Computable proxy for the Jordan type of a square matrix.

    ``rank_sequence[i][m - 1]`` is ``rank (T - lambda_i)^m`` for the i-th
    eigenvalue in ``eigenvalues`` (ascending Re, Im) and ``m = 1..n``.
    """

    size: int
    charpoly: tuple
    eigenvalues: tuple
    rank_sequence: tuple
    backend: str = EXACT

    @classmethod
    def of(cls, t, tol: ToleranceConfig = DEFAULT_TOL) -> "ConjClassInvariant":
        t = np.asarray(t)
        n = t.shape[0]
        backend = backend_of(t)
        eig = eigen(t, tol)
        seqs = []
        for lam, _ in eig:
            shifted = t - lam * eye(n, backend)
            power = eye(n, backend)
            seq = []
            for m in range(1, n + 1):
                power = power @ shifted
                seq.append(rank(power, tol) if backend == EXACT else _scaled_rank(power, shifted, m, tol))
            seqs.append(tuple(seq))
        return cls(n, tuple(charpoly(t)), tuple(eig), tuple(seqs), backend)

    @property
    def rank(self) -> int:
        """Rank of the matrix itself (n minus the nullity at eigenvalue 0)."""
        for (lam, _), seq in zip(self.eigenvalues, self.rank_sequence):
            if lam == 0:
                return seq[0]
        return self.size

    @property
    def is_semisimple(self) -> bool:
        return all(seq[0] == self.size - mult for (_, mult), seq in zip(self.eigenvalues, self.rank_sequence))

    def same_class(self, other: "ConjClassInvariant", tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        if self.size != other.size or len(self.eigenvalues) != len(other.eigenvalues):
            return False
        if self.backend == EXACT and other.backend == EXACT:
            return (self.charpoly == other.charpoly and self.eigenvalues == other.eigenvalues
                    and self.rank_sequence == other.rank_sequence)
        for a, b in zip(self.charpoly, other.charpoly):
            a, b = complex(a), complex(b)
            if abs(a - b) > tol.eig_tol * max(1.0, abs(a), abs(b)):
                return False
        perm = match_points([lam for lam, _ in self.eigenvalues], [lam for lam, _ in other.eigenvalues], tol, 10)
        if perm is None:
            return False
        return all(self.eigenvalues[i][1] == other.eigenvalues[j][1]
                   and self.rank_sequence[i] == other.rank_sequence[j] for i, j in enumerate(perm))

    def to_json(self):
        from ..io import encode_scalar

        return {
            "size": self.size,
            "charpoly": [encode_scalar(c) for c in self.charpoly],
            "eigenvalues": [[encode_scalar(lam), m] for lam, m in self.eigenvalues],
            "rank_sequence": [list(s) for s in self.rank_sequence],
        }
