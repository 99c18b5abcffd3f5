"""Poisson structure on quadruples, spectral Hamiltonians and their flows.

Gradients follow the trace pairing

    df = tr(dX_f dX) + tr(dY_f dY) + tr(dF_f dF) + tr(dG_f dG),

so ``dF_f`` is ``l x k`` and ``dG_f`` is ``k x l``. The bracket is the
Lie-Poisson bracket on ``X`` and ``Y`` plus the canonical one on ``(F, G)``:

    {f, g} = tr(X [dX_f, dX_g]) + tr(Y [dY_f, dY_g]) + tr(dF_f dG_g - dF_g dG_f)

which gives ``{F_ab, G_cd} = delta_ad delta_bc``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import DEFAULT_TOL, ConjClassInvariant, ToleranceConfig, backend_of, diagonalize, eye, zeros
from .errors import IncompatibleXY, StepRejected
from .pencil import Quadruple, adjugate_coefficients, spectral_det

SLOTS = ("X", "Y", "F", "G")


def _grad_shapes(q: Quadruple):
    k, l = q.k, q.l
    return {"X": (k, k), "Y": (l, l), "F": (l, k), "G": (k, l)}


def _zero_grad(q: Quadruple):
    shapes = _grad_shapes(q)
    return tuple(zeros(shapes[s], q.backend) for s in SLOTS)


@dataclass(frozen=True)
class HamiltonianFn:
    """A function on quadruples with its exact gradient ``(dX, dY, dF, dG)``.

    Sums, differences and products of Hamiltonians are Hamiltonians; the
    product uses the Leibniz rule.
    """

    name: str
    value: Callable
    gradient: Callable

    def __call__(self, q: Quadruple):
        return self.value(q)

    def __add__(self, other):
        other = _lift(other)
        return HamiltonianFn(f"({self.name} + {other.name})", lambda q: self.value(q) + other.value(q),
                             lambda q: tuple(a + b for a, b in zip(self.gradient(q), other.gradient(q))))

    __radd__ = __add__

    def __neg__(self):
        return HamiltonianFn(f"-{self.name}", lambda q: -self.value(q),
                             lambda q: tuple(-a for a in self.gradient(q)))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)

        def grad(q):
            f, g = self.value(q), other.value(q)
            return tuple(a * g + f * b for a, b in zip(self.gradient(q), other.gradient(q)))

        return HamiltonianFn(f"{self.name} * {other.name}", lambda q: self.value(q) * other.value(q), grad)

    __rmul__ = __mul__


def constant(c) -> HamiltonianFn:
    return HamiltonianFn(str(c), lambda q: c, _zero_grad)


def _lift(x) -> HamiltonianFn:
    return x if isinstance(x, HamiltonianFn) else constant(x)


def coordinate(slot: str, i: int, j: int) -> HamiltonianFn:
    """The matrix entry ``slot[i, j]``; its gradient is the unit matrix ``E_ji``."""
    idx = SLOTS.index(slot)

    def grad(q):
        g = list(_zero_grad(q))
        g[idx][j, i] = g[idx][j, i] + 1
        return tuple(g)

    return HamiltonianFn(f"{slot}[{i},{j}]", lambda q: getattr(q, slot)[i, j], grad)


def trace_power(slot: str, m: int) -> HamiltonianFn:
    """``tr W^m`` for ``W`` = X or Y; a Casimir of the bracket."""
    if slot not in ("X", "Y"):
        raise ValueError("trace powers are defined for X and Y")
    idx = SLOTS.index(slot)

    def value(q):
        return np.trace(_matpow(getattr(q, slot), m))

    def grad(q):
        w = getattr(q, slot)
        g = list(_zero_grad(q))
        g[idx] = m * _matpow(w, m - 1)
        return tuple(g)

    return HamiltonianFn(f"tr {slot}^{m}", value, grad)


def _matpow(w, m):
    out = eye(w.shape[0], backend_of(w))
    for _ in range(m):
        out = out @ w
    return out


def trace_word(word: str, c) -> HamiltonianFn:
    """``tr(C w_1 ... w_m)`` for a word in the letters X, Y, F, G.

    The gradient in letter ``w_j`` is ``w_{j+1} ... w_m C w_1 ... w_{j-1}``.
    """
    c = np.asarray(c)

    def mats(q):
        return [getattr(q, ch) for ch in word]

    def value(q):
        prod = c
        for w in mats(q):
            prod = prod @ w
        return np.trace(prod)

    def grad(q):
        ws = mats(q)
        g = list(_zero_grad(q))
        for j, ch in enumerate(word):
            left = c
            for w in ws[:j]:
                left = left @ w
            right = None
            for w in ws[j + 1:]:
                right = w if right is None else right @ w
            term = left if right is None else right @ left
            idx = SLOTS.index(ch)
            g[idx] = g[idx] + term
        return tuple(g)

    return HamiltonianFn(f"tr(C {word})", value, grad)


def spectral_hamiltonian(a: int, b: int) -> HamiltonianFn:
    """Coefficient of ``zeta^a eta^b`` in ``det M(zeta, eta)``.

    With ``adj M = [[P, Q], [R, S]]`` the identity ``d det M = tr(adj M dM)``
    gives ``(dX, dY, dF, dG) = (P, S, R, Q)``, each read off at ``(a, b)``.
    """

    def value(q):
        d = spectral_det(q)
        return d.coeff(a, b)

    def grad(q):
        if not (0 <= a <= q.k and 0 <= b <= q.l):
            raise ValueError(f"({a}, {b}) outside the bidegree ({q.k}, {q.l})")
        adj = adjugate_coefficients(q)[a, b]
        k = q.k
        return adj[:k, :k], adj[k:, k:], adj[k:, :k], adj[:k, k:]

    return HamiltonianFn(f"H[{a},{b}]", value, grad)


def spectral_combination(weights) -> HamiltonianFn:
    """``sum_ab weights[a, b] H[a,b]`` with one adjugate interpolation per gradient."""
    w = np.asarray(weights)

    def value(q):
        d = spectral_det(q).padded((q.k, q.l))
        return np.sum(w * d)

    def grad(q):
        if w.shape != (q.k + 1, q.l + 1):
            raise ValueError(f"weights must have shape {(q.k + 1, q.l + 1)}")
        adj = np.tensordot(w, adjugate_coefficients(q), axes=([0, 1], [0, 1]))
        k = q.k
        return adj[:k, :k], adj[k:, k:], adj[k:, :k], adj[:k, k:]

    return HamiltonianFn("sum w H", value, grad)


# -- bracket ---------------------------------------------------------------------------------


def _comm(a, b):
    return a @ b - b @ a


def bracket_from_gradients(q: Quadruple, df, dg, part: str = "full"):
    fx, fy, ff, fg = df
    gx, gy, gf, gg = dg
    canonical = np.trace(ff @ gg) - np.trace(gf @ fg) if q.k and q.l else 0
    if part == "fg":
        return canonical
    if part != "full":
        raise ValueError("part must be 'full' or 'fg'")
    lie = (np.trace(q.X @ _comm(fx, gx)) if q.k else 0) + (np.trace(q.Y @ _comm(fy, gy)) if q.l else 0)
    return lie + canonical


def bracket(f: HamiltonianFn, g: HamiltonianFn, at: Quadruple, part: str = "full"):
    """``{f, g}`` at a point; ``part="fg"`` keeps only the canonical ``(F, G)`` term."""
    return bracket_from_gradients(at, f.gradient(at), g.gradient(at), part)


def vector_field(q: Quadruple, h: HamiltonianFn, mode: str = "full"):
    """``(Xdot, Ydot, Fdot, Gdot)`` of ``fdot = {f, H}``."""
    dx, dy, df, dg = h.gradient(q)
    if mode == "leaf":
        xd, yd = zeros(q.X.shape, q.backend), zeros(q.Y.shape, q.backend)
    elif mode == "full":
        xd, yd = _comm(dx, q.X), _comm(dy, q.Y)
    else:
        raise ValueError("mode must be 'full' or 'leaf'")
    return xd, yd, dg, -df


# -- flows --------------------------------------------------------------------------------------


def standard_monitors(q: Quadruple) -> dict:
    """Every coefficient ``H[a,b]`` of ``det M`` plus the Casimirs ``tr X^m``, ``tr Y^m``."""
    d = spectral_det(q).padded((q.k, q.l))
    out = {f"H[{a},{b}]": d[a, b] for a in range(q.k + 1) for b in range(q.l + 1)}
    for slot, w in (("X", q.X), ("Y", q.Y)):
        if w.shape[0]:
            p = w
            for m in range(1, max(q.k, q.l) + 1):
                out[f"tr {slot}^{m}"] = np.trace(p)
                p = p @ w
    return out


def _relative_drift(series):
    series = np.asarray(series, dtype=complex)
    return float(np.max(np.abs(series - series[0])) / max(1.0, abs(series[0])))


@dataclass
class Trajectory:
    times: np.ndarray
    states: list
    energy: np.ndarray
    monitors: dict = field(default_factory=dict)

    @property
    def final(self) -> Quadruple:
        return self.states[-1]

    def drift(self) -> dict:
        """Relative drift ``max_t |m(t) - m(0)| / max(1, |m(0)|)`` of each monitor and of H."""
        out = {name: _relative_drift(v) for name, v in self.monitors.items()}
        out["H"] = _relative_drift(self.energy)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = sorted(self.monitors)
        cas = [n for n in names if n.startswith("tr ")]
        coeffs = [n for n in names if n.startswith("H[")]
        w.writerow(["t", "norm_X", "norm_Y", "H"] + coeffs + [f"drift {n}" for n in cas])
        for i, (t, q) in enumerate(zip(self.times, self.states)):
            row = [t, np.linalg.norm(q.X), np.linalg.norm(q.Y), abs(self.energy[i])]
            row += [abs(self.monitors[n][i]) for n in coeffs]
            row += [abs(self.monitors[n][i] - self.monitors[n][0]) for n in cas]
            w.writerow([f"{float(x):.17g}" for x in row])
        return buf.getvalue()


def _rk4_step(q: Quadruple, h: HamiltonianFn, dt: float, mode: str) -> Quadruple:
    def shift(base, vel, s):
        return Quadruple(*(b + s * v for b, v in zip((base.X, base.Y, base.F, base.G), vel)))

    k1 = vector_field(q, h, mode)
    k2 = vector_field(shift(q, k1, dt / 2), h, mode)
    k3 = vector_field(shift(q, k2, dt / 2), h, mode)
    k4 = vector_field(shift(q, k3, dt), h, mode)
    vel = tuple((a + 2 * b + 2 * c + d) / 6 for a, b, c, d in zip(k1, k2, k3, k4))
    return shift(q, vel, dt)


def flow(q0: Quadruple, h: HamiltonianFn, dt: float, horizon: float, mode: str = "leaf",
         monitors: dict | None = None, tol: ToleranceConfig = DEFAULT_TOL) -> Trajectory:
    """Fixed-step RK4 integration of the Hamiltonian flow of ``h``.

    In ``leaf`` mode ``X`` and ``Y`` are frozen and only ``(F, G)`` move.
    ``monitors`` maps a state to named values recorded at every step
    (default :func:`standard_monitors`); a dict of Hamiltonians also works.
    Raises :class:`StepRejected` when a single step changes ``H`` by more
    than ``flow_drift_tol * max(1, |H|)``.
    """
    q = q0.with_backend("float")
    nsteps = int(round(horizon / dt))
    if monitors is None:
        monitors = standard_monitors
    elif isinstance(monitors, dict):
        fns = monitors
        monitors = lambda state: {name: m(state) for name, m in fns.items()}  # noqa: E731
    times = dt * np.arange(nsteps + 1)
    states = [q]
    energy = [complex(h(q))]
    series = {name: [complex(v)] for name, v in monitors(q).items()}
    for step in range(nsteps):
        q = _rk4_step(q, h, dt, mode)
        e = complex(h(q))
        if abs(e - energy[-1]) > tol.flow_drift_tol * max(1.0, abs(energy[-1])):
            raise StepRejected(f"energy jumped by {abs(e - energy[-1]):.3g} at step {step}; reduce dt")
        states.append(q)
        energy.append(e)
        for name, v in monitors(q).items():
            series[name].append(complex(v))
    return Trajectory(times, states, np.array(energy), {n: np.array(v) for n, v in series.items()})


# -- moment maps and leaves ---------------------------------------------------------------------


def x_blocks(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """``(eigenvalue, F_i, G_i)`` per eigenvalue block of ``X`` in diagonalizing coordinates."""
    blocks, v, vinv = diagonalize(q.X, tol)
    f = vinv @ q.F
    g = q.G @ v
    out, start = [], 0
    for lam, size in blocks:
        out.append((lam, f[start:start + size], g[:, start:start + size]))
        start += size
    return out


def y_blocks(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """``(eigenvalue, F^j, G^j)`` per eigenvalue block of ``Y`` in diagonalizing coordinates."""
    blocks, w, winv = diagonalize(q.Y, tol)
    f = q.F @ w
    g = winv @ q.G
    out, start = [], 0
    for lam, size in blocks:
        out.append((lam, f[:, start:start + size], g[start:start + size]))
        start += size
    return out


def moment_map_X(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """Blocks ``F_i G_i`` after conjugating ``X`` to block-scalar form.

    Blocks follow the eigenvalues of ``X`` in ascending (Re, Im) order; each
    block is defined up to conjugation in ``GL(k_i)``.
    """
    return [f @ g for _, f, g in x_blocks(q, tol)]


def moment_map_Y(q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """Blocks ``G^j F^j`` after conjugating ``Y`` to block-scalar form."""
    return [g @ f for _, f, g in y_blocks(q, tol)]


@dataclass(frozen=True, eq=False)
class LeafSpec:
    X: np.ndarray
    Y: np.ndarray
    pi: tuple
    rho: tuple

    @classmethod
    def of(cls, q: Quadruple, tol: ToleranceConfig = DEFAULT_TOL) -> "LeafSpec":
        """The leaf through ``q``."""
        pi = tuple(ConjClassInvariant.of(b, tol) for b in moment_map_X(q, tol))
        rho = tuple(ConjClassInvariant.of(b, tol) for b in moment_map_Y(q, tol))
        return cls(q.X, q.Y, pi, rho)


def leaf_membership(q: Quadruple, spec: LeafSpec, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether the moment-map blocks of ``q`` lie in the classes of ``spec``."""
    for a, b in ((q.X, spec.X), (q.Y, spec.Y)):
        if a.shape != b.shape or not ConjClassInvariant.of(a, tol).same_class(ConjClassInvariant.of(b, tol), tol):
            raise IncompatibleXY("X or Y is not conjugate to the leaf's")
    pi = moment_map_X(q, tol)
    rho = moment_map_Y(q, tol)
    if len(pi) != len(spec.pi) or len(rho) != len(spec.rho):
        return False
    return all(ConjClassInvariant.of(b, tol).same_class(c, tol) for b, c in zip(pi + rho, spec.pi + spec.rho))
