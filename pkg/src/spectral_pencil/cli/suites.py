"""Named verification suites.

Each suite runs one seeded trial at a time and returns a JSON-ready dict
with at least ``passed``; :func:`run_suite` fans trials out and merges the
reports in trial order, recording the seed that reproduces each failure.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..algebra import DEFAULT_TOL, EXACT, FLOAT, BiPoly, ToleranceConfig, bipoly_gcd, det, eye, inv, to_float
from ..algebra.scalars import GaussianRational
from ..cohomology import (HILBERT_GRID, closed_form_chi, euler_characteristic, hilbert_polynomial, koszul_complex,
                          monad_cohomology, rank_theorem_check, sheaf_cohomology, theorem1_check)
from ..loop_orbit import boundary_data, from_rational_map, orbit_invariants, to_rational_map
from ..pencil import Quadruple, act_K, spectral_det
from ..poisson import (SLOTS, HamiltonianFn, bracket, bracket_from_gradients, constant, coordinate, flow,
                       spectral_combination, spectral_hamiltonian, trace_word, vector_field)
from .generate import random_invertible, random_matrix, random_quadruple

DEFAULT_BACKEND = {
    "acyclicity": EXACT, "hilbert": EXACT, "genus": EXACT, "rank-theorem": EXACT, "theorem1": EXACT,
    "jacobi": FLOAT, "leaf-commute": FLOAT, "isospectral": FLOAT, "roundtrip": FLOAT,
}


@dataclass(frozen=True)
class FlowParams:
    dt: float = 1e-3
    horizon: float = 1.0


def trial_seed(seed: int, index: int) -> int:
    """Independent 63-bit seed for trial ``index`` of a run."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0] >> np.uint64(1))


def _sizes(rng, lo, hi, ordered=False):
    k, l = (int(v) for v in rng.integers(lo, hi + 1, size=2))
    return (min(k, l), max(k, l)) if ordered else (k, l)


# -- cohomological suites -------------------------------------------------------------------------


def suite_acyclicity(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 3)
    q = random_quadruple(rng, k, l, backend)
    h = sheaf_cohomology(q, (0, 0), tol)
    return {"k": k, "l": l, "h0": h[0], "h1": h[1], "passed": h == (0, 0)}


def suite_hilbert(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 3)
    q = random_quadruple(rng, k, l, backend)
    p = hilbert_polynomial(q, tol)
    expected = BiPoly.from_dict({(1, 0): l, (0, 1): k}, backend=EXACT)
    closed = all(euler_characteristic(q, (x, y), tol) == closed_form_chi(k, l, (x, y))
                 for x in HILBERT_GRID for y in HILBERT_GRID)
    return {"k": k, "l": l, "hilbert": str(p), "passed": p == expected and closed}


def random_curve(rng, k: int, l: int) -> BiPoly:
    """Gaussian-integer polynomial of exact bidegree ``(k, l)``, retried until squarefree."""
    for _ in range(100):
        c = rng.integers(-5, 6, size=(2, k + 1, l + 1))
        c[0, k, l] = c[0, k, l] or 1
        coeffs = np.empty((k + 1, l + 1), dtype=object)
        for idx in np.ndindex(k + 1, l + 1):
            coeffs[idx] = GaussianRational(int(c[0][idx]), int(c[1][idx]))
        p = BiPoly(coeffs, backend=EXACT)
        g = bipoly_gcd(p, bipoly_gcd(p.diff_zeta(), p.diff_eta()))
        if g.degree == (0, 0):
            return p
    raise RuntimeError("no squarefree curve drawn")


def suite_genus(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 4)
    p = random_curve(rng, k, l)
    h0, h1, _ = monad_cohomology(koszul_complex(p, k, l), (0, 0), tol)
    g = (k - 1) * (l - 1)
    return {"k": k, "l": l, "h0": h0, "h1": h1, "genus": g, "passed": h0 == 1 and h1 == g}


def _mixed_quadruple(rng, backend, max_size=4):
    k, l = _sizes(rng, 1, max_size, ordered=True)
    if rng.random() < 0.5:
        rf, rg = int(rng.integers(0, k + 1)), int(rng.integers(0, k + 1))
    else:
        rf = rg = k
    return random_quadruple(rng, k, l, backend, rank_f=rf, rank_g=rg)


def suite_rank_theorem(rng, backend, tol, params):
    q = _mixed_quadruple(rng, backend)
    r = rank_theorem_check(q, tol)
    return {"k": q.k, "l": q.l, "rankF": r.rankF, "rankG": r.rankG, "h0_m11": r.h0_m11, "h1_1m1": r.h1_1m1,
            "passed": r.equivalence_holds}


def suite_theorem1(rng, backend, tol, params):
    q = _mixed_quadruple(rng, backend)
    r = theorem1_check(q, tol)
    return {"k": q.k, "l": q.l, "all_vanish": r.all_vanish, "ranks_full": r.ranks_full, "chi_L": r.chi_L,
            "degree_L": r.degree_L, "passed": r.agrees_with_rank_theorem}


# -- Poisson suites ----------------------------------------------------------------------------------

_SHAPE = {"X": ("k", "k"), "Y": ("l", "l"), "F": ("k", "l"), "G": ("l", "k")}


def random_word(rng, length: int) -> str:
    """Letters from X, Y, F, G whose matrix product is defined."""
    word = str(rng.choice(list(SLOTS)))
    while len(word) < length:
        nxt = [s for s in SLOTS if _SHAPE[s][0] == _SHAPE[word[-1]][1]]
        word += str(rng.choice(nxt))
    return word


def random_polynomial_hamiltonian(rng, k: int, l: int, degree: int = 2) -> HamiltonianFn:
    """Constant plus random trace words of length ``1..degree`` with random coefficient matrices."""
    dims = {"k": k, "l": l}
    h = constant(complex(rng.standard_normal()))
    for length in range(1, degree + 1):
        for _ in range(2):
            w = random_word(rng, length)
            shape = (dims[_SHAPE[w[-1]][1]], dims[_SHAPE[w[0]][0]])
            h = h + trace_word(w, random_matrix(rng, shape, FLOAT))
    return h


def bracket_gradient(f: HamiltonianFn, g: HamiltonianFn, q: Quadruple, step: float = 1e-2) -> tuple:
    """Gradient of ``{f, g}`` by the five-point stencil.

    For brackets of quadratic Hamiltonians ``{f, g}`` is a cubic polynomial,
    on which the stencil is exact up to rounding.
    """
    out = []
    for slot in SLOTS:
        base = getattr(q, slot)
        grad = np.zeros(base.shape[::-1], dtype=complex)
        for idx in np.ndindex(*base.shape):
            vals = []
            for t in (-2, -1, 1, 2):
                m = base.copy()
                m[idx] += t * step
                vals.append(bracket(f, g, q.replace(**{slot: m})))
            grad[idx[::-1]] = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * step)
        out.append(grad)
    return tuple(out)


def suite_jacobi(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 3)
    q = random_quadruple(rng, k, l, FLOAT)
    f, g, h = (random_polynomial_hamiltonian(rng, k, l) for _ in range(3))
    scale = max(1.0, abs(bracket(f, g, q)), abs(bracket(g, h, q)), abs(bracket(h, f, q)))
    antisym = abs(bracket(f, g, q) + bracket(g, f, q)) / scale
    leibniz = abs(bracket(f, g * h, q) - (bracket(f, g, q) * h(q) + g(q) * bracket(f, h, q)))
    leibniz /= max(1.0, abs(bracket(f, g * h, q)))
    terms = [bracket_from_gradients(q, a.gradient(q), bracket_gradient(b, c, q))
             for a, b, c in ((f, g, h), (g, h, f), (h, f, g))]
    jacobi = abs(sum(terms)) / max(1.0, *(abs(t) for t in terms))
    canonical = complex(bracket(coordinate("F", 0, 0), coordinate("G", 0, 0), q))
    return {"k": k, "l": l, "antisymmetry": float(antisym), "leibniz": float(leibniz), "jacobi": float(jacobi),
            "F11_G11": canonical.real,
            "passed": bool(antisym <= 1e-9 and leibniz <= 1e-9 and jacobi <= 1e-8 and canonical == 1)}


def suite_leaf_commute(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 3)
    q = random_quadruple(rng, k, l, FLOAT)
    hs = [spectral_hamiltonian(a, b) for a in range(k + 1) for b in range(l + 1)]
    grads = [h.gradient(q) for h in hs]
    worst_fg = max(abs(bracket_from_gradients(q, a, b, "fg")) for a in grads for b in grads)
    worst_full = max(abs(bracket_from_gradients(q, a, b, "full")) for a in grads for b in grads)
    # the full-bracket value is informational only; it is not expected to vanish
    return {"k": k, "l": l, "max_fg_bracket": float(worst_fg), "max_full_bracket": float(worst_full),
            "passed": bool(worst_fg <= 1e-9)}


def suite_isospectral(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 3)
    q = random_quadruple(rng, k, l, FLOAT)
    coeffs = random_matrix(rng, (k + 1, l + 1), FLOAT)
    # unit initial rate |v| / |(F, G)| = 1, as for the closed-form case; a fixed step
    # cannot bound the drift of arbitrarily fast flows
    v = vector_field(q, spectral_combination(coeffs), "leaf")
    rate = np.hypot(np.linalg.norm(v[2]), np.linalg.norm(v[3])) / np.hypot(np.linalg.norm(q.F), np.linalg.norm(q.G))
    h = spectral_combination(coeffs / rate)
    traj = flow(q, h, params.dt, params.horizon, "leaf", tol=tol)
    drift = traj.drift()
    det_drift = max(v for n, v in drift.items() if n.startswith("H"))
    cas_drift = max((v for n, v in drift.items() if n.startswith("tr")), default=0.0)
    return {"k": k, "l": l, "max_coefficient_drift": det_drift, "max_casimir_drift": cas_drift,
            "passed": det_drift <= tol.flow_drift_tol and cas_drift <= 1e-8}


def _partition(rng, n):
    parts = []
    while n:
        m = int(rng.integers(1, n + 1))
        parts.append(m)
        n -= m
    return parts


def _sample_points(rng, n, backend):
    pts = random_matrix(rng, (n,), backend)
    return [p * 3 for p in pts]


def suite_roundtrip(rng, backend, tol, params):
    k, l = _sizes(rng, 1, 3)
    if backend == EXACT:
        # exact conjugacy data needs Y and every F_i G_i to split over Q(i)
        parts, y_parts = [1] * k, _partition(rng, l)
    else:
        parts, y_parts = _partition(rng, k), None
    q = random_quadruple(rng, k, l, backend, x_mults=parts, y_mults=y_parts)
    r = to_rational_map(q, tol)
    r2 = to_rational_map(from_rational_map(r, tol), tol)
    pts = _sample_points(rng, 10, backend)
    roundtrip = 0.0
    block = 0.0
    for z in pts:
        a, b = to_float(r(z)), to_float(r2(z))
        roundtrip = max(roundtrip, float(np.abs(a - b).max() / max(1.0, np.abs(a).max())))
        direct = q.Y + q.G @ inv(z * eye(k, backend) - q.X) @ q.F
        roundtrip = max(roundtrip, float(np.abs(a - to_float(direct)).max() / max(1.0, np.abs(a).max())))
        e = pts[0] / 2 + 1
        lhs = det(q.matrix(z, e))
        rhs = det(q.X - z * eye(k, backend)) * det(r(z) - e * eye(l, backend))
        block = max(block, abs(complex(lhs - rhs)) / max(1.0, abs(complex(lhs))))
    spec = orbit_invariants(r, tol)
    invariant = True
    for _ in range(5):
        g, hh = random_invertible(rng, k, backend), random_invertible(rng, l, backend)
        other = orbit_invariants(to_rational_map(act_K(q, g, hh), tol), tol)
        invariant &= spec.same_orbit(other, tol)
    exact = backend == EXACT
    ok_rt = roundtrip == 0 if exact else roundtrip <= 1e-10
    ok_block = block == 0 if exact else block <= 1e-10
    return {"k": k, "l": l, "x_mults": parts, "roundtrip_error": roundtrip, "block_det_error": block,
            "orbit_invariant": bool(invariant), "passed": ok_rt and ok_block and bool(invariant)}


SUITES = {
    "acyclicity": suite_acyclicity,
    "hilbert": suite_hilbert,
    "genus": suite_genus,
    "rank-theorem": suite_rank_theorem,
    "theorem1": suite_theorem1,
    "jacobi": suite_jacobi,
    "leaf-commute": suite_leaf_commute,
    "isospectral": suite_isospectral,
    "roundtrip": suite_roundtrip,
}


def run_trial(name: str, seed: int, index: int, backend: str, tol: ToleranceConfig, params: FlowParams) -> dict:
    s = trial_seed(seed, index)
    rng = np.random.default_rng(s)
    try:
        out = SUITES[name](rng, backend, tol, params)
    except Exception as exc:  # failures are data, including unexpected errors
        out = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
    out["trial"] = index
    out["seed"] = s
    return out


def max_workers() -> int:
    cap = os.environ.get("SPECTRAL_PENCIL_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def run_suite(name: str, trials: int, seed: int, backend: str | None = None, tol: ToleranceConfig = DEFAULT_TOL,
              params: FlowParams = FlowParams(), workers: int | None = None) -> dict:
    """Run ``trials`` seeded trials and merge them deterministically by index."""
    if name not in SUITES:
        raise KeyError(name)
    backend = backend or DEFAULT_BACKEND[name]
    workers = max_workers() if workers is None else workers
    args = [(name, seed, i, backend, tol, params) for i in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=min(workers, trials)) as pool:
            results = list(pool.map(run_trial, *zip(*args)))
    else:
        results = [run_trial(*a) for a in args]
    failures = [r for r in results if not r["passed"]]
    return {"suite": name, "backend": backend, "seed": seed, "trials": trials,
            "passed": len(results) - len(failures), "failed": len(failures),
            "ok": not failures, "results": results,
            "failures": [{"trial": r["trial"], "seed": r["seed"], **({"error": r["error"]} if "error" in r else {})}
                         for r in failures]}
