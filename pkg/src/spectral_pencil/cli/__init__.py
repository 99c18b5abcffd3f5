"""Command-line front end: ``spectral-pencil {gen,verify,inspect,flow}``.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or input errors. JSON output is byte-stable for a fixed command
line.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from ..algebra import DEFAULT_TOL, EXACT, FLOAT, ToleranceConfig, rank
from ..cohomology import HILBERT_GRID, hilbert_polynomial, rank_theorem_check, sheaf_cohomology, theorem1_check
from ..errors import NonLinearHilbert, NotAResolution, SchemaError, SpectralPencilError, StepRejected
from ..io import (bipoly_to_json, dumps, encode_scalar, load_instance, loads, orbit_spec_to_json,
                  quadruple_to_json)
from ..loop_orbit import boundary_data, free_properness_check, orbit_invariants, to_rational_map
from ..pencil import Pencil, bipurity_check, curve_csv, normalize, sample_curve, spectral_curve
from ..poisson import flow, spectral_hamiltonian
from .generate import random_quadruple
from .suites import SUITES, FlowParams, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _tol(args) -> ToleranceConfig:
    return ToleranceConfig(rank_rel_tol=args.tol_rank, eig_tol=DEFAULT_TOL.eig_tol, flow_drift_tol=args.tol_drift)


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _read_instance(source: str):
    if source.lstrip().startswith("{"):
        text = source
    elif source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(str(exc), "<input>") from None
    return load_instance(loads(text))


def _ints(text):
    return [int(t) for t in text.split(",") if t.strip()] if text else None


# -- subcommands --------------------------------------------------------------------------------


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    q = random_quadruple(rng, args.k, args.l, args.backend, rank_f=args.rank_f, rank_g=args.rank_g,
                         x_mults=_ints(args.x_mults), y_mults=_ints(args.y_mults))
    _emit(dumps(quadruple_to_json(q)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.trials, args.seed, args.backend, _tol(args),
                       FlowParams(args.dt, args.horizon))
    _emit(dumps(report), args.out)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def _guard(fn):
    try:
        return fn()
    except SpectralPencilError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}


def inspect_report(inst, tol: ToleranceConfig = DEFAULT_TOL, grid=HILBERT_GRID) -> dict:
    """Every derived quantity of a quadruple or pencil, as one JSON-ready dict."""
    q = normalize(inst, tol)[0] if isinstance(inst, Pencil) else inst
    curve = spectral_curve(q)
    exact = q.backend == EXACT
    rep = {
        "input": {"k": q.k, "l": q.l, "backend": q.backend, "kind": "pencil" if isinstance(inst, Pencil) else "quadruple"},
        "curve": {"det": bipoly_to_json(curve.det_poly),
                  "squarefree": bipoly_to_json(curve.squarefree_part) if exact else None,
                  "minimal": bipoly_to_json(curve.minimal_poly) if exact else None},
        "ranks": {"F": rank(q.F, tol), "G": rank(q.G, tol)},
    }
    try:
        rep["hilbert"] = str(hilbert_polynomial(q, tol)).replace("zeta", "x").replace("eta", "y")
        hilbert_ok = True
    except (NonLinearHilbert, NotAResolution) as exc:
        rep["hilbert"] = {"error": str(exc)}
        hilbert_ok = False
    rep["cohomology"] = [{"twist": [x, y], "h0": h[0], "h1": h[1]}
                         for x in grid for y in grid for h in [sheaf_cohomology(q, (x, y), tol)]]
    bip = bipurity_check(q, tol)
    rep["bipurity"] = {"vertical_ok": bip.vertical_ok, "horizontal_ok": bip.horizontal_ok,
                       "witnesses": [{"direction": w["direction"],
                                      "point": None if w["point"] is None else encode_scalar(w["point"]),
                                      "vector": [encode_scalar(v) for v in w["vector"]]} for w in bip.witnesses]}
    if q.k <= q.l:
        rt = rank_theorem_check(q, tol)
        t1 = theorem1_check(q, tol)
        rep["rank_theorem"] = {"h0_m11": rt.h0_m11, "h1_1m1": rt.h1_1m1, "ranks_full": rt.ranks_full,
                               "equivalence_holds": rt.equivalence_holds}
        rep["theorem1"] = {"h0_L_0m1": t1.h0_L_0m1, "h1_L_0m1": t1.h1_L_0m1, "h0_L_m10": t1.h0_L_m10,
                           "h1_L_1m2": t1.h1_L_1m2, "all_vanish": t1.all_vanish, "chi_L": t1.chi_L,
                           "degree_L": t1.degree_L, "agrees_with_rank_theorem": t1.agrees_with_rank_theorem}
    rep["orbit"] = _guard(lambda: orbit_spec_to_json(orbit_invariants(to_rational_map(q, tol), tol)))
    rep["boundary"] = {d: _guard(lambda d=d: _boundary_json(boundary_data(q, d, tol))) for d in ("eta", "zeta")}
    rep["free_proper"] = _guard(lambda: free_properness_check(q, tol))
    h00 = sheaf_cohomology(q, (0, 0), tol)
    rep["checks"] = {"acyclic": h00 == (0, 0), "hilbert_linear": hilbert_ok, "bipure": bip.bipure}
    return rep


def _boundary_json(b) -> dict:
    return {"points": [[encode_scalar(z), m] for z, m in b.points],
            "slopes": [[encode_scalar(s) for s in block] for block in b.slopes],
            "first_order": [c.to_json() for c in b.first_order]}


def cmd_inspect(args) -> int:
    inst = _read_instance(args.input)
    rep = inspect_report(inst, _tol(args))
    if args.curve_csv:
        zetas = np.linspace(-args.curve_range, args.curve_range, args.curve_points)
        with open(args.curve_csv, "w") as fh:
            fh.write(curve_csv(sample_curve(inst, zetas)))
    _emit(dumps(rep), args.out)
    return EXIT_OK if all(rep["checks"].values()) else EXIT_FAIL


def cmd_flow(args) -> int:
    inst = _read_instance(args.input)
    tol = _tol(args)
    q = normalize(inst, tol)[0] if isinstance(inst, Pencil) else inst
    a, b = _ints(args.hamiltonian)
    try:
        traj = flow(q, spectral_hamiltonian(a, b), args.dt, args.horizon, args.mode, tol=tol)
    except StepRejected as exc:
        _emit(dumps({"error": str(exc), "ok": False}), None)
        return EXIT_FAIL
    drift = traj.drift()
    coeff = max(v for n, v in drift.items() if n.startswith("H"))
    cas = max((v for n, v in drift.items() if n.startswith("tr")), default=0.0)
    ok = cas <= 1e-8 and (args.mode == "full" or coeff <= tol.flow_drift_tol)
    summary = {"hamiltonian": [a, b], "mode": args.mode, "dt": args.dt, "horizon": args.horizon,
               "steps": len(traj.times) - 1, "drift": drift, "max_coefficient_drift": coeff,
               "max_casimir_drift": cas, "final": quadruple_to_json(traj.final), "ok": ok}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(traj.to_csv())
    _emit(dumps(summary), None)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol-rank", type=float, default=DEFAULT_TOL.rank_rel_tol)
    common.add_argument("--tol-drift", type=float, default=DEFAULT_TOL.flow_drift_tol)
    common.add_argument("--dt", type=float, default=1e-3)
    common.add_argument("--horizon", type=float, default=1.0)

    parser = argparse.ArgumentParser(prog="spectral-pencil", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="random quadruple as JSON")
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--l", type=int, required=True)
    gen.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    gen.add_argument("--rank-f", type=int, default=None)
    gen.add_argument("--rank-g", type=int, default=None)
    gen.add_argument("--x-mults", default=None, help="eigenvalue multiplicities of X, e.g. 2,1")
    gen.add_argument("--y-mults", default=None)
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    ver.add_argument("suite", choices=sorted(SUITES))
    ver.add_argument("--trials", type=int, default=20)
    ver.add_argument("--backend", choices=(EXACT, FLOAT), default=None)
    ver.set_defaults(func=cmd_verify)

    ins = sub.add_parser("inspect", parents=[common], help="full report for one instance")
    ins.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
    ins.add_argument("--curve-csv", default=None, help="also write curve samples to this CSV")
    ins.add_argument("--curve-range", type=float, default=3.0)
    ins.add_argument("--curve-points", type=int, default=25)
    ins.set_defaults(func=cmd_inspect)

    flw = sub.add_parser("flow", parents=[common], help="integrate a spectral Hamiltonian flow")
    flw.add_argument("input")
    flw.add_argument("--hamiltonian", default="0,0", help="coefficient a,b of det M to use as H")
    flw.add_argument("--mode", choices=("leaf", "full"), default="leaf")
    flw.set_defaults(func=cmd_flow)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and (args.k < 1 or args.l < 1):
        parser.error("--k and --l must be at least 1")
    if args.command == "verify" and args.trials < 1:
        parser.error("--trials must be positive")
    try:
        return args.func(args)
    except (SchemaError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SpectralPencilError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
