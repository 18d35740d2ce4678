"""Command-line front end.

Every run produces a JSON record (config echo, toolkit version, outputs)
and, for commands with dense tables, CSV files.  Floats are written with
17 significant digits so identical configs give byte-identical files.
Wall time is kept out of the record and goes to a ``.timing.json``
sidecar (or stderr when writing to stdout).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__

COMMANDS = ("cap", "cantor", "lusin", "dirichlet", "rh", "beltrami", "dimension")

# operation -> command that reaches it
COVERAGE = {
    "capacity.vandermonde_product": "cap fekete",
    "capacity.fekete_points": "cap fekete",
    "capacity.transfinite_diameter": "cap estimate --method transfinite",
    "capacity.log_potential": "cap estimate --method potential",
    "capacity.capacity_via_potential": "cap estimate --method potential",
    "capacity.density_ratio": "cap density",
    "capacity.is_log_thin": "cap thin",
    "cantor_lusin.cantor_stage": "cantor build",
    "cantor_lusin.is_zero_capacity": "cantor build",
    "cantor_lusin.cantor_function": "cantor build",
    "cantor_lusin.lusin_antiderivative": "lusin run",
    "cantor_lusin.flatten_on_subdivision": "lusin run",
    "harmonic.poisson_extend": "dirichlet solve",
    "harmonic.angular_derivative": "dirichlet solve",
    "harmonic.gehring_solution": "dirichlet solve --stages n",
    "harmonic.conjugate": "dirichlet solve",
    "harmonic.hp_norm": "dirichlet solve",
    "harmonic.probe_limit": "dirichlet solve",
    "rh_analytic.total_variation": "rh solve",
    "rh_analytic.bv_argument": "rh solve",
    "rh_analytic.schwarz_analytic": "rh solve",
    "rh_analytic.rh_solve": "rh solve",
    "rh_analytic.verify_boundary": "rh solve",
    "rh_analytic.conjugate_boundary_data": "rh solve",
    "beltrami.distortion_quotient": "beltrami solve",
    "beltrami.solve_qc": "beltrami solve",
    "beltrami.disk_normalize": "beltrami solve",
    "beltrami.rh_beltrami": "beltrami solve",
    "beltrami.regularity_audit": "beltrami solve",
    "dimension_family.basis_member": "dimension demo",
    "dimension_family.family_member": "dimension demo",
    "dimension_family.remainder_bound_check": "dimension demo",
    "dimension_family.independence_probe": "dimension demo",
    "dimension_family.rh_family": "dimension demo --rh",
}


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _plain(obj):
    """Convert numpy and complex values into JSON-ready Python objects."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def dumps(obj, indent: int = 1) -> str:
    """JSON text with every float at 17 significant digits."""
    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None:
            return "null"
        if isinstance(o, bool):
            return "true" if o else "false"
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return format_float(o)
        if isinstance(o, str):
            return json.dumps(o, ensure_ascii=False)
        if isinstance(o, list):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [pad + json.dumps(k) + ": " + enc(v, level + 1) for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        raise TypeError(f"cannot serialize {type(o).__name__}")
    return enc(_plain(obj), 0) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        cells = []
        for v in _plain(list(row)):
            if isinstance(v, float):
                cells.append(format_float(v))
            elif isinstance(v, list):
                cells.append(";".join(format_float(x) for x in v))
            else:
                cells.append(str(v))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def _read_csv_columns(path: str) -> np.ndarray:
    try:
        data = np.loadtxt(path, delimiter=",", ndmin=2, comments="#")
    except (OSError, ValueError) as exc:
        raise ConfigError("csv", f"cannot read {path}: {exc}") from None
    return data


def _boundary_input(text: str, M: int, key: str):
    from .harmonic import BoundaryFunction, builtin_boundary
    if text.startswith("builtin:"):
        try:
            return builtin_boundary(text.split(":", 1)[1], M)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None
    vals = _read_csv_columns(text)[:, -1]
    return BoundaryFunction(vals)


def _lambda_input(text: str, M: int):
    from .rh_analytic import UnimodularBV, builtin_lambda
    if text.startswith("builtin:"):
        try:
            return builtin_lambda(text.split(":", 1)[1], M)
        except ValueError as exc:
            raise ConfigError("lambda", str(exc)) from None
    cols = _read_csv_columns(text)
    if cols.shape[1] < 2:
        raise ConfigError("lambda", "CSV needs columns re,im")
    return UnimodularBV(cols[:, -2] + 1j * cols[:, -1])


def _check(key, ok, message):
    if not ok:
        raise ConfigError(key, message)


def _floats(text: str, key: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(key, f"expected comma-separated numbers, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_cap(args):
    from .capacity import (
        capacity_via_potential, density_ratio, fekete_points, is_log_thin,
        parse_set_spec, transfinite_diameter, vandermonde_product,
    )
    try:
        E = parse_set_spec(args.set)
    except ValueError as exc:
        raise ConfigError("set", str(exc)) from None
    nmax = args.nmax or 32
    _check("nmax", 4 <= nmax <= 256, "must lie in [4, 256]")
    if args.action == "estimate":
        if args.method == "potential":
            est = capacity_via_potential(E, node_count=args.nodes)
        else:
            est = transfinite_diameter(E, n_max=nmax)
        return {
            "value": est.value, "wiener": est.wiener, "robin_constant": est.robin_constant,
            "error_bar": est.error_bar, "method": est.method,
            "n_sequence": list(est.n_sequence), "diameter_sequence": list(est.diameter_sequence),
        }, {}
    if args.action == "fekete":
        n = args.n
        _check("n", 2 <= n <= 256, "must lie in [2, 256]")
        res = fekete_points(E, n)
        tables = {"fekete_points.csv": to_csv(["re", "im"], [(p.real, p.imag) for p in res.points])}
        return {"n": n, "v_n": res.v_n, "diameter_estimate": res.diameter_estimate,
                "vandermonde_product": vandermonde_product(res.points),
                "points": [complex(p) for p in res.points]}, tables
    if args.action == "density":
        _check("eps", args.eps is not None and args.eps > 0, "must be positive")
        r = density_ratio(E, args.x0, args.eps, n_max=min(nmax, 24), scale=args.scale)
        return {"x0": args.x0, "eps": args.eps, "scale": args.scale, "ratio": r}, {}
    if args.action == "thin":
        eps_seq = _floats(args.eps_seq, "eps-seq")
        _check("eps-seq", eps_seq and all(e > 0 for e in eps_seq), "must be positive")
        rep = is_log_thin(E, args.x0, eps_seq, n_max=min(nmax, 16), scale=args.scale)
        return {"x0": args.x0, "verdict": rep.verdict, "heuristic": rep.heuristic,
                "eps": rep.deltas, "capacities": rep.capacities, "terms": rep.terms}, {}
    raise ConfigError("action", f"unknown cap action {args.action!r}")


def cmd_cantor(args):
    from .cantor_lusin import cantor_function, cantor_stage, is_zero_capacity, parse_pk
    try:
        spec = parse_pk(args.pk, depth=args.depth)
    except ValueError as exc:
        raise ConfigError("pk", str(exc)) from None
    _check("depth", 1 <= args.depth <= 30, "must lie in [1, 30]")
    st = cantor_stage(spec, spec.depth)
    zc = is_zero_capacity(spec, args.horizon)
    psi = cantor_function(spec, spec.depth)
    rows = [(i, a, b) for i, (a, b) in enumerate(st.intervals)]
    tables = {
        "cantor_intervals.csv": to_csv(["index", "left", "right"], rows),
        "cantor_psi.csv": to_csv(["t", "psi"], zip(psi.breakpoints, psi.values)),
    }
    return {
        "spec": {"kind": spec.kind, "c": spec.c, "values": list(spec.values), "depth": spec.depth},
        "stage": spec.depth, "interval_count": int(st.intervals.shape[0]),
        "total_length": st.total_length,
        "zero_capacity": {"diverges": zc.diverges, "terms": list(zc.terms),
                          "partial_sums": list(zc.partial_sums)},
    }, tables


def cmd_lusin(args):
    from .cantor_lusin import builtin_phi, capacity_audit, lusin_antiderivative, quotient_audit
    _check("eps", args.eps > 0, "must be positive")
    _check("stages", 1 <= args.stages <= 12, "must lie in [1, 12]")
    cells = args.grid or 2 ** 14
    _check("grid", 8 <= cells <= 2 ** 20, "must lie in [8, 2^20]")
    if args.phi.startswith("builtin:"):
        try:
            phi = builtin_phi(args.phi.split(":", 1)[1], cells)
        except ValueError as exc:
            raise ConfigError("phi", str(exc)) from None
    else:
        phi = _read_csv_columns(args.phi)[:, -1]
    res = lusin_antiderivative(phi, args.eps, args.stages)
    caps = capacity_audit(res, n_max=args.nmax or 16)
    quot = quotient_audit(res)
    stages = [{"n": st.n, "admitted": st.admitted,
               "Q": [list(p) for p in st.Q.pieces], "bad_components": len(st.bad.pieces)}
              for st in res.stages]
    tables = {"lusin_Phi.csv": to_csv(["x", "phi", "Phi"], zip(res.x, res.phi_samples, res.Phi))}
    return {
        "eps": args.eps, "stages": stages, "max_abs_Phi": float(np.max(np.abs(res.Phi))),
        "endpoints": [res.Phi[0], res.Phi[-1]], "capacity_audit": caps, "quotient_audit": quot,
    }, tables


def cmd_dirichlet(args):
    from .harmonic import (
        angular_derivative, conjugate, default_probe, gehring_solution, hp_norm,
        poisson_extend, probe_limit,
    )
    M = args.grid or 1024
    _check("grid", M >= 1024 and M & (M - 1) == 0, "must be a power of two >= 1024")
    phi = _boundary_input(args.phi, M, "phi")
    theta, aperture = _floats(args.probe, "probe") if args.probe else (0.0, math.pi / 4)
    _check("probe", 0 < aperture < math.pi / 2, "aperture must lie in (0, pi/2)")
    U = poisson_extend(phi)
    out = {"grid": M, "coefficients": U.coeffs[U.N:U.N + min(U.N, 64) + 1]}
    fields = {"U": U, "V": conjugate(U), "dU/dtheta": angular_derivative(U)}
    if args.stages:
        fields["gehring"] = gehring_solution(phi, args.eps, args.stages)
    probes = {}
    for name, F in fields.items():
        res = probe_limit(F, default_probe(theta, F.N, aperture))
        probes[name] = {"limit": res.limit, "path_limits": res.path_limits,
                        "converged": res.converged, "residuals": res.residuals[1]}
    r_grid = [0.5, 0.9, min(F.r_max for F in fields.values())]
    out.update({
        "probe": {"theta": theta, "aperture": aperture, "results": probes},
        "hp": {f"p={p}": {name: hp_norm(F, p, r_grid) for name, F in fields.items()}
               for p in (1, 2)},
        "hp_r_grid": r_grid,
    })
    return out, {}


def cmd_rh(args):
    from .rh_analytic import rh_solve, total_variation
    M = args.grid or 4096
    _check("grid", M >= 256 and M & (M - 1) == 0, "must be a power of two >= 256")
    _check("stages", 0 <= args.stages <= 8, "must lie in [0, 8]")
    lam = _lambda_input(args.lam, M)
    phi = _boundary_input(args.phi, lam.M, "phi")
    sol = rh_solve(lam, phi, eps=args.eps, stages=args.stages, tol=args.tol or 1e-2)
    arg = sol.argument
    tables = {"rh_boundary.csv": to_csv(
        ["theta", "alpha", "beta", "beta_converged"],
        zip(2 * np.pi * np.arange(M) / M, arg.alpha, sol.beta.beta, sol.beta.converged.astype(int)))}
    return {
        "grid": M,
        "lambda_variation": total_variation(lam.samples),
        "alpha": {"winding": arg.winding, "variation": arg.variation,
                  "jump_locations": arg.jump_locations, "jump_sizes": arg.jump_sizes,
                  "jump_chords": arg.jump_chords, "table": arg.alpha},
        "beta": {"table": sol.beta.beta, "converged_fraction": float(np.mean(sol.beta.converged)),
                 "exceptional_arcs": [list(p) for p in sol.beta.flagged_arcs.pieces],
                 "exceptional_wiener": sol.beta.wiener_capacity},
        "g_coefficients": sol.g.coeffs[sol.g.N:sol.g.N + 65],
        "B_coefficients": sol.B.coeffs[sol.B.N:sol.B.N + 65],
        "residual_report": sol.report.as_dict(),
    }, tables


def cmd_beltrami(args):
    from .beltrami import (
        beltrami_residual, boundary_map, builtin_mu, distortion_quotient, regularity_audit,
        rh_beltrami,
    )
    n = args.lattice
    _check("lattice", n >= 64 and n % 16 == 0, "must be a multiple of 16, at least 64")
    M = args.grid or 4096
    _check("grid", M >= 256 and M & (M - 1) == 0, "must be a power of two >= 256")
    try:
        mu = builtin_mu(args.mu, n)
    except ValueError as exc:
        raise ConfigError("mu", str(exc)) from None
    lam = _lambda_input(args.lam, M)
    phi = _boundary_input(args.phi, lam.M, "phi")
    sol = rh_beltrami(mu, lam, phi, tol=args.tol or 1e-8, eps=args.eps, stages=args.stages)
    H = sol.H
    h = H.source
    d = max(1, args.decimate)
    K = distortion_quotient(mu)
    sub = slice(0, None, d)
    tables = {"beltrami_boundary.csv": to_csv(["theta", "psi"], zip(H.boundary_theta, H.boundary_psi))}
    return {
        "lattice": n, "grid": M, "k_bound": mu.k_bound, "max_distortion": float(K.max()),
        "neumann": {"iterations": h.iterations, "ratios": h.ratios},
        "normalization": {"h0": h.h0, "h1": h.h1, "H0": H.h0, "H1": H.h1},
        "h_decimated": {"step": d, "x": h.x[sub], "re": h.values[sub, sub].real,
                        "im": h.values[sub, sub].imag},
        "boundary_correspondence": {"theta": H.boundary_theta[::max(1, M // 256)],
                                    "psi": boundary_map(H, H.boundary_theta[::max(1, M // 256)])},
        "beltrami_residual": beltrami_residual(sol),
        "regularity": regularity_audit(sol),
        "residual_report": sol.report.as_dict(),
        "pulled_back_angles": sol.pulled_angles,
    }, tables


def cmd_dimension(args):
    from .dimension_family import (
        GammaSequence, basis_member, family_member, hp_growth, independence_probe,
        remainder_bound_check, rh_family,
    )
    try:
        gamma = GammaSequence.parse(args.gamma)
    except ValueError as exc:
        raise ConfigError("gamma", str(exc)) from None
    _check("gamma", 1 <= len(gamma) <= 16, "needs 1 to 16 entries")
    _check("m", 0 <= args.m < len(gamma), "must satisfy 0 <= m < len(gamma)")
    r_grid = _floats(args.r, "r")
    _check("r", all(0 <= r < 1 for r in r_grid), "radii must lie in [0, 1)")
    M = args.grid or 2 ** 12
    _check("grid", M >= 256 and M & (M - 1) == 0, "must be a power of two >= 256")
    rb = remainder_bound_check(gamma, args.m, r_grid, M=M)
    member = family_member(gamma, M=M)
    witnesses = [independence_probe(member, n) for n in range(1, len(gamma) + 1)
                 if gamma[n] != 0.0]
    u0 = [float(basis_member(n, M=M).coef(0).real) for n in range(1, len(gamma) + 1)]
    out = {
        "gamma": list(gamma.gamma), "m": args.m, "grid": M,
        "remainder": rb, "independence": witnesses, "basis_mean_values": u0,
        "hp_trend": {"r": [0.5, 0.9, 0.99],
                     "p=2": hp_growth(member, 2.0, [0.5, 0.9, 0.99])},
    }
    if args.rh:
        lam = _lambda_input(args.lam, args.rh_grid)
        phi = _boundary_input(args.phi, lam.M, "phi")
        sol = rh_family(lam, phi, gamma)
        out["rh_family"] = {"f_half": complex(sol.f(0.5)), "residual_report": sol.report.as_dict()}
    tables = {"remainder.csv": to_csv(["r", "measured", "bound", "ok"],
                                      [(row["r"], row["measured"], row["bound"], int(row["ok"]))
                                       for row in rb["rows"]])}
    return out, tables


HANDLERS = {
    "cap": cmd_cap, "cantor": cmd_cantor, "lusin": cmd_lusin, "dirichlet": cmd_dirichlet,
    "rh": cmd_rh, "beltrami": cmd_beltrami, "dimension": cmd_dimension,
}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None,
                        help="output directory; 'json', 'csv' or omitted writes to stdout")
    common.add_argument("--grid", type=int, default=None, help="boundary grid size / cell count")
    common.add_argument("--nmax", type=int, default=None, help="largest Fekete configuration")
    common.add_argument("--tol", type=float, default=None, help="solver or audit tolerance")

    p = argparse.ArgumentParser(prog="rhbeltrami", description="capacity, harmonic and Riemann-Hilbert toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command")

    cap = sub.add_parser("cap", help="logarithmic capacity")
    cap_sub = cap.add_subparsers(dest="action", required=True)
    for name in ("estimate", "fekete", "density", "thin"):
        q = cap_sub.add_parser(name, parents=[common])
        q.add_argument("--set", required=True, help="interval:a,b[;a,b] | arc:t1,t2[;...] | circle:r")
        if name == "estimate":
            q.add_argument("--method", choices=("transfinite", "potential"), default="transfinite")
            q.add_argument("--nodes", type=int, default=200)
        if name == "fekete":
            q.add_argument("--n", type=int, default=16)
        if name in ("density", "thin"):
            q.add_argument("--x0", type=float, default=0.0)
            q.add_argument("--scale", choices=("wiener", "value"), default="wiener")
        if name == "density":
            q.add_argument("--eps", type=float, required=True)
        if name == "thin":
            q.add_argument("--eps-seq", default="0.1,0.05,0.025,0.0125")

    can = sub.add_parser("cantor", help="Cantor-type sets")
    can_sub = can.add_subparsers(dest="action", required=True)
    q = can_sub.add_parser("build", parents=[common])
    q.add_argument("--pk", default="dexp")
    q.add_argument("--depth", type=int, default=8)
    q.add_argument("--horizon", type=int, default=12)

    lus = sub.add_parser("lusin", help="Lusin-type antiderivative")
    lus_sub = lus.add_subparsers(dest="action", required=True)
    q = lus_sub.add_parser("run", parents=[common])
    q.add_argument("--phi", default="builtin:const1")
    q.add_argument("--eps", type=float, default=0.05)
    q.add_argument("--stages", type=int, default=3)

    dr = sub.add_parser("dirichlet", help="Dirichlet problem and boundary probes")
    dr_sub = dr.add_subparsers(dest="action", required=True)
    q = dr_sub.add_parser("solve", parents=[common])
    q.add_argument("--phi", default="builtin:cos")
    q.add_argument("--probe", default=None, help="theta,aperture")
    q.add_argument("--stages", type=int, default=0)
    q.add_argument("--eps", type=float, default=0.05)

    rh = sub.add_parser("rh", help="Riemann-Hilbert problem")
    rh_sub = rh.add_subparsers(dest="action", required=True)
    q = rh_sub.add_parser("solve", parents=[common])
    q.add_argument("--lambda", dest="lam", default="builtin:const")
    q.add_argument("--phi", default="builtin:cos")
    q.add_argument("--stages", type=int, default=0)
    q.add_argument("--eps", type=float, default=0.05)

    bt = sub.add_parser("beltrami", help="Beltrami equation")
    bt_sub = bt.add_subparsers(dest="action", required=True)
    q = bt_sub.add_parser("solve", parents=[common])
    q.add_argument("--mu", default="builtin:zero")
    q.add_argument("--lambda", dest="lam", default="builtin:const")
    q.add_argument("--phi", default="builtin:cos")
    q.add_argument("--lattice", type=int, default=512)
    q.add_argument("--stages", type=int, default=0)
    q.add_argument("--eps", type=float, default=0.05)
    q.add_argument("--decimate", type=int, default=16)

    dm = sub.add_parser("dimension", help="null-boundary harmonic family")
    dm_sub = dm.add_subparsers(dest="action", required=True)
    q = dm_sub.add_parser("demo", parents=[common])
    q.add_argument("--gamma", default="1,0,-0.5")
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--r", default="0.3,0.5,0.8")
    q.add_argument("--rh", action="store_true", help="also build the Riemann-Hilbert family member")
    q.add_argument("--lambda", dest="lam", default="builtin:const")
    q.add_argument("--phi", default="builtin:cos")
    q.add_argument("--rh-grid", type=int, default=4096)

    sub.add_parser("list", parents=[common], help="operation coverage table")
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "out"}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(stderr)
        return 2
    if args.command == "list":
        rows = sorted(COVERAGE.items())
        stdout.write(dumps({"version": __version__, "operations": dict(rows)}))
        return 0
    t0 = time.perf_counter()
    try:
        outputs, tables = HANDLERS[args.command](args)
    except ConfigError as exc:
        stderr.write(dumps({"error": "config", "key": exc.key, "message": str(exc)}))
        return 2
    except (ValueError, RuntimeError) as exc:
        stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    wall = time.perf_counter() - t0
    record = {"command": f"{args.command} {args.action}", "version": __version__,
              "config": _config(args), "outputs": outputs}
    text = dumps(record)
    name = f"{args.command}_{args.action}"
    if args.out in (None, "json", "-"):
        stdout.write(text)
        stderr.write(f"wall time {wall:.3f} s\n")
    elif args.out == "csv":
        for fname, body in tables.items():
            stdout.write(f"# {fname}\n{body}")
        if not tables:
            stdout.write(text)
        stderr.write(f"wall time {wall:.3f} s\n")
    else:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.json").write_text(text, encoding="utf-8", newline="\n")
        for fname, body in tables.items():
            (out / fname).write_text(body, encoding="utf-8", newline="\n")
        (out / f"{name}.timing.json").write_text(dumps({"wall_time_s": wall}), encoding="utf-8", newline="\n")
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
