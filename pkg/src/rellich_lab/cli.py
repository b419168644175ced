"""Command-line entry point: ``rellich-lab <command> ...`` or ``python -m rellich_lab``.

Commands: constants, verify, sharpness, oracle, schmincke, logrefine.
Every command prints one JSON envelope ``{command, inputs, results,
versions, seed}`` (or CSV with ``--format csv``) and is deterministic.

Exit codes: 0 ok, 1 inequality violated, 2 usage or domain error,
3 unsupported case, 4 numerical failure.

Profile grammar (``--profile``, ``--profile2``)::

    profile := "bump:" REAL "," REAL                     smooth bump on (a, b)
             | "poly:" INT "," INT "," REAL "," REAL     seed, degree, a, b
             | "trial:" REAL                             r^p psi_eps, eps in (0, 1]

``trial`` uses the command's n, gamma, mode degree and ball radius R.
"""

import argparse
import csv
import io
import json
import math
import platform
import re
import sys

import numpy as np
import scipy

from . import __version__
from . import constants as C
from . import functionals as fn
from .oracle import OracleGrid, oracle as run_oracle
from .errors import DomainError, NumericalError, UnsupportedCaseError
from .profiles import (ModeFunction, MultiModeFunction, TrialFunction, nested_epsilon_schedule, random_profile,
                       smooth_bump, trial_radial)
from .spectra import iterated_exp

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_NUMERICAL = 0, 1, 2, 3, 4

_REAL = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_INT = r"[-+]?\d+"
_GRAMMAR = {
    "bump": re.compile(rf"bump:({_REAL}),({_REAL})"),
    "poly": re.compile(rf"poly:({_INT}),({_INT}),({_REAL}),({_REAL})"),
    "trial": re.compile(rf"trial:({_REAL})"),
}


class UsageError(ValueError):
    pass


def parse_profile(spec: str, p: C.Params, j: int, R: float = 1.0):
    """Return (profile, seed or None) for a profile specification string."""
    kind = spec.split(":", 1)[0]
    rx = _GRAMMAR.get(kind)
    m = rx.fullmatch(spec) if rx else None
    if m is None:
        raise UsageError(f"malformed profile specification {spec!r}")
    if kind == "bump":
        return smooth_bump(float(m[1]), float(m[2])), None
    if kind == "poly":
        seed = int(m[1])
        return random_profile(seed, float(m[3]), float(m[4]), int(m[2])), seed
    return trial_radial(TrialFunction(p, j, float(m[1]), R)), None


# --- output ------------------------------------------------------------------

def _clean(x):
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _versions():
    return {"rellich_lab": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def _csv(results: dict) -> str:
    rows = results.get("table")
    if rows is None:
        rows = [{k: v for k, v in results.items() if not isinstance(v, (dict, list))}]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = list(rows[0].keys()) if rows else []
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(row.get(k)) for k in header])
    return buf.getvalue()


def emit(command, inputs, results, seed=None, fmt="json", out=None):
    out = out or sys.stdout
    env = _clean({"command": command, "inputs": inputs, "results": results,
                  "versions": _versions(), "seed": seed})
    if fmt == "csv":
        out.write(_csv(env["results"]))
    else:
        out.write(json.dumps(env, indent=2) + "\n")
    return env


# --- commands ----------------------------------------------------------------

def _params(args):
    return C.Params(args.n, args.gamma)


def cmd_constants(args):
    p = _params(args)
    table = []
    for item in args.which.split(","):
        item = item.strip()
        if item == "hardy":
            table.append({"name": "hardy", "value": C.hardy_constant(p), "argmin": None, "scan_bound": None})
        elif item in ("rellich", "hardy-rellich"):
            res = C.rellich_constant(p) if item == "rellich" else C.hardy_rellich_constant(p)
            table.append({"name": item, "value": res.value, "argmin": res.argmin, "scan_bound": res.scan_bound})
        elif re.fullmatch(r"alpha:\d+", item):
            j = int(item.split(":")[1])
            table.append({"name": item, "value": C.hardy_rellich_alpha(p, j), "argmin": None, "scan_bound": None})
        else:
            raise UsageError(f"unknown constant {item!r}")
    inputs = {"n": p.n, "gamma": p.gamma, "which": args.which}
    emit("constants", inputs, {"table": table}, None, args.format)
    return EXIT_OK


def _modes(args, p, R=1.0):
    degrees = [int(x) for x in str(args.mode).split(",")]
    specs = [args.profile] + ([args.profile2] if getattr(args, "profile2", None) else [])
    if len(degrees) > len(specs):
        raise UsageError("each mode degree needs its own profile (--profile2 for the second)")
    modes, seeds = [], []
    for j, spec in zip(degrees, specs):
        prof, seed = parse_profile(spec, p, j, R)
        modes.append(ModeFunction(j, prof))
        seeds.append(seed)
    seeds = [s for s in seeds if s is not None]
    return MultiModeFunction(tuple(modes)), (seeds[0] if len(seeds) == 1 else (seeds or None))


def cmd_verify(args):
    p = _params(args)
    mf, seed = _modes(args, p, args.R)
    prm = {k: getattr(args, k) for k in ("alpha", "beta", "tau", "s", "N", "eta", "R")}
    if args.ineq in fn.LOG_REFINED and prm["eta"] is None:
        prm["eta"] = iterated_exp(args.N or 1) * args.R
    if args.gamma_abs:
        prm["gamma_abs"] = True
    rep = fn.verify(args.ineq, p, mf, **prm)
    ok = rep.holds(args.tol)
    inputs = {"ineq": args.ineq, "n": p.n, "gamma": p.gamma, "profile": args.profile,
              "profile2": args.profile2, "mode": str(args.mode), "tol": args.tol, **{k: v for k, v in prm.items() if v is not None}}
    emit("verify", inputs, {**rep.to_dict(), "holds": ok}, seed, args.format)
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_sharpness(args):
    p = _params(args)
    target = args.target
    if args.j0 is None:
        res = C.hardy_rellich_constant(p) if target != "C" else C.rellich_constant(p)
        j0 = res.argmin
    else:
        j0 = args.j0
    schedule = nested_epsilon_schedule(args.eps_start, args.eps_steps)
    sw = fn.sharpness_sweep(p, j0, args.R, schedule, target=target)
    limit = sw.rellich_limit if target == "C" else sw.hardy_rellich_limit
    key = "rellich_q" if target == "C" else "hardy_rellich_q"
    table = []
    for pt in sw.points:
        q = getattr(pt, key)
        gap = (q - limit) / abs(limit) if limit != 0 else q - limit
        table.append({"epsilon": pt.epsilon, "hardy_rellich_q": pt.hardy_rellich_q,
                      "rellich_q": pt.rellich_q, "gap": gap})
    qs = [getattr(pt, key) for pt in sw.points]
    results = {"j0": j0, "target": target or "A", "limit": limit,
               "final_gap": table[-1]["gap"] if table else None,
               "gap_kind": "relative" if limit != 0 else "absolute",
               "decreasing": all(b <= a for a, b in zip(qs, qs[1:])),
               "table": table}
    inputs = {"n": p.n, "gamma": p.gamma, "j0": j0, "R": args.R, "eps_start": args.eps_start,
              "eps_steps": args.eps_steps, "target": target}
    emit("sharpness", inputs, results, None, args.format)
    return EXIT_OK


def cmd_oracle(args):
    p = _params(args)
    grid = OracleGrid(args.rmin, args.rmax, args.points)
    res = run_oracle(p, args.j, args.quotient, grid)
    results = {"mu_min": res.mu_min, "theoretical": res.theoretical,
               "gap": res.relative_gap, "gap_kind": "relative" if res.theoretical != 0 else "absolute",
               "residual": res.residual}
    inputs = {"n": p.n, "gamma": p.gamma, "j": args.j, "quotient": args.quotient,
              "rmin": args.rmin, "rmax": args.rmax, "points": args.points}
    emit("oracle", inputs, results, None, args.format)
    return EXIT_OK


def cmd_schmincke(args):
    p = _params(args)
    rng = C.schmincke_range(p, args.variant)
    results = {"s_min": rng.s_min, "case": rng.case}
    if args.s is not None:
        results["s"] = args.s
        results["admissible"] = args.s >= rng.s_min
        results["rhs_constant"] = C.schmincke_rhs_constant(p, args.s)
        if p.n == 3 and p.gamma == 0.0 and args.variant == "sec3":
            results["k3"] = C.k3(args.s) if args.s >= -25.0 / 36.0 else None
    inputs = {"n": p.n, "gamma": p.gamma, "variant": args.variant, "s": args.s}
    emit("schmincke", inputs, results, None, args.format)
    return EXIT_OK


def cmd_logrefine(args):
    p = _params(args)
    eta = iterated_exp(args.N) * args.R if args.eta == "auto" else float(args.eta)
    args.mode = str(args.mode)
    args.profile2 = None
    mf, seed = _modes(args, p, args.R)
    rep = fn.verify(args.ineq, p, mf, N=args.N, eta=eta, R=args.R)
    ok = rep.holds(args.tol)
    inputs = {"ineq": args.ineq, "n": p.n, "gamma": p.gamma, "N": args.N, "R": args.R,
              "eta": eta, "profile": args.profile, "mode": args.mode, "tol": args.tol}
    emit("logrefine", inputs, {**rep.to_dict(), "holds": ok}, seed, args.format)
    return EXIT_OK if ok else EXIT_VIOLATED


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rellich-lab", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--gamma", type=float, required=True)
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("constants", help="closed-form and scanned constants")
    common(sp)
    sp.add_argument("--which", default="hardy,rellich,hardy-rellich")
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("verify", help="evaluate one inequality on a test function")
    common(sp)
    sp.add_argument("--ineq", required=True, choices=fn.ALL_IDS)
    for name in ("alpha", "beta", "tau", "s", "eta"):
        sp.add_argument(f"--{name}", type=float)
    sp.add_argument("--N", type=int)
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--profile", required=True)
    sp.add_argument("--profile2")
    sp.add_argument("--mode", default="0")
    sp.add_argument("--gamma-abs", action="store_true", help="use |gamma| in the 2.17 constant")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sharpness", help="trial-function sweep toward a sharp constant")
    common(sp)
    sp.add_argument("--j0", type=int)
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--eps-start", type=float, default=0.5)
    sp.add_argument("--eps-steps", type=int, default=10)
    sp.add_argument("--target", choices=("A", "C"))
    sp.set_defaults(func=cmd_sharpness)

    sp = sub.add_parser("oracle", help="discretised Rayleigh-quotient minimum for one mode")
    common(sp)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--quotient", choices=("rellich", "hardy-rellich"), required=True)
    sp.add_argument("--rmin", type=float, default=1e-3)
    sp.add_argument("--rmax", type=float, default=1e3)
    sp.add_argument("--points", type=int, default=1500)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("schmincke", help="admissible range of s and potential constants")
    common(sp)
    sp.add_argument("--variant", choices=("sec2", "sec3"), required=True)
    sp.add_argument("--s", type=float)
    sp.set_defaults(func=cmd_schmincke)

    sp = sub.add_parser("logrefine", help="log-refined inequalities on a ball")
    common(sp)
    sp.add_argument("--ineq", choices=fn.LOG_REFINED, required=True)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--eta", default="auto")
    sp.add_argument("--profile", required=True)
    sp.add_argument("--mode", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_logrefine)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedCaseError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (UsageError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
