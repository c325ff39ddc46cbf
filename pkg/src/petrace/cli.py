"""Command-line entry point.

Exit status: 0 on success, 1 when a verification fails, 2 on bad invocation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .checks import _jsonable
from .errors import PetraceError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_tau(text: str) -> complex:
    try:
        re_, im = (float(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--tau expects re,im; got {text!r}") from exc
    return complex(re_, im)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers; got {text!r}") from exc


def _parse_point(text: str):
    try:
        a, b = (Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--point expects alpha,beta; got {text!r}") from exc
    return a, b


# ----------------------------------------------------------------------
# commands

def cmd_eis(args):
    from .eisenstein import G

    return {"weight": args.weight, "terms": args.terms, "series": G(args.weight, args.terms).to_json()}, True


def cmd_trace(args):
    from .eisenstein import trace
    from .partitions import WEIGHTS

    s = trace(args.k, WEIGHTS[args.phi], args.terms)
    return {"k": args.k, "phi": args.phi, "terms": args.terms, "series": s.to_json()}, True


def cmd_crank_moments(args):
    from .crank import MOMENT_METHODS

    s = MOMENT_METHODS[args.method](2 * args.k, args.terms)
    return {"power": 2 * args.k, "method": args.method, "terms": args.terms,
            "series": s.to_json()}, True


def cmd_lattice(args):
    from .lattice import theorem1_numeric_check
    from .lattice.hecke import DEFAULT_RADIUS, DEFAULT_SCHEDULE

    tau = _parse_tau(args.tau) if args.tau else 2j
    schedule = _parse_floats(args.s) if args.s else list(DEFAULT_SCHEDULE)
    radius = args.radius if args.radius is not None else DEFAULT_RADIUS
    rep = theorem1_numeric_check(args.k, tau, schedule, radius, backend=args.backend)
    return rep, rep["pass"]


def cmd_jacobi(args):
    from .jacobi import (TorsionPoint, divisor_G, divisor_trace, parse_divisor,
                         theorem3_reconstruct, torsional_G)

    if args.point:
        a, b = _parse_point(args.point)
        x = TorsionPoint(a, b)
        if x.alpha != a or x.beta != b:
            raise UsageError("--point must be reduced to [0,1)^2")
        return {"point": [str(a), str(b)], "terms": args.terms,
                "G": {str(k): torsional_G(k, x, args.terms).to_json()
                      for k in range(1, args.k + 1)}}, True
    D = parse_divisor(args.divisor or "1@0,0")
    T = args.zorder
    out = {"divisor": str(D), "degree": D.degree, "terms": args.terms, "zorder": T,
           "G": {str(k): divisor_G(k, D, args.terms).to_json() for k in range(1, args.k + 1)},
           "traces": {str(t): divisor_trace(t, D, args.terms).to_json()
                      for t in range(0, args.k + 1)}}
    ok = True
    if not any(D.lifted_sum()):
        res = theorem3_reconstruct(D, T, args.terms)
        out["reconstruction"] = res.to_json()
        ok = bool(res)
    return out, ok


def cmd_verify(args):
    from .verify import ALL_SUITES, run_suite

    params = {"terms": args.terms, "k": args.k, "zorder": args.zorder}
    if args.tau:
        params["tau"] = _parse_tau(args.tau)
    if args.divisor:
        params["divisor"] = args.divisor
    if args.backend:
        params["backend"] = args.backend
    if args.radius is not None:
        params["radius"] = args.radius
    names = ALL_SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(n, timing=args.timing, **params).to_json() for n in names]
    passed = all(r["pass"] for r in reports)
    if args.suite != "all":
        return reports[0], passed
    return {"suite": "all", "pass": passed, "reports": reports}, passed


def cmd_dump_partitions(args):
    from .partitions import PHI_CRANK, PHI_JACOBI, PHI_LAMBDA, crank, enumerate_partitions, z_lambda

    rows = []
    for lam in enumerate_partitions(args.k):
        row = {"parts": list(lam.parts), "mults": list(lam.mults), "z": z_lambda(lam),
               "phi_lambda": PHI_LAMBDA(lam), "phi_crank": PHI_CRANK(lam),
               "phi_jacobi": PHI_JACOBI(lam)}
        if args.k:
            row["crank"] = crank(lam)
        rows.append(row)
    return {"k": args.k, "count": len(rows), "partitions": rows}, True


# ----------------------------------------------------------------------
# output

def _text_lines(obj, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        if set(obj) >= {"denom", "trunc", "coeffs"} and not prefix.endswith("detail"):
            return [(prefix, _series_text(obj))]
        out = []
        for k in sorted(obj):
            out += _text_lines(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and obj and all(isinstance(v, dict) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += _text_lines(v, f"{prefix}[{i}]")
        return out
    return [(prefix, json.dumps(obj) if isinstance(obj, list) else str(obj))]


def _series_text(obj: dict) -> str:
    L = obj["denom"]
    terms = []
    for e, c in obj["coeffs"]:
        c = json.dumps(c) if not isinstance(c, str) else c
        ex = Fraction(e, L)
        terms.append(c if ex == 0 else f"({c})*q^{ex}")
    return " + ".join(terms or ["0"]) + f" + O(q^{Fraction(obj['trunc'], L)})"


def render(obj, fmt: str) -> str:
    obj = _jsonable(obj)
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2)
    lines = _text_lines(obj)
    width = max((len(k) for k, _ in lines), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="petrace", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, terms=30):
        sp.add_argument("--terms", type=int, default=terms, help="q-truncation (exclusive)")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("eis", help="Eisenstein series G_w")
    sp.add_argument("--weight", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_eis)

    sp = sub.add_parser("trace", help="partition Eisenstein trace Tr_k(phi)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--phi", choices=("lambda", "crank", "jacobi"), default="lambda")
    common(sp)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("crank-moments", help="even crank moment C_2k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--method", choices=("definition", "corollary", "lambert"), default="definition")
    common(sp)
    sp.set_defaults(func=cmd_crank_moments)

    sp = sub.add_parser("lattice", help="lattice e_k against the quasimodular prediction")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--tau", help="re,im (default 0,2)")
    sp.add_argument("--radius", type=float)
    sp.add_argument("--s", help="comma-separated Hecke schedule")
    sp.add_argument("--backend", choices=("numba", "numpy"))
    common(sp)
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("jacobi", help="torsional Eisenstein series and divisor traces")
    sp.add_argument("--divisor", help="mult@alpha,beta[+lift_a,lift_b];...")
    sp.add_argument("--point", help="alpha,beta: print G_{k,x} instead")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--zorder", type=int, default=9)
    common(sp, terms=12)
    sp.set_defaults(func=cmd_jacobi)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True,
                    choices=("theorem1", "theorem2", "corollary", "lemma41", "lemma42", "polya",
                             "congruences", "theta", "theorem3", "modularity", "eisenstein",
                             "torsional", "lattice", "examples", "all"))
    sp.add_argument("--terms", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--zorder", type=int)
    sp.add_argument("--tau")
    sp.add_argument("--divisor")
    sp.add_argument("--radius", type=float)
    sp.add_argument("--backend", choices=("numba", "numpy"))
    sp.add_argument("--timing", action="store_true", help="include wall time (not byte-stable)")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dump-partitions", help="partitions of k with their weights")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_dump_partitions)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        result, ok = args.func(args)
    except (UsageError, PetraceError) as exc:
        print(f"petrace {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(result, args.format))
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
