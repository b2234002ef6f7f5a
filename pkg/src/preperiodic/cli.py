"""Command-line interface.

Every subcommand writes exactly one JSON document to stdout; diagnostics go
to stderr.  Exit codes are stable:

    0  success
    1  sound negative answer (not preperiodic, certification failed, ...)
    2  input error (bad arguments, malformed map file)
    3  resource error (budget or size guard hit, no verdict)
"""

import argparse
import json
import sys

from . import bounds, groebner, lab, modp, orbit
from .errors import InputError, NegativeResult, PreperiodicError, ResourceError
from .poly import PolyMap, parse_polynomial

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

_MAP_KEYS = {"n", "N", "polys", "label"}


def load_map(path):
    """Read a map file ``{"n": int, "N": int, "polys": [str, ...], "label"?: str}``."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"map file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"map file {path} is not valid JSON: {exc}") from None
    return map_from_json(data, source=path)


def map_from_json(data, source="<map>"):
    if not isinstance(data, dict):
        raise InputError(f"{source}: map file must hold a JSON object")
    extra = set(data) - _MAP_KEYS
    if extra:
        raise InputError(f"{source}: unknown keys {sorted(extra)}")
    n, N, polys = data.get("n"), data.get("N"), data.get("polys")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"{source}: 'n' must be a positive integer")
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise InputError(f"{source}: 'N' must be a positive integer")
    if not isinstance(polys, list) or not all(isinstance(s, str) for s in polys):
        raise InputError(f"{source}: 'polys' must be a list of strings")
    if len(polys) != n:
        raise InputError(f"{source}: {len(polys)} polynomials given for n = {n}")
    if "label" in data and not isinstance(data["label"], str):
        raise InputError(f"{source}: 'label' must be a string")
    comps = tuple(parse_polynomial(s, n) for s in polys)
    return PolyMap(n, N, comps)


def _budgets(args):
    return {
        "point_budget": args.point_budget,
        "orbit_budget": args.orbit_budget,
        "bit_guard": args.bit_guard,
    }


def _parse_matrix(text):
    try:
        rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise InputError(f"malformed matrix {text!r}; expected rows like '1,1;0,1'") from None
    if any(len(r) != len(rows) for r in rows):
        raise InputError("matrix must be square")
    return rows


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, JSON-ready object)

def cmd_check_unramified(args):
    pmap = load_map(args.map)
    report = modp.unramified_report(pmap, args.prime, args.mode, args.point_budget)
    out = report.to_json()
    out["budgets"] = _budgets(args)
    return (EXIT_OK if report.ok else EXIT_NEGATIVE), out


def cmd_find_prime(args):
    pmap = load_map(args.map)
    cert = groebner.unit_ideal_certificate(pmap)
    p = groebner.select_prime(cert, pmap, args.start)
    return EXIT_OK, {
        "prime": p,
        "Nk": str(cert.Nk),
        "N": str(cert.N),
        "certificate": cert.to_json(),
        "eventually_fixed_bound": str(bounds.eventually_fixed_bound(p, pmap.arity)),
        "budgets": _budgets(args),
    }


_BOUND_ARGS = ("point_count", "cycle_bound", "q", "d", "p", "vp", "C", "s", "n")


def cmd_bound(args):
    given = {k: getattr(args, k) for k in _BOUND_ARGS if getattr(args, k) is not None}
    if args.kind == "pezda":
        if "n" not in given:
            raise InputError("bound pezda needs --n")
        value = bounds.pezda_cycle_bound(given["n"])
        return EXIT_OK, {"kind": "pezda", "inputs": {"n": given["n"]}, "value": str(value)}
    if args.kind == "single":
        # --p/--n shorthand: point_count = p^n, cycle_bound = Pezda's bound
        if "p" in given and "n" in given:
            given.setdefault("point_count", given["p"] ** given["n"])
        if "n" in given:
            given.setdefault("cycle_bound", bounds.pezda_cycle_bound(given["n"]))
    if args.kind == "dvr" and "vp" not in given:
        given["vp"] = 1
    report = bounds.bound_report(args.kind, **given)
    out = report.to_json()
    out["inputs"] = {k: str(v) if abs(v) >= 2**63 else v for k, v in out["inputs"].items()}
    return EXIT_OK, out


def cmd_decide(args):
    pmap = load_map(args.map)
    point = orbit.parse_point(args.point)
    decision = orbit.decide_single(
        pmap, point, args.prime,
        point_budget=args.point_budget, orbit_budget=args.orbit_budget,
        bit_guard=args.bit_guard, prime_cap=args.prime_cap)
    out = decision.to_json()
    out["certification"] = decision.certification.to_json()
    return (EXIT_OK if decision.preperiodic else EXIT_NEGATIVE), out


def cmd_decide_multi(args):
    maps = [load_map(path) for path in args.map]
    point = orbit.parse_point(args.point)
    decision = orbit.decide_multi(
        maps, point, args.C, args.prime,
        point_budget=args.point_budget, orbit_budget=args.orbit_budget,
        bit_guard=args.bit_guard)
    out = decision.to_json()
    out["certification"] = decision.certification
    return (EXIT_OK if decision.preperiodic else EXIT_NEGATIVE), out


def cmd_count_points(args):
    eqs = [parse_polynomial(s, args.n) for s in args.eq]
    count = modp.count_affine_points(eqs, args.prime, args.n, args.point_budget)
    return EXIT_OK, {
        "p": args.prime,
        "n": args.n,
        "equations": [str(e) for e in eqs],
        "count": str(count),
        "budgets": _budgets(args),
    }


def cmd_monomial_check(args):
    from .poly import integer_determinant

    A = _parse_matrix(args.matrix)
    ok = modp.monomial_unramified(A, args.prime)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {
        "p": args.prime,
        "det": str(integer_determinant(A)),
        "unramified": ok,
    }


def cmd_lab(args):
    summary = lab.run_trials(
        args.trials, args.seed, args.max_size, args.max_maps,
        args.exhaustive_paths_up_to, args.threads)
    summary["failures"] = [[str(s), x, name] for s, x, name in summary["failures"]]
    summary["seed"] = str(args.seed)
    return (EXIT_OK if not summary["failures"] else EXIT_NEGATIVE), summary


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def build_parser():
    parser = _Parser(prog="preperiodic", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--point-budget", type=_positive_int, default=modp.DEFAULT_POINT_BUDGET,
                        help="max points of F_p^n to enumerate (default 10^7)")
    common.add_argument("--orbit-budget", type=_positive_int, default=orbit.DEFAULT_ORBIT_BUDGET,
                        help="max distinct orbit points to visit (default 10^6)")
    common.add_argument("--bit-guard", type=_positive_int, default=orbit.DEFAULT_BIT_GUARD,
                        help="max bits per coordinate (default 10^6)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker processes for the lab (default 1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-unramified", parents=[common],
                       help="Jacobian test at fixed or periodic F_p-points")
    p.add_argument("--map", required=True)
    p.add_argument("--prime", type=_positive_int, required=True)
    p.add_argument("--mode", choices=modp.MODES, default="periodic")
    p.set_defaults(func=cmd_check_unramified)

    p = sub.add_parser("find-prime", parents=[common],
                       help="Nullstellensatz certificate and an admissible prime")
    p.add_argument("--map", required=True)
    p.add_argument("--start", type=_positive_int, default=2)
    p.set_defaults(func=cmd_find_prime)

    p = sub.add_parser("bound", parents=[common], help="evaluate an orbit-size bound")
    p.add_argument("--kind", required=True, choices=bounds.KINDS + ("pezda",))
    p.add_argument("--point-count", type=_positive_int)
    p.add_argument("--cycle-bound", type=_positive_int)
    p.add_argument("--q", type=_positive_int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=_positive_int)
    p.add_argument("--vp", type=_positive_int)
    p.add_argument("--C", type=_positive_int)
    p.add_argument("--s", type=_positive_int)
    p.add_argument("--n", type=_positive_int)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("decide", parents=[common], help="decide preperiodicity under one map")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True, help="comma-separated rationals, e.g. '1/2,3'")
    p.add_argument("--prime", type=_positive_int)
    p.add_argument("--prime-cap", type=_positive_int, default=orbit.DEFAULT_PRIME_CAP)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("decide-multi", parents=[common],
                       help="decide finiteness of the orbit under several maps")
    p.add_argument("--map", required=True, action="append")
    p.add_argument("--point", required=True)
    p.add_argument("--C", type=_positive_int, required=True,
                   help="bound on periodic orbit sizes; not computed by this tool")
    p.add_argument("--prime", type=_positive_int, required=True)
    p.set_defaults(func=cmd_decide_multi)

    p = sub.add_parser("count-points", parents=[common], help="count common zeros in F_p^n")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--prime", type=_positive_int, required=True)
    p.add_argument("--eq", action="append", default=[])
    p.set_defaults(func=cmd_count_points)

    p = sub.add_parser("monomial-check", parents=[common],
                       help="unramifiedness of a monomial map mod p")
    p.add_argument("--matrix", required=True, help="rows separated by ';', e.g. '1,1;0,1'")
    p.add_argument("--prime", type=_positive_int, required=True)
    p.set_defaults(func=cmd_monomial_check)

    p = sub.add_parser("lab", parents=[common], help="randomized finite-system lemma checks")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=_positive_int, default=40)
    p.add_argument("--max-maps", type=_positive_int, default=3)
    p.add_argument("--exhaustive-paths-up-to", type=int, default=12)
    p.set_defaults(func=cmd_lab)
    return parser


def _error_doc(exc):
    return {"error": type(exc).__name__, "message": str(exc)}


def run(argv, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        code, out = args.func(args)
    except SystemExit as exc:  # --help
        return exc.code or 0
    except NegativeResult as exc:
        code, out = EXIT_NEGATIVE, _error_doc(exc)
        print(f"negative result: {exc}", file=stderr)
    except InputError as exc:
        code, out = EXIT_INPUT, _error_doc(exc)
        print(f"input error: {exc}", file=stderr)
    except ResourceError as exc:
        code, out = EXIT_RESOURCE, _error_doc(exc)
        print(f"resource limit: {exc}", file=stderr)
    except PreperiodicError as exc:
        code, out = EXIT_INPUT, _error_doc(exc)
        print(f"error: {exc}", file=stderr)
    if args is not None:
        out.setdefault("budgets", _budgets(args))
    json.dump(out, stdout)
    stdout.write("\n")
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
