"""Command-line front end.

Exit codes: 0 on success, 1 when the computation produced a negative finding
(a certificate witness or unequal point sets, for example), 2 on errors.
Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from . import codes, config, gf, variety, vandermonde
from .errors import CyclicVarietyError
from .vandermonde import ExponentSet


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)  # "--t" must not match "--timing"
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


@dataclass
class RunReport:
    command: str
    inputs: dict
    result: Any
    budgets: dict
    timing: dict | None = None
    exit_code: int = dc_field(default=0, repr=False)
    as_json: bool = dc_field(default=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "timing": self.timing,
            "budgets": self.budgets,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _field_arg(q: int, ext: int = 1) -> gf.Field:
    p, a = gf.prime_power(q)
    return gf.make_field(p, a * ext)


# -- command handlers: each returns (result, exit_code) ----------------------------


def cmd_field(args):
    F = gf.parse_field(args.q)
    gen = F.from_code(F.generator_code())
    return {
        "field": F.descriptor,
        "p": F.p,
        "m": F.m,
        "order": F.order,
        "modulus": list(F.modulus),
        "generator": str(gen),
    }, 0


def cmd_fpoly(args):
    U = ExponentSet(args.U)
    f = vandermonde.f_poly(U)
    return {
        "U": list(U),
        "partition": list(U.partition()),
        "degree": vandermonde.f_degree(U),
        "terms": len(f.terms),
        "f": str(f),
    }, 0


def cmd_fr(args):
    if args.remark:
        check = vandermonde.fr_remark_check()
        return check.to_dict(), 0 if check.holds else 1
    rep = vandermonde.compute_fr(args.r)
    return rep.to_dict(), 0 if rep.ok else 1


def cmd_variety(args):
    F = _field_arg(args.q, args.ext)
    kw = {"workers": args.threads, "budget": args.budget_points}
    if args.action == "equal":
        if args.T2 is None:
            raise UsageError("variety equal needs --T2")
        rep = variety.compare_varieties(args.T, args.T2, args.t, F, **kw)
        return rep.to_dict(), 0 if rep.equal else 1
    if args.action == "count":
        count = variety.count_points(args.T, args.t, F, **kw)
        return {"T": sorted(args.T), "t": args.t, "field": F.descriptor, "count": count}, 0
    pts = variety.enumerate_points(args.T, args.t, F, **kw)
    return {
        "T": sorted(args.T),
        "t": args.t,
        "field": F.descriptor,
        "count": len(pts),
        "points": [str(p) for p in pts],
    }, 0


def cmd_certify(args):
    cert = variety.certify_roots_of_unity(
        args.T, args.t, args.q, args.n,
        budget=args.budget_tuples, workers=args.threads,
        translation_quotient=args.translation_quotient,
    )
    return cert.to_dict(), 0 if cert.passed else 1


def cmd_subspaces(args):
    F = _field_arg(args.q)
    fam = variety.predicted_subspaces(args.t, args.k, args.m, F)
    out = fam.to_dict()
    if not args.list:
        out.pop("subspaces")
    ok = fam.contained and fam.count == fam.expected
    return out, 0 if ok else 1


def cmd_component2m(args):
    rep = variety.verify_2m_component(args.m, _field_arg(args.q),
                                      budget=args.budget_points, workers=args.threads)
    return rep.to_dict(), 0 if rep.component_contained and rep.unexplained == 0 else 1


def cmd_curve_ex9(args):
    out = variety.curve_count_report(_field_arg(args.q), args.aq, budget=args.budget_points)
    return out, 0 if out.get("matches", True) else 1


def cmd_cosets(args):
    return {"n": args.n, "q": args.q, "cosets": [list(c) for c in codes.cyclotomic_cosets(args.n, args.q)]}, 0


def _code_from_args(args) -> codes.CyclicCode:
    if (args.S is None) == (args.coset is None):
        raise UsageError("give exactly one of --S or --coset")
    if args.S is not None:
        return codes.code_from_defining_set(args.n, args.q, args.S)
    return codes.code_from_cosets(args.n, args.q, args.coset)


def cmd_code(args):
    code = _code_from_args(args)
    rep = codes.bound_report(code, T=args.T, t_max=args.tmax, brute=args.brute,
                             budget=args.budget_tuples, workers=args.threads)
    return rep.to_dict(), 0


def cmd_mindist(args):
    code = _code_from_args(args)
    d = codes.exact_distance_by_certificates(code, args.tmax, budget=args.budget_tuples,
                                             workers=args.threads)
    out = {"n": code.n, "q": code.q, "k": code.k, "S": list(code.S), "alpha": str(code.alpha),
           "d": d.value, "exact": d.exact, "result": str(d)}
    if args.brute:
        out["brute_force"] = codes.brute_force_distance(code)
    return out, 0


def cmd_sweep_question(args):
    count_field = _field_arg(args.count_q) if args.count_q else None
    rows = variety.sweep_question(args.rmax, args.q, nmax=args.nmax, count_field=count_field,
                                  budget_points=args.budget_points, budget_tuples=args.budget_tuples,
                                  workers=args.threads)
    return {"q": args.q, "rmax": args.rmax, "nmax": args.nmax, "rows": rows}, 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies must not overwrite flags given before the subcommand
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g = _Parser(add_help=False)
        g.add_argument("--json", action="store_true", default=d(False), help="emit a JSON run report")
        g.add_argument("--timing", action="store_true", default=d(False),
                       help="include wall-clock timing in the report")
        g.add_argument("--threads", type=int, default=d(1), help="worker processes")
        for name in ("points", "tuples", "field", "messages"):
            g.add_argument(f"--budget-{name}", type=int, default=d(None))
        return g

    common = global_flags(True)
    parser = _Parser(prog="cyclicvariety", description=__doc__.splitlines()[0], parents=[global_flags(False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("field", parents=[common], help="describe GF(q)")
    p.add_argument("--q", required=True, help="order q or 'p^m'")
    p.set_defaults(handler=cmd_field)

    p = sub.add_parser("fpoly", parents=[common], help="print f[U]")
    p.add_argument("--U", type=_ints, required=True)
    p.set_defaults(handler=cmd_fpoly)

    p = sub.add_parser("fr", parents=[common], help="bivariate form F_r and its predicted factors")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--remark", action="store_true", help="check the factorization of F_11")
    p.set_defaults(handler=cmd_fr)

    p = sub.add_parser("variety", parents=[common], help="points of V(T, t)")
    p.add_argument("action", choices=["count", "points", "equal"])
    p.add_argument("--T", type=_ints, required=True)
    p.add_argument("--T2", type=_ints)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ext", type=int, default=1, help="work over GF(q^ext)")
    p.set_defaults(handler=cmd_variety)

    p = sub.add_parser("certify", parents=[common], help="root-of-unity certificate for d > t")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--T", type=_ints, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--translation-quotient", action="store_true")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("subspaces", parents=[common], help="predicted linear subspaces")
    for name in ("t", "k", "m", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--list", action="store_true", help="list every subspace")
    p.set_defaults(handler=cmd_subspaces)

    p = sub.add_parser("component2m", parents=[common], help="the {0,1,m,m+1,2m} family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=cmd_component2m)

    p = sub.add_parser("curve-ex9", parents=[common], help="points on the genus-4 curve")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--aq", type=int, help="trace a_q; compares with q + 1 - 4 a_q")
    p.set_defaults(handler=cmd_curve_ex9)

    p = sub.add_parser("cosets", parents=[common], help="q-cyclotomic cosets mod n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=cmd_cosets)

    def code_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--S", type=_ints, help="defining set as residues")
        p.add_argument("--coset", type=_ints, help="defining set as coset representatives")
        p.add_argument("--brute", action="store_true", help="also run the brute-force oracle")
        p.add_argument("--tmax", type=int, help="largest t to certify")

    p = sub.add_parser("code", parents=[common], help="cyclic code bounds")
    p.add_argument("action", choices=["info"])
    code_args(p)
    p.add_argument("--T", type=_ints, help="certify with this subset of S")
    p.set_defaults(handler=cmd_code)

    p = sub.add_parser("mindist", parents=[common], help="exact minimum distance")
    code_args(p)
    p.set_defaults(handler=cmd_mindist)

    p = sub.add_parser("sweep-question", parents=[common], help="T = {0,1,3,4,6,7,...,r}, t = |T|-1")
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--count-q", type=int, help="also count points over GF(count-q)")
    p.set_defaults(handler=cmd_sweep_question)
    return parser


_INPUT_SKIP = {"handler", "json", "timing", "threads", "budget_points", "budget_tuples",
               "budget_field", "budget_messages"}


def run(argv: Sequence[str] | None = None) -> RunReport:
    """Parse ``argv`` and execute; raises UsageError or CyclicVarietyError on failure."""
    args = build_parser().parse_args(argv)
    budgets = config.get_budgets().with_overrides(
        points=args.budget_points, tuples=args.budget_tuples,
        field=args.budget_field, messages=args.budget_messages,
    )
    previous = config.get_budgets()
    config.set_budgets(budgets)
    start = time.perf_counter()
    try:
        result, code = args.handler(args)
    finally:
        config.set_budgets(previous)
    elapsed = (time.perf_counter() - start) * 1000
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in _INPUT_SKIP}
    return RunReport(
        command=args.command,
        inputs=inputs,
        result=result,
        budgets=budgets.as_dict(),
        timing={"wall_ms": round(elapsed, 3)} if args.timing else None,
        exit_code=code,
        as_json=args.json,
    )


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                        (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines += _render_text(item, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return ",".join(_scalar(x) for x in v) if v else "[]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return "-"
    return str(v)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        report = run(argv)
    except UsageError as exc:
        print(json.dumps({"error": "UsageError", "message": str(exc)}), file=sys.stderr)
        return 2
    except (CyclicVarietyError, ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    if report.as_json:
        print(report.to_json())
    else:
        print("\n".join(_render_text(report.result)))
        if report.timing:
            print(f"wall_ms: {report.timing['wall_ms']}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
