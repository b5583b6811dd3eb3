"""Command-line front end.

Exit codes: 0 when every check passed, 1 on a failed check, 2 on a usage
error (bad flags, field, polynomial or element syntax).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .etale import EtaleAlgebra, enumerate_An_torsors, format_poly, parse_poly, trace_form
from .fields import FiniteField, field_make
from .fixed import a3_action, fixed_submodule_H, n_action, s3_action, trivial_action
from .milnor import NotInP, p_factorize, parse_element, sw_total
from .relations import SweepFailure, compute_z_table, sweep_verify
from .suites import SUITES, run_suite
from .witt import gw_class, witt_class


class UsageError(Exception):
    pass


@dataclass
class Report:
    ok: bool = True
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)


def _field_arg(text):
    try:
        return field_make(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _finite_field_arg(text):
    F = _field_arg(text)
    if not isinstance(F, FiniteField):
        raise argparse.ArgumentTypeError("a finite field f:p or f:p^k is required")
    return F


def _bounded(lo, hi):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"{v} outside {lo}..{hi}")
        return v

    return parse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(prog="altinv", description="Exact computations with mod-2 and Witt invariants of A_n.")
    parser.add_argument("--version", action="version", version=f"altinv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factorize", help="P normal form of an element of M(g)")
    p.add_argument("element")
    p.add_argument("--generators", "-g", type=_bounded(0, 16), required=True)
    p.add_argument("--bound", type=_bounded(0, 16))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sw", help="total Stiefel-Whitney class of degree-1 classes")
    p.add_argument("classes", nargs="*")
    p.add_argument("--generators", "-g", type=_bounded(0, 16), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("trace-form", help="diagonalized trace form of k[X]/(f1) x k[X]/(f2) x ...")
    p.add_argument("polynomials", nargs="+")
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("ztable", help="integer relations lambda^j = sum_i z(i,j,n) lambda^i")
    p.add_argument("--n", type=_bounded(1, 64), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="check every A_n trace form up to --max-n")
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--max-n", type=_bounded(1, 12), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fixed-module", help="fixed submodule of M(r) under a linear action")
    p.add_argument("--action", choices=["trivial", "a3", "s3", "n"], required=True)
    p.add_argument("--rank", type=_bounded(0, 8), default=2)
    p.add_argument("--cutoff", type=_bounded(0, 12), default=8)

    p = sub.add_parser("torsors", help="A_n-torsors over a finite field, by cycle type")
    p.add_argument("--field", type=_finite_field_arg, required=True)
    p.add_argument("--n", type=_bounded(1, 14), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.add_argument("--json", action="store_true")
    return parser


def parse_command(argv):
    args = build_parser().parse_args(argv)
    if args.command == "fixed-module":
        if args.action in ("a3", "s3") and args.rank != 2:
            raise UsageError("the a3 and s3 actions live on rank 2")
        if args.action == "n" and args.rank % 2:
            raise UsageError("the n action needs an even rank")
    return args


def _cmd_factorize(args, rep):
    try:
        x = parse_element(args.element, args.generators)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        form = p_factorize(x, bound=args.bound)
    except NotInP as exc:
        rep.ok = False
        rep.lines.append(f"not in P: {exc}")
        rep.data = {"element": str(x), "in_P": False}
        return
    rep.lines += [f"a{j} = {a}" for j, a in enumerate(form.factors)]
    rep.data = {"element": str(x), "in_P": True, "factors": [str(a) for a in form.factors]}


def _cmd_sw(args, rep):
    try:
        alphas = [parse_element(c, args.generators) for c in args.classes]
        w = sw_total(alphas, args.generators)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    comps = [str(c) for c in w.components()]
    rep.lines += [f"w{i} = {c}" for i, c in enumerate(comps)]
    rep.data = {"total": str(w), "components": comps}


def _cmd_trace_form(args, rep):
    F = args.field
    try:
        comps = [parse_poly(text, F) for text in args.polynomials]
        L = EtaleAlgebra(F, comps, check_irreducible=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    q = trace_form(L)
    rep.lines += [str(q)]
    rep.data = {
        "field": str(F),
        "algebra": [format_poly(F, f) for f in L.components],
        "form": str(q),
        "rank": q.rank,
        "witt_class": str(witt_class(q)),
        "trivial_disc": q.has_trivial_disc(),
    }
    rep.lines.append(f"GW class {gw_class(q)}")


def _cmd_ztable(args, rep):
    table = compute_z_table(args.n)
    rep.lines += table.rows_text()
    rep.data = table.to_json()


def _cmd_sweep(args, rep):
    try:
        rows = sweep_verify(args.field, args.max_n)
    except SweepFailure as exc:
        rep.ok = False
        rep.lines.append(f"FAIL {exc.row}")
        rep.data = {"field": str(args.field), "passed": False, "counterexample": exc.row}
        return
    for r in rows:
        rep.lines.append(f"n={r['n']:<3}{r['family']:<8}{r['instance']:<34}{r['trace_form']}  ok")
    rep.lines.append(f"{len(rows)} instances passed")
    rep.data = {"field": str(args.field), "max_n": args.max_n, "passed": True, "rows": rows}


def _cmd_fixed_module(args, rep):
    action = {
        "trivial": lambda: trivial_action(args.rank),
        "a3": a3_action,
        "s3": s3_action,
        "n": lambda: n_action(args.rank // 2),
    }[args.action]()
    report = fixed_submodule_H(action, args.cutoff)
    rep.ok = report.spans_fixed_spaces()
    rep.data = report.to_json()
    rep.lines.append(json.dumps(rep.data, indent=2))


def _cmd_torsors(args, rep):
    rows = [
        {"cycle_type": list(ct), "split_count": s}
        for ct, s in enumerate_An_torsors(args.field.p, args.n)
    ]
    for r in rows:
        rep.lines.append(f"{'{' + ','.join(map(str, r['cycle_type'])) + '}':<26}{r['split_count']}")
    total = sum(r["split_count"] for r in rows)
    rep.lines.append(f"total {total}")
    rep.data = {"field": str(args.field), "n": args.n, "types": rows, "total": total}


def _cmd_verify(args, rep):
    results = run_suite(args.suite)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        rep.lines.append(f"{status} {res.name} ({len(res.checks)} checks)")
        for c in res.failures():
            rep.lines.append(f"  failed: {c.label} {c.detail}".rstrip())
    rep.ok = all(r.passed for r in results)
    rep.data = {"passed": rep.ok, "suites": [r.to_json() for r in results]}


_DISPATCH = {
    "factorize": _cmd_factorize,
    "sw": _cmd_sw,
    "trace-form": _cmd_trace_form,
    "ztable": _cmd_ztable,
    "sweep": _cmd_sweep,
    "fixed-module": _cmd_fixed_module,
    "torsors": _cmd_torsors,
    "verify": _cmd_verify,
}


def run_command(args) -> Report:
    rep = Report()
    _DISPATCH[args.command](args, rep)
    return rep


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = parse_command(sys.argv[1:] if argv is None else argv)
        rep = run_command(args)
    except UsageError as exc:
        print(exc, file=err)
        return 2
    if getattr(args, "json", False):
        print(json.dumps(rep.data, indent=2, default=str), file=out)
    else:
        print("\n".join(rep.lines), file=out)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
