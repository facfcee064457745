"""Command-line front end.

Every subcommand recomputes a certificate for its own answer before
printing.  Exit codes: 0 success, 1 usage or parse error, 2 failed
precondition or uncertified result, 3 fuel exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import reals as R
from .analysis import (dyadic_net, evt_ef, finite_set, integrate_ef, ivt_ef,
                       riemann_jump_demo, sup_tb)
from .cantor import (all_trees, binary_strings, fan_modulus, named_trees, padded,
                     scf_check, suite_functionals, theta_from_fan, theta_prefixes, tree_of,
                     wkl_leftmost)
from .dsl import compile_expr, parse_expr, polynomial
from .errors import FuelExhausted, ModulusError, ParseError, RealexError, SignPrecondition
from .extract import EventualSeq, mu_from_dif, mu_from_mpc, mu_from_rie, oracle_moduli
from .functions import Interval

FUEL_ENV = "REALEX_FUEL"
DEFAULT_FUEL = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("interval must be 'a,b'")
    a, b = (_fraction(p) for p in parts)
    if not a < b:
        raise argparse.ArgumentTypeError("interval needs a < b")
    return Interval(a, b)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _default_fuel() -> int:
    raw = os.environ.get(FUEL_ENV)
    if raw is None:
        return DEFAULT_FUEL
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError:
        raise UsageError(f"{FUEL_ENV}={raw!r} is not a positive integer")


def _ratio(q: Optional[Fraction]) -> Optional[dict]:
    if q is None:
        return None
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _cert(kind: str, bound, ok: bool) -> dict:
    return {"kind": kind, "bound": _ratio(bound), "ok": bool(ok)}


def _pow2(n: int) -> Fraction:
    return Fraction(1, 1 << n)


# -- subcommands --------------------------------------------------------------

def _cmd_ivt(args) -> dict:
    f = compile_expr(args.expr, args.interval)
    k = args.k
    x = ivt_ef(f, k)
    prec = k + 4
    r = f(x).approx(prec)
    ok = abs(r) + _pow2(prec) < Fraction(1, k)
    return {
        "result": x.approx(k),
        "certificate": _cert("residual", Fraction(1, k), ok),
        "detail": {"residual": _ratio(r), "residual_precision": prec},
    }


def _cmd_evt(args) -> dict:
    f = compile_expr(args.expr, args.interval)
    k = args.k
    x = evt_ef(f, dyadic_net(args.interval), k)
    prec = k + 4
    top = f(x).approx(prec)
    # brute force on a grid 4x finer than the net that was searched
    dom = args.interval
    count = 4 * dyadic_net(dom).tb_modulus(f.modulus(2 * k))
    step = dom.width / count
    worst = max(f(dom.a + i * step).approx(prec) for i in range(count + 1))
    ok = worst - top + 2 * _pow2(prec) < Fraction(1, k)
    return {
        "result": x.approx(k),
        "certificate": _cert("dominance", Fraction(1, k), ok),
        "detail": {"grid_points": count + 1, "value": _ratio(top)},
    }


def _cmd_integrate(args) -> dict:
    e = parse_expr(args.expr)
    f = compile_expr(e, args.interval)
    k = args.k
    I = integrate_ef(f)
    q = I.approx(k)
    coeffs = polynomial(e)
    if coeffs is not None:
        a, b = args.interval.a, args.interval.b
        exact = sum(c * (b ** (j + 1) - a ** (j + 1)) / (j + 1) for j, c in enumerate(coeffs))
        ok = abs(q - exact) <= _pow2(k)
        kind = "exact-antiderivative"
    else:
        ok = abs(q - I.approx(k + 1)) <= _pow2(k)
        kind = "cauchy-consistency"
    return {"result": q, "certificate": _cert(kind, _pow2(k), ok)}


def _cmd_sup(args) -> dict:
    pts = [_fraction(p) for p in args.points.split(",") if p.strip()]
    if not pts:
        raise UsageError("--points needs at least one rational")
    q = sup_tb(finite_set(pts)).approx(args.k)
    ok = abs(q - max(pts)) <= _pow2(args.k)
    return {"result": q, "certificate": _cert("exact-maximum", _pow2(args.k), ok)}


def _functional(name: str):
    suite = suite_functionals()
    if name not in suite:
        raise UsageError(f"unknown functional {name!r}; choose from {', '.join(sorted(suite))}")
    return suite[name]


def _cmd_fan(args) -> dict:
    Y = _functional(args.functional)
    N = fan_modulus(Y, args.fuel)
    ok = all(Y(padded(s, 0)) == Y(padded(s, 1)) for s in binary_strings(N))
    return {"result": Fraction(N), "certificate": _cert("cylinders", Fraction(N), ok)}


def _cmd_theta(args) -> dict:
    g = _functional(args.functional)
    theta = theta_from_fan(g, args.fuel)
    prefixes = theta_prefixes(theta, g)
    trees = all_trees(3)
    ok = all(scf_check(theta, g, tree_of(t), theta.k, prefixes) for t in trees)
    return {
        "result": Fraction(theta.k),
        "certificate": _cert("covering", Fraction(theta.k), ok),
        "detail": {"w_size": len(theta.w), "w_length": len(theta.w[0]),
                   "trees_checked": len(trees)},
    }


def _cmd_wkl(args) -> dict:
    trees = named_trees()
    if args.tree not in trees:
        raise UsageError(f"unknown tree {args.tree!r}; choose from {', '.join(sorted(trees))}")
    T = trees[args.tree]
    path = wkl_leftmost(T, args.fuel)
    ok = not T.has_member(args.fuel) if path.empty else T.member(path.bits)
    value = sum((Fraction(b, 1 << (i + 1)) for i, b in enumerate(path.bits)), Fraction(0))
    return {
        "result": value,
        "certificate": _cert("membership", None, ok),
        "detail": {"bits": "".join(map(str, path.bits)), "empty": path.empty},
    }


_EXTRACTORS = {
    "mpc": (mu_from_mpc, lambda L: oracle_moduli("f2", L)),
    "dif": (mu_from_dif, lambda L: oracle_moduli("f0", L, "dif")),
    "rie": (mu_from_rie, lambda L: oracle_moduli("f0", L, "rie")),
}


def _cmd_grilliot(args) -> dict:
    try:
        prefix = tuple(int(b) for b in args.seq.split(","))
    except ValueError:
        raise UsageError(f"--seq must be comma-separated naturals: {args.seq!r}")
    if any(b < 0 for b in prefix):
        raise UsageError("--seq entries must be natural numbers")
    f = EventualSeq(prefix, 1)
    truth = f.least_zero
    lower = Fraction(1, 1 << (len(prefix) if truth is None else truth))
    mu, oracle = _EXTRACTORS[args.mode]
    res = mu(oracle(lower), f)
    return {
        "result": None if res.found is None else Fraction(res.found),
        "certificate": _cert("oracle-agreement", Fraction(res.search_bound), res.found == truth),
        "detail": {"found": res.found, "search_bound": res.search_bound,
                   "least_zero": truth},
    }


def _cmd_demo(args) -> dict:
    m = args.m
    s, t = riemann_jump_demo(m)
    diff = R.sub(s, t)
    gap = Fraction(1 << m)
    ok = R.compare(diff, R.from_rational(gap), 16) is R.Ordering.GREATER
    return {
        "result": diff.approx(args.k),
        "certificate": _cert("jump", gap, ok),
        "detail": {"sums": [_ratio(s.approx(args.k)), _ratio(t.approx(args.k))]},
    }


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="realex", description="Certified computations with exact reals.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str, expr: bool = False):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(handler=fn)
        sp.add_argument("-k", type=_positive, default=10, help="precision (default 10)")
        sp.add_argument("--json", action="store_true", help="print a JSON record")
        if expr:
            sp.add_argument("--expr", required=True, help="function of x")
            sp.add_argument("--interval", type=_interval, default=Interval(0, 1),
                            help="a,b (default 0,1)")
        return sp

    add("ivt", _cmd_ivt, "a near-root of a function with a sign change", expr=True)
    add("evt", _cmd_evt, "a near-maximiser on the interval", expr=True)
    add("integrate", _cmd_integrate, "the Riemann integral", expr=True)
    add("sup", _cmd_sup, "supremum of a finite set").add_argument(
        "--points", required=True, help="comma-separated rationals")
    for name, fn, what in (("fan-modulus", _cmd_fan, "fan modulus"),
                           ("theta", _cmd_theta, "special fan functional")):
        sp = add(name, fn, f"{what} of a built-in functional")
        sp.add_argument("--functional", required=True)
        sp.add_argument("--fuel", type=_positive, default=None)
    sp = add("wkl-path", _cmd_wkl, "leftmost path through a built-in tree")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--fuel", type=_positive, default=None)
    sp = add("grilliot", _cmd_grilliot, "search for a zero via a modulus functional")
    sp.add_argument("--mode", choices=sorted(_EXTRACTORS), required=True)
    sp.add_argument("--seq", required=True, help="comma-separated prefix; 1 afterwards")
    demo = sub.add_parser("demo", help="narrative demonstrations")
    demo_sub = demo.add_subparsers(dest="demo", required=True)
    sp = demo_sub.add_parser("riemann-jump", help="two Riemann sums of f0 far apart")
    sp.set_defaults(handler=_cmd_demo)
    sp.add_argument("-m", type=int, choices=range(0, 9), required=True, metavar="M")
    sp.add_argument("-k", type=_positive, default=10)
    sp.add_argument("--json", action="store_true")
    return p


def _inputs(args) -> dict:
    skip = {"handler", "json", "command", "demo", "k"}
    out = {}
    for key, v in sorted(vars(args).items()):
        if key in skip or v is None:
            continue
        out[key] = f"{v.a},{v.b}" if isinstance(v, Interval) else v
    return out


def _render_text(rec: dict) -> str:
    res = rec["result"]
    value = "absent" if res is None else (
        f"{res['num']}/{res['den']}" if res["den"] != 1 else str(res["num"]))
    cert = rec["certificate"]
    bound = cert["bound"]
    bound_text = "" if bound is None else f" (bound {bound['num']}/{bound['den']})"
    lines = [f"{rec['command']}: {value}",
             f"certificate: {cert['kind']}{bound_text} {'ok' if cert['ok'] else 'FAILED'}"]
    for key, v in rec.get("detail", {}).items():
        lines.append(f"  {key}: {v}")
    return "\n".join(lines)


def run_command(argv: list[str]) -> tuple[int, str]:
    """Run one invocation; return (exit code, text to print)."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "fuel", 0) is None:
            args.fuel = _default_fuel()
        body = args.handler(args)
    except (UsageError, ParseError, ModulusError) as exc:
        return 1, f"error: {exc}"
    except SignPrecondition as exc:
        return 2, f"precondition failed: {exc}"
    except FuelExhausted as exc:
        return 3, f"fuel exhausted: {exc}"
    except RealexError as exc:
        return 2, f"error: {exc}"
    command = args.command if args.command != "demo" else f"demo {args.demo}"
    rec = {
        "command": command,
        "inputs": _inputs(args),
        "precision_k": args.k,
        "result": _ratio(body["result"]),
        "certificate": body["certificate"],
    }
    if "detail" in body:
        rec["detail"] = body["detail"]
    text = json.dumps(rec, sort_keys=True) if args.json else _render_text(rec)
    return (0 if rec["certificate"]["ok"] else 2), text


def main(argv: Optional[list[str]] = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    print(text, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
