"""Command-line front end.

    paradd add --minpoly 1,-1,-1 --alg III --x "1" --y "1"
    paradd derive --minpoly 1,-1,-1 --t 2
    paradd check --minpoly 1,0,-1,-1
    paradd verify --alg III --trials 1000 --seed 7

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 no
representation of zero could be derived.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import golden, verify
from .digits import DigitString, digitwise_sum, format_digits, parse
from .errors import DerivationError, UnitConjugateError
from .numberfield import AlgebraicBase, make_base, poly_str
from .paradd import (ZeroRep, add_I, add_II, avizienis_add, chow_robertson_add, derive_params_I,
                     derive_params_II, make_zero_rep, parse_zero_rep)
from .polysearch import DEFAULT_NMAX, check_unit_circle, find_t_polynomial, to_zero_rep

ALGORITHMS = ("I", "II", "III", "avizienis", "cr", "fib")


class InputError(ValueError):
    pass


def parse_minpoly(text: str) -> AlgebraicBase:
    try:
        coeffs = [int(c) for c in text.replace(" ", "").split(",") if c]
    except ValueError:
        raise InputError(f"malformed --minpoly {text!r}; expected comma-separated integers") from None
    return make_base(coeffs)


def _resolve_zero_rep(args, base) -> tuple[ZeroRep, dict]:
    info = {}
    if args.zerorep:
        z = make_zero_rep(parse_zero_rep(args.zerorep), base)
    else:
        t = args.t if args.t is not None else (2 if args.alg == "I" else 1)
        found = find_t_polynomial(base, t, args.nmax)
        z = to_zero_rep(found)
        info = {"t": t, "n0": found.n0, "K": found.K, "Q": found.q_string()}
    return z, info


def _run_add(alg, x, y, args, params) -> tuple[DigitString, list]:
    """Returns (result, rounds) with rounds as (q, z) pairs; fills in ``params``."""
    if alg in ("I", "II"):
        if not args.minpoly:
            raise InputError(f"--alg {alg} needs --minpoly")
        base = parse_minpoly(args.minpoly)
        z, info = _resolve_zero_rep(args, base)
        params.update(minpoly=str(base), zerorep=str(z), B=z.B, M=z.M, **info)
        if alg == "I":
            p = derive_params_I(z)
            params.update(a=p.a, a_prime=p.a_prime, c=p.c)
            _, trace = add_I(x, y, z)
        else:
            p = derive_params_II(z)
            params.update(a=p.a, a_prime=p.a_prime, s=p.s)
            _, trace = add_II(x, y, z)
        return trace.output, [(r.q, r.z) for r in trace.rounds]
    if alg == "III":
        if args.minpoly and parse_minpoly(args.minpoly).min_poly != golden.GOLDEN_MIN_POLY:
            raise InputError("--alg III only works in base the Golden Mean (--minpoly 1,-1,-1)")
        trace = golden.trace_III(x, y)
        params.update(minpoly=poly_str(golden.GOLDEN_MIN_POLY), a=1)
        return trace.output, [(r.q, r.z) for r in trace.rounds]
    if alg == "fib":
        trace = golden.fib_trace(x, y)
        params.update(a=1)
        return trace.output, [(r.q, r.z) for r in trace.rounds]
    if alg == "avizienis":
        b = args.base if args.base is not None else 10
        a = args.a if args.a is not None else b // 2 + 1
        params.update(base=b, a=a)
        return avizienis_add(x, y, b, a), []
    # cr
    if args.a is not None:
        a = args.a
    elif args.base is not None:
        if args.base % 2:
            raise InputError("--alg cr needs an even --base")
        a = args.base // 2
    else:
        a = 1
    params.update(base=2 * a, a=a)
    return chow_robertson_add(x, y, a), []


def format_trace(rows: list[tuple[str, DigitString]]) -> str:
    """Rows of digits aligned on exponents, right-aligned columns, exponents as the header."""
    present = [d for _, d in rows if not d.is_zero()]
    if not present:
        return "\n".join(f"{label}  0" for label, _ in rows)
    hi = max(d.high_exp for d in present)
    lo = min(d.low_exp for d in present)
    exps = range(hi, lo - 1, -1)
    width = max(len(str(e)) for e in exps)
    width = max([width] + [len(str(v)) for d in present for v in d.digits])
    label_w = max(len(label) for label, _ in rows + [("exp", None)])

    def line(label, cells):
        return f"{label:<{label_w}} " + " ".join(f"{c:>{width}}" for c in cells)

    out = [line("exp", [str(e) for e in exps])]
    for label, d in rows:
        cells = ["" if d.is_zero() or e > d.high_exp or e < d.low_exp else str(d.digit(e)) for e in exps]
        out.append(line(label, cells).rstrip())
    return "\n".join(out)


def cmd_add(args) -> int:
    reader = golden.parse_fib if args.alg == "fib" else parse
    x, y = reader(args.x), reader(args.y)
    params = {"algorithm": args.alg}
    result, rounds = _run_add(args.alg, x, y, args, params)
    if args.json:
        payload = {
            "result": format_digits(result),
            "rounds": [{"q": format_digits(q), "z": format_digits(z)} for q, z in rounds],
            "params": params,
        }
        print(json.dumps(payload, sort_keys=True))
        return 0
    if args.trace:
        rows = [("x", x), ("y", y), ("x+y", digitwise_sum(x, y))]
        for n, (q, z) in enumerate(rounds, 1):
            rows += [(f"q{n}", q), (f"z{n}", z)]
        print(format_trace(rows))
    print(format_digits(result))
    return 0


def cmd_derive(args) -> int:
    base = parse_minpoly(args.minpoly)
    cls = check_unit_circle(base)
    print(f"base: {base}")
    print(f"conjugates: {cls.verdict} ({cls.method})")
    t = args.t if args.t is not None else 2
    try:
        found = find_t_polynomial(base, t, args.nmax)
    except UnitConjugateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("verdict: has_unit_conjugate")
        return 3
    z = to_zero_rep(found)
    print(f"n0: {found.n0}")
    print(f"K: {found.K}")
    print(f"G_n0: {found.gn}")
    print(f"Q: {found.q_string()}")
    print(f"zero rep: {z}")
    print(f"B: {z.B}  M: {z.M}  ({z.strength})")
    if z.strong:
        p = derive_params_I(z)
        print(f"params I: a'={p.a_prime} c={p.c} a={p.a}")
    p2 = derive_params_II(z)
    print(f"params II: a'={p2.a_prime} a={p2.a} s={p2.s}")
    return 0


def cmd_check(args) -> int:
    base = parse_minpoly(args.minpoly)
    cls = check_unit_circle(base)
    print(f"{cls.verdict} ({cls.method})")
    moduli = ", ".join(f"{m:.12g}" for m in cls.root_moduli)
    print(f"root moduli: {moduli}")
    if cls.method == "numeric":
        print(f"certified by exact root count: {'yes' if cls.certified else 'no'}")
    return 0


def cmd_verify(args) -> int:
    key = args.alg
    if key in ("I", "II") and (args.minpoly or args.zerorep):
        if not args.minpoly:
            raise InputError(f"--alg {key} with --zerorep also needs --minpoly")
        base = parse_minpoly(args.minpoly)
        z, _ = _resolve_zero_rep(args, base)
        adder = (verify.adder_I if key == "I" else verify.adder_II)(z, base, f"add_{key} {z}")
    else:
        adder = verify.standard_adders()[key]
    print(f"seed: {args.seed}")
    reports = verify.run_standard(adder, args.trials, args.seed)
    for r in reports:
        print(r.summary())
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paradd", description="Parallel addition in algebraic bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def base_flags(p, required):
        p.add_argument("--minpoly", required=required, help="integer coefficients, most significant first")

    add = sub.add_parser("add", help="add two digit strings")
    base_flags(add, False)
    add.add_argument("--alg", choices=ALGORITHMS, required=True)
    add.add_argument("--x", default="", help="digits, most significant first, optional '.'")
    add.add_argument("--y", default="")
    add.add_argument("--zerorep", help="representation of zero as 'e:b,...'; derived if absent")
    add.add_argument("--t", type=int, choices=(1, 2))
    add.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    add.add_argument("--base", type=int, help="integer base for avizienis / cr")
    add.add_argument("--a", type=int, help="alphabet bound for avizienis / cr")
    add.add_argument("--trace", action="store_true")
    add.add_argument("--json", action="store_true")
    add.set_defaults(func=cmd_add)

    derive = sub.add_parser("derive", help="build a representation of zero from a minimal polynomial")
    base_flags(derive, True)
    derive.add_argument("--t", type=int, choices=(1, 2))
    derive.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    derive.set_defaults(func=cmd_derive)

    check = sub.add_parser("check", help="look for conjugates on the unit circle")
    base_flags(check, True)
    check.set_defaults(func=cmd_check)

    ver = sub.add_parser("verify", help="run the property harness on an adder")
    ver.add_argument("--alg", choices=ALGORITHMS + ("II-binary",), required=True)
    base_flags(ver, False)
    ver.add_argument("--zerorep")
    ver.add_argument("--t", type=int, choices=(1, 2))
    ver.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    ver.add_argument("--trials", type=int, default=verify.DEFAULT_TRIALS)
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DerivationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
