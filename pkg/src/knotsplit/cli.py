"""Command line front end: ``knotsplit <command> ...``.

Exit codes: 0 success (or expectation met), 1 expectation or check failed,
2 invalid input or violated hypothesis.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .blanchfield import form_from_json, seifert_form
from .lambda_ring import format_poly, parse_poly, poly_to_literal
from .module import DirectSum, Submodule
from .obstruction import LinearCombination, SatelliteKnot, independence_certificate, family_independence
from .seifert import (
    alexander_polynomial,
    arf_invariant,
    load_knot,
    rho_integral,
    signature_function,
)
from .splitting import SplittingError, split_submodule

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _read_json(arg):
    """Inline JSON, ``-`` for stdin, or a file path."""
    if arg == "-":
        return json.load(sys.stdin)
    if os.path.exists(arg):
        with open(arg) as fh:
            return json.load(fh)
    return json.loads(arg)


def _knot(arg):
    if os.path.exists(arg):
        with open(arg) as fh:
            return load_knot(json.load(fh))
    return load_knot(arg)


def _companion(desc):
    if isinstance(desc, str):
        return load_knot(desc)
    if "symbol" in desc:
        return str(desc["symbol"])
    return load_knot(desc)


def _emit(args, data, text):
    if args.pretty:
        print(json.dumps(data, indent=2, sort_keys=True))
    elif args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------------

def cmd_alex(args):
    V = _knot(args.knot)
    d = alexander_polynomial(V)
    _emit(args, {"knot": V.name, "alexander": poly_to_literal(d)}, format_poly(d))
    return EXIT_OK


def cmd_arf(args):
    V = _knot(args.knot)
    a = arf_invariant(V)
    _emit(args, {"knot": V.name, "arf": a}, str(a))
    return EXIT_OK


def cmd_signature(args):
    V = _knot(args.knot)
    sf = signature_function(V, args.precision)
    jumps = []
    for j in sf.jumps:
        lo, hi = j.turn_enclosure()
        jumps.append({
            "turn": None if j.turn is None else str(j.turn),
            "turn_enclosure": [str(lo), str(hi)],
        })
    data = {
        "knot": V.name,
        "alexander": poly_to_literal(sf.alexander),
        "jumps": jumps,
        "arc_values": list(sf.arc_values),
        "cyclotomic": sf.cyclotomic_flag,
    }
    lines = [f"arc values: {list(sf.arc_values)}"]
    lines += [f"jump at turn {j['turn'] or j['turn_enclosure']}" for j in jumps]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_rho(args):
    V = _knot(args.knot)
    r = rho_integral(V, args.precision)
    text = str(r.exact) if r.exact is not None else f"[{float(r.enclosure[0])!r}, {float(r.enclosure[1])!r}]"
    _emit(args, {"knot": V.name, "rho": r.to_json()}, text)
    return EXIT_OK


def cmd_blanchfield(args):
    V = _knot(args.knot)
    B = seifert_form(V)
    gram = [[{"num": poly_to_literal(c.num), "den": poly_to_literal(c.den)} for c in row] for row in B.gram]
    data = {**B.to_json(), "gram": gram, "hermitian": B.is_hermitian(), "nonsingular": B.is_nonsingular()}
    lines = [repr(B.ambient)]
    lines += ["  ".join(f"({format_poly(c.num)})/({format_poly(c.den)})" for c in row) for row in B.gram]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_split(args):
    sc = _read_json(args.scenario)
    forms = sc.get("forms")
    if not forms or len(forms) != 2:
        raise ValueError("scenario needs two forms")
    B1, B2 = (form_from_json(f) for f in forms)
    for key, B in (("M1", B1), ("M2", B2)):
        if key in sc:
            want = [parse_poly(p) for p in sc[key]["cyclic_factors"]]
            if B.ambient.factors != type(B.ambient)(want).factors:
                raise ValueError(f"{key} does not match the module of its form")
    M = DirectSum([B1.ambient, B2.ambient])
    P = Submodule(M, [M.element([parse_poly(c) for c in g]) for g in sc.get("P", [])])
    res = split_submodule(B1, B2, P)
    text = f"P1 = {res.P1}\nP2 = {res.P2}\n" + "\n".join(f"{k}: {v}" for k, v in res.checks.items())
    _emit(args, res.to_json(), text)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_certify(args):
    data = _read_json(args.scenario)
    terms = []
    for term in data["terms"]:
        K = SatelliteKnot(int(term["k"]), _companion(term["companion"]))
        terms.append((int(term["a"]), K))
    L = LinearCombination(terms)
    fn = family_independence if args.family else independence_certificate
    report = fn(L, args.precision)
    out = report.to_json()
    text = f"{report.verdict.value}"
    if report.witness:
        text += f": witness rho = {report.witness['rho']}"
    elif report.reason:
        text += f": {report.reason}"
    _emit(args, out, text)
    if args.expect is None:
        return EXIT_OK
    return EXIT_OK if report.verdict.value.lower() == args.expect else EXIT_FAIL


# -- parser -------------------------------------------------------------------------

def _flags(parser, defaults):
    parser.add_argument("--precision", type=int, default=defaults.get("precision"),
                        help="enclosure width 2^-PRECISION (default 50)")
    parser.add_argument("--json", action="store_true", default=defaults.get("json"), help="emit compact JSON")
    parser.add_argument("--pretty", action="store_true", default=defaults.get("pretty"), help="emit indented JSON")
    return parser


def build_parser():
    # subcommand copies use SUPPRESS so they do not overwrite flags given before the command
    s_ = argparse.SUPPRESS
    common = _flags(argparse.ArgumentParser(add_help=False), {"precision": s_, "json": s_, "pretty": s_})
    p = _flags(
        argparse.ArgumentParser(
            prog="knotsplit",
            description="Blanchfield forms, rho-invariants and independence certificates "
            "for cyclotomic satellite knots.",
        ),
        {"precision": 50, "json": False, "pretty": False},
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("alex", cmd_alex, "Alexander polynomial"),
        ("arf", cmd_arf, "Arf invariant"),
        ("signature", cmd_signature, "Levine-Tristram signature function"),
        ("rho", cmd_rho, "integral of the signature function"),
        ("blanchfield", cmd_blanchfield, "Blanchfield form from a Seifert matrix"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("knot", help="preset name, JSON descriptor, or path to one")
        s.set_defaults(func=fn)

    s = sub.add_parser("split", parents=[common], help="split a submodule of a coprime direct sum")
    s.add_argument("scenario", help="JSON scenario {M1, M2, forms, P}, path, or -")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("certify", parents=[common], help="independence certificate for a satellite combination")
    s.add_argument("scenario", help='JSON {"terms": [...]}, path, or -')
    s.add_argument("--expect", choices=["obstructed", "vanishes", "notapplicable"])
    s.add_argument("--family", action="store_true", help="allow several companions per k")
    s.set_defaults(func=cmd_certify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError, json.JSONDecodeError, SplittingError) as exc:
        msg = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        if args.json or args.pretty:
            print(json.dumps({"error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
