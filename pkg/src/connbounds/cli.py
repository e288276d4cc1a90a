"""Command-line front end for the connectivity-bound calculators.

Exit codes: 0 on success, 1 on invalid input (with usage text), 2 on an
internal invariant violation or an exceeded resource budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .bounds import (
    INFINITE, BoundBudgetError, BoundConfig, BoundEngine, MemoCycleError,
    fano_expected_dim,
)
from .cohomology import bound_profile, load_profile, m_x, profile_pn
from .core import FieldClass, Multidegree
from .report import connectivity_report, hodge_level, report_to_dict
from .threshold import (
    DegenerateQueryError, NoriQuery, ceil_fraction, count_k_zero_tuples,
    n_of_e_bruteforce, n_of_e_closed_form, nori_certificate,
)

CACHE_ENV = "CONNBOUNDS_CACHE"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"error: {message}")


def fmt_int(value) -> str:
    """Decimal for human-sized integers, order-of-magnitude beyond that."""
    if value is INFINITE:
        return "infinite"
    bits = value.bit_length()
    if bits <= 6000:
        return str(value)
    shift = max((bits * 30103) // 100000 - 6, 0)   # keeps 6 to 8 leading digits
    lead = str(value // 10 ** shift)
    exponent = shift + len(lead) - 1
    return f"about {lead[0]}.{lead[1:5]}e+{exponent} ({bits}-bit integer)"


def _degrees(text) -> Multidegree:
    try:
        return Multidegree(int(x) for x in str(text).replace(",", " ").split())
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _e_list(text):
    return [int(x) for x in str(text).replace(",", " ").split()]


def build_parser() -> _Parser:
    parser = _Parser(prog="connbounds",
                     description="exact connectivity-bound calculators for "
                                 "complete intersections in projective space")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bott", help="dim H^q(P^n, Omega^p(k))")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    p.add_argument("k", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("regularity", help="regularity profile of P^n")
    p.add_argument("n", type=int)

    p = sub.add_parser("nori", help="degree threshold N(e) by exact enumeration")
    p.add_argument("--dim-x", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--profile", help="profile config file (JSON)")
    p.add_argument("--degrees", type=_degrees, help="certify this multidegree")

    p = sub.add_parser("bound", help="linear-subspace / Chow-triviality bounds")
    p.add_argument("kind", choices=["n", "l"])
    p.add_argument("--degrees", type=_degrees, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c-level", type=int, default=0)
    p.add_argument("--universal-domain", action="store_true")
    p.add_argument("--no-predonzan", action="store_true")
    p.add_argument("--roitman", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--cache", help=f"memo cache path (or set {CACHE_ENV})")

    p = sub.add_parser("fano", help="expected dimension of the m-plane scheme")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", type=_degrees, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("hodge-level", help="Hodge-level integer of the query")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", type=_degrees, required=True)

    p = sub.add_parser("report", help="full connectivity report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", type=_degrees, required=True)
    p.add_argument("--c-level", type=int, default=0)
    p.add_argument("--universal-domain", action="store_true")
    p.add_argument("--e", type=_e_list, help="levels e to certify (space/comma separated)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-predonzan", action="store_true")
    p.add_argument("--roitman", action="store_true")
    p.add_argument("--cache", help=f"memo cache path (or set {CACHE_ENV})")
    return parser


def _engine(args) -> BoundEngine:
    config = BoundConfig(predonzan=not getattr(args, "no_predonzan", False),
                         roitman=getattr(args, "roitman", False))
    engine = BoundEngine(config)
    path = getattr(args, "cache", None) or os.environ.get(CACHE_ENV)
    if path and os.path.exists(path):
        engine.load_cache(path)
    engine._cache_path = path
    return engine


def _save_cache(engine):
    path = getattr(engine, "_cache_path", None)
    if path:
        engine.save_cache(path)


def _print_trace(engine, key, out):
    trace = engine.trace(key)
    seen = set()

    def walk(k, depth):
        res = trace[k]
        indent = "  " * depth
        if k in seen:
            out.write(f"{indent}{k} = {fmt_int(res.value)}  (see above)\n")
            return
        seen.add(k)
        extras = ""
        if res.params.get("accelerated"):
            extras = (f"  [chain of {res.params['steps']} steps, ratio "
                      f"{res.params['ratio']}, offset {res.params['offset']}]")
        out.write(f"{indent}{k} = {fmt_int(res.value)}  by {res.rule}{extras}\n")
        for child in res.children:
            walk(child, depth + 1)

    walk(key, 0)


def _cmd_bott(args):
    from .cohomology import bott_dimension
    print(bott_dimension(args.n, args.p, args.k, args.q))


def _cmd_regularity(args):
    profile = profile_pn(args.n)
    twists = " ".join(str(v) for v in profile.m)
    print(f"m_c for c = 0..{args.n}: {twists}")
    print(f"m_X = {m_x(profile)}")


def _load_nori_profile(args):
    if not args.profile:
        print(f"profile: P^{args.dim_x} (m_c = c + 1 for all c)")
        return profile_pn(args.dim_x)
    with open(args.profile, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "m" in data:
        profile = load_profile(data)
        if profile.dim_x != args.dim_x:
            raise ValueError(f"profile dimension {profile.dim_x} does not match "
                             f"--dim-x {args.dim_x}")
        return profile
    if {"ambient_dim", "codim", "degrees"} <= set(data):
        stub = bound_profile(int(data["ambient_dim"]), int(data["codim"]),
                             Multidegree(data["degrees"]))
        print("the profile document only determines endpoint bounds:")
        for c, upper in enumerate(stub.upper):
            if upper is not None:
                print(f"  m_{c} <= {upper}")
        print("intermediate twists are unknown for general triples; supply a "
              'complete profile ({"dim": ..., "m": [...]}) to run the optimizer')
        raise ValueError("incomplete profile document")
    raise ValueError('profile document must carry "dim" and "m", or '
                     '"ambient_dim"/"codim"/"degrees" for endpoint bounds only')


def _cmd_nori(args):
    profile = _load_nori_profile(args)
    query = NoriQuery(args.dim_x, args.r, args.e, profile)
    try:
        value, witness = n_of_e_bruteforce(query)
    except DegenerateQueryError as err:
        print(f"degenerate query: {err}")
        return
    threshold = ceil_fraction(value)
    print(f"max (m + m_c - k)/l = {value}  at (a,b,k,l,m,c) = "
          f"({witness.a},{witness.b},{witness.k},{witness.l},{witness.m},{witness.c})")
    print(f"N({args.e}) = {threshold}")
    if profile.source == "computed_pn":
        closed = n_of_e_closed_form(query.dim_y, args.e, 0)
        print(f"closed form dim_y + e + 1 + m_X = {closed}")
    k_zero = count_k_zero_tuples(query)
    if k_zero:
        shown = ", ".join(f"({w.a},{w.b},{w.k},{w.l},{w.m},{w.c})" for w in k_zero[:5])
        more = "" if len(k_zero) <= 5 else f" and {len(k_zero) - 5} more"
        print(f"diagnostic: {len(k_zero)} feasible k = 0 tuples excluded from the "
              f"maximization: {shown}{more}")
    if args.degrees is not None:
        cert = nori_certificate(query, args.degrees)
        if cert.certified:
            print(f"certified: d_1 = {args.degrees[0]} >= {cert.threshold}; "
                  f"cohomological {cert.cohomological_level}-equivalence [theorem]; "
                  f"cycle-theoretic c-equivalence for c <= "
                  f"{cert.conjectural_cycle_level} [conjecture]")
        else:
            print(f"not certified: d_1 = {args.degrees[0]} < {cert.threshold}")


def _cmd_bound(args):
    field = FieldClass(args.c_level, universal_domain=args.universal_domain)
    engine = _engine(args)
    mode = "universal_domain" if args.universal_domain and args.kind == "l" else "standard"
    if args.kind == "n":
        result = engine.n_bound(args.degrees, args.m, field)
    else:
        result = engine.l_bound(args.degrees, args.m, field, mode=mode)
    print(fmt_int(result.value))
    if args.trace:
        _print_trace(engine, result.key, sys.stdout)
    _save_cache(engine)


def _cmd_fano(args):
    print(fano_expected_dim(args.n, args.degrees, args.m))


def _cmd_hodge(args):
    print(hodge_level(args.n, args.degrees))


def _cmd_report(args):
    field = FieldClass(args.c_level, universal_domain=args.universal_domain)
    engine = _engine(args)
    report = connectivity_report(args.n, args.degrees, field, e_values=args.e,
                                 engine=engine)
    if args.json:
        print(json.dumps(report_to_dict(report), sort_keys=True, indent=2))
    else:
        print(f"connectivity report for multidegree {tuple(args.degrees)} in "
              f"P^{args.n} over a {field} field")
        for finding in report.findings:
            print(f"  [{finding.status}] {finding.statement}")
            print(f"      cite: {finding.citation}")
        for note in report.notes:
            print(f"  note: {note}")
    _save_cache(engine)


_COMMANDS = {
    "bott": _cmd_bott,
    "regularity": _cmd_regularity,
    "nori": _cmd_nori,
    "bound": _cmd_bound,
    "fano": _cmd_fano,
    "hodge-level": _cmd_hodge,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s")
    # the nori subcommand prints its own k = 0 diagnostic
    logging.getLogger("connbounds.threshold").setLevel(logging.ERROR)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        if exit_.code in (0, None):
            return 0
        print(exit_.code, file=sys.stderr)
        return 1
    try:
        _COMMANDS[args.command](args)
    except (ValueError, OSError, DegenerateQueryError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (MemoCycleError, BoundBudgetError, AssertionError) as err:
        print(f"internal: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
