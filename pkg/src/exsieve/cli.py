"""Command line front end.

Subcommands:

    sieve FILE         finite-family moments, union probability, identity
    atoms FILE         signature cells and exact-coverage weights
    moments FILE       binomial moments S_0..S_k of a pmf or family
    bracket FILE       certified enclosure at level k (fixed depth or --eps)
    check FILE         convergence verdicts for the alternating series
    gen family|pmf     seeded random input documents

Exit codes: 0 success, 2 input/validation problems, 3 computation
refusals (bad level, no certificate, short prefix, zero mass), 4
resource caps (event cap, width not achievable within term budget).
A verdict of certified_diverges is a successful check, exit 0.

Values print in exact Fraction form with a 12-significant-digit decimal
alongside, marked approximate.  --json emits deterministic JSON instead.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import jsonio
from .atoms import decompose, verify_sk_tk_identity
from .errors import (
    BadK,
    EventCapExceeded,
    InsufficientPrefix,
    NoCertificate,
    NotNormalized,
    NegativeWeight,
    SchemaError,
    WidthNotAchievable,
    ZeroMass,
    DivergentSeries,
)
from .gen import random_explicit_pmf, random_family
from .moments import (
    DEFAULT_MAX_TERMS,
    POINT,
    TAIL,
    bracket as moments_bracket,
    check_exact_condition,
    check_takacs,
    evaluate_series,
    sk_from_pmf,
)
from .numerics import DEFAULT_PRECISION_BITS, IntervalScalar, approx_str, parse_rat
from .sieve import (
    DEFAULT_MAX_EVENTS,
    sieve_report,
    verify_finite_identity,
    verify_generalized_identity,
)
from .space import EventFamily, ZPlusPmf

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3
EXIT_RESOURCE = 4

_INPUT_ERRORS = (SchemaError, NotNormalized, NegativeWeight)
_COMPUTE_ERRORS = (BadK, NoCertificate, InsufficientPrefix, ZeroMass, DivergentSeries)
_RESOURCE_ERRORS = (EventCapExceeded, WidthNotAchievable)


def _fmt(x) -> str:
    """Exact value plus a labelled decimal approximation."""
    if isinstance(x, IntervalScalar):
        lo, hi = x.to_decimal_strings()
        return f"[{lo}, {hi}] (approx {approx_str(x.midpoint())})"
    return f"{Fraction(x)} (approx {approx_str(x)})"


def _load(args) -> dict:
    return jsonio.load_path(args.input)


def _as_pmf(doc: dict, args) -> ZPlusPmf:
    """Pmf input, or a family folded to its occupancy pmf.

    The occupancy count of a family has the family's S_{k,n} as its
    binomial moments, and its tail probabilities Pr(X >= k) are exactly
    the unions of k-wise intersections, so the series machinery applies
    unchanged.
    """
    obj = jsonio.parse_document(doc, precision_bits=args.precision_bits)
    if isinstance(obj, EventFamily):
        return ZPlusPmf.explicit(decompose(obj).t, precision_bits=args.precision_bits)
    return obj


def _as_family(doc: dict) -> EventFamily:
    obj = jsonio.parse_document(doc)
    if not isinstance(obj, EventFamily):
        raise SchemaError("this subcommand needs a family document, got a pmf")
    return obj


def cmd_sieve(args) -> int:
    fam = _as_family(_load(args))
    res = sieve_report(fam, k=args.k, max_events=args.max_events)
    if args.k == 1:
        ident = verify_finite_identity(fam, max_events=args.max_events)
    else:
        ident = verify_generalized_identity(fam, args.k, max_events=args.max_events)
    if args.json:
        out = jsonio.sieve_result_to_json(res)
        out["identity"] = {
            "lhs": jsonio.rat_to_json(ident.lhs),
            "rhs": jsonio.rat_to_json(ident.rhs),
            "equal": ident.equal,
        }
        print(jsonio.dumps(out), end="")
        return EXIT_OK
    print(f"events: {res.n}   atoms: {fam.space.natoms}   level k={res.k}")
    for i, value in enumerate(res.skn_prefix):
        print(f"S_{{{res.k + i},{res.n}}} = {_fmt(value)}")
    label = "union probability" if res.k == 1 else f"Pr(union of {res.k}-wise intersections)"
    print(f"{label} = {_fmt(res.union_prob)}")
    print(f"identity holds: {'yes' if ident.equal else 'NO'}")
    return EXIT_OK


def cmd_atoms(args) -> int:
    fam = _as_family(_load(args))
    dec = decompose(fam)
    if args.json:
        print(jsonio.dumps(jsonio.decomposition_to_json(dec)), end="")
        return EXIT_OK
    print(f"cells: {len(dec.cells)}")
    for sig, w in sorted(dec.cells.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        label = "{" + ",".join(str(i) for i in sorted(sig)) + "}"
        print(f"  {label:<24} {_fmt(w)}")
    for j, t in enumerate(dec.t):
        print(f"T_{j} = {_fmt(t)}")
    rows = verify_sk_tk_identity(fam, max_events=args.max_events)
    ok = all(r.equal for r in rows)
    print(f"moment identity (both routes, k <= {fam.n}): {'yes' if ok else 'NO'}")
    return EXIT_OK


def cmd_moments(args) -> int:
    pmf = _as_pmf(_load(args), args)
    seq = sk_from_pmf(pmf, args.k_max)
    if args.json:
        print(jsonio.dumps(jsonio.moments_to_json(seq)), end="")
        return EXIT_OK
    for k in range(seq.k_max + 1):
        print(f"S_{k} = {_fmt(seq.values[k])}")
    return EXIT_OK


def cmd_bracket(args) -> int:
    pmf = _as_pmf(_load(args), args)
    if args.eps is not None:
        eps = parse_rat(args.eps)
        prefix = max(args.k + 2, 8)
        seq = sk_from_pmf(pmf, prefix)
        b = evaluate_series(seq, args.k, args.target, eps, max_terms=args.max_terms)
    else:
        needed = args.k + max(2 * args.d + 1, 2 * args.r)
        seq = sk_from_pmf(pmf, needed)
        b = moments_bracket(seq, args.k, args.d, args.r, args.target)
    if args.json:
        print(jsonio.dumps(jsonio.bracket_to_json(b)), end="")
        return EXIT_OK
    what = f"Pr(X >= {b.k})" if b.target == TAIL else f"Pr(X = {b.k - 1})"
    lo, hi = b.enclosure()
    print(f"target: {what}   depths: d={b.d} r={b.r}")
    print(f"lower = {_fmt(b.lower)}")
    print(f"upper = {_fmt(b.upper)}")
    print(f"enclosure = [{lo}, {hi}]   width = {_fmt(b.width)}")
    return EXIT_OK


def cmd_check(args) -> int:
    pmf = _as_pmf(_load(args), args)
    seq = sk_from_pmf(pmf, max(args.k + 2, 8))
    level = check_exact_condition(seq, args.k)
    expdecay = check_takacs(seq)
    if args.json:
        print(
            jsonio.dumps(
                {
                    "exact_condition": jsonio.verdict_to_json(level),
                    "exponential_decay": jsonio.verdict_to_json(expdecay),
                }
            ),
            end="",
        )
        return EXIT_OK
    print(f"level k={level.k} series condition: {level.status}")
    print(f"  {level.witness}")
    print(f"exponential decay of S_k^(1/k): {expdecay.status}")
    print(f"  {expdecay.witness}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.what == "family":
        fam = random_family(args.seed, max_atoms=args.atoms, max_events=args.events)
        print(jsonio.dumps(jsonio.family_to_json(fam)), end="")
    else:
        pmf = random_explicit_pmf(args.seed, max_support=args.support)
        print(jsonio.dumps(jsonio.pmf_to_json(pmf)), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="exsieve",
        description="Exact inclusion-exclusion sums, Bonferroni brackets, and "
        "convergence certificates for binomial-moment series.",
    )
    top.add_argument("--json", action="store_true", help="emit deterministic JSON")
    top.add_argument(
        "--precision-bits",
        type=int,
        default=DEFAULT_PRECISION_BITS,
        help="working precision for interval endpoints (default %(default)s)",
    )
    top.add_argument(
        "--max-events",
        type=int,
        default=DEFAULT_MAX_EVENTS,
        help="event cap for subset enumeration (default %(default)s)",
    )
    top.add_argument(
        "--max-terms",
        type=int,
        default=DEFAULT_MAX_TERMS,
        help="series term budget for --eps evaluation (default %(default)s)",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="finite-family moments and the union identity")
    p.add_argument("input", help="family JSON file")
    p.add_argument("--k", type=int, default=1, help="level: report S_{k,n}..S_{n,n} (default 1)")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("atoms", help="signature cells and coverage weights")
    p.add_argument("input", help="family JSON file")
    p.set_defaults(func=cmd_atoms)

    p = sub.add_parser("moments", help="binomial moments of a pmf or family")
    p.add_argument("input", help="pmf or family JSON file")
    p.add_argument("--k-max", type=int, default=8, help="highest moment (default 8)")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("bracket", help="certified enclosure at level k")
    p.add_argument("input", help="pmf or family JSON file")
    p.add_argument("--k", type=int, required=True, help="level (k >= 1)")
    p.add_argument("--d", type=int, default=0, help="lower truncation depth (default 0)")
    p.add_argument("--r", type=int, default=0, help="upper truncation depth (default 0)")
    p.add_argument(
        "--target",
        choices=[TAIL, POINT],
        default=TAIL,
        help="tail brackets Pr(X >= k), point brackets Pr(X = k-1)",
    )
    p.add_argument(
        "--eps",
        default=None,
        help="grow depth until the enclosure width is at most this rational",
    )
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("check", help="convergence verdicts for the series at level k")
    p.add_argument("input", help="pmf or family JSON file")
    p.add_argument("--k", type=int, default=1, help="level to certify (default 1)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="seeded random input documents")
    p.add_argument("what", choices=["family", "pmf"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--atoms", type=int, default=14, help="family: atom cap (default 14)")
    p.add_argument("--events", type=int, default=10, help="family: event cap (default 10)")
    p.add_argument("--support", type=int, default=12, help="pmf: support cap (default 12)")
    p.set_defaults(func=cmd_gen)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"exsieve: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"exsieve: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _COMPUTE_ERRORS as exc:
        print(f"exsieve: refused: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except _RESOURCE_ERRORS as exc:
        print(f"exsieve: resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"exsieve: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
