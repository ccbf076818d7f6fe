"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 budget refusal, 4 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import DEFAULT_LIMITS, Limits
from .exactpoly import BudgetExceeded, FactoredCharPoly, IntPoly
from .hypergraph import Hypergraph, build_broom, build_hyperpath, build_hyperstar
from .oracle import oracle_charpoly, oracle_compare
from .reduction import broom_charpoly, hyperpath_charpoly, hyperstar_charpoly
from .spectra import hyperpath_eigenvalues, spectral_radius
from .verify import SUITES, run_suite

EXIT_ARGS, EXIT_BUDGET, EXIT_VERIFY = 2, 3, 4


class UsageError(Exception):
    pass


# -- rendering ------------------------------------------------------------------


def _base_terms(base: IntPoly, step: int):
    return [(e * step, c) for e, c in reversed(base.terms())]


def _render_poly(terms, power) -> str:
    s = ""
    for i, (e, c) in enumerate(terms):
        sign = "-" if c < 0 else ("+" if i else "")
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            body = ("" if a == 1 else str(a)) + power(e)
        s += sign + body
    return s


def render_latex(f: FactoredCharPoly) -> str:
    """Factored LaTeX, bases ordered by degree then constant term."""
    def lam(e):
        return r"\lambda" if e == 1 else rf"\lambda^{{{e}}}"

    out = ""
    le = f.lambda_exponent
    if le != 0:
        out += lam(le) if le.denominator == 1 else rf"\lambda^{{{le.numerator}/{le.denominator}}}"
    for base, e in f.factors:
        body = "(" + _render_poly(_base_terms(base, f.step), lam) + ")"
        out += body if e == 1 else body + f"^{{{e}}}"
    return out or "1"


def render_text(f: FactoredCharPoly) -> str:
    def lam(e):
        return "lambda" if e == 1 else f"lambda^{e}"

    parts = []
    le = f.lambda_exponent
    if le != 0:
        parts.append(lam(le))
    for base, e in f.factors:
        body = "(" + _render_poly(_base_terms(base, f.step), lam).replace("+", " + ").replace("-", " - ").strip() + ")"
        if body.startswith("( - "):
            body = "(-" + body[4:]
        parts.append(body if e == 1 else f"{body}^{e}")
    return " ".join(parts) or "1"


def render_expanded(p: IntPoly, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(p.to_json())
    if fmt == "latex":
        return _render_poly([(e, c) for e, c in reversed(p.terms())],
                            lambda e: r"\lambda" if e == 1 else rf"\lambda^{{{e}}}") or "0"
    return p.to_str("lambda")


# -- family selection -------------------------------------------------------------


def _family(args) -> tuple[str, Hypergraph, FactoredCharPoly | None]:
    """(label, hypergraph, closed form or None) for the selected family."""
    if args.hyperpath:
        m, k = args.hyperpath
        return "hyperpath", build_hyperpath(m, k), None if args.lazy else hyperpath_charpoly(m, k)
    if args.hyperstar:
        s, k = args.hyperstar
        return "hyperstar", build_hyperstar(s, k), None if args.lazy else hyperstar_charpoly(s, k)
    if args.broom:
        m, s, k = args.broom
        return "broom", build_broom(m, s, k), None if args.lazy else broom_charpoly(m, s, k)
    if args.input:
        return "input", Hypergraph.from_json(Path(args.input).read_text()), None
    raise UsageError("one family selector is required")


def _limits(args) -> Limits:
    lim = DEFAULT_LIMITS
    if getattr(args, "budget", None) is not None:
        lim = replace(lim, oracle_dim=args.budget)
    if getattr(args, "term_budget", None) is not None:
        lim = replace(lim, term_budget=args.term_budget)
    if getattr(args, "precision", None) is not None:
        lim = replace(lim, precision_bits=args.precision)
    return lim


def _digits(bits: int) -> int:
    return max(int(bits / 3.33), 15)


# -- subcommands -------------------------------------------------------------------


def cmd_charpoly(args, out) -> int:
    limits = _limits(args)
    args.lazy = False
    label, h, f = _family(args)
    if f is None:
        f = FactoredCharPoly.from_poly(oracle_charpoly(h, limits).poly, h.k)
    if args.expand:
        p = f.expand(limits.term_budget)
        print(render_expanded(p, args.format), file=out)
    elif args.format == "json":
        print(f.to_json(), file=out)
    elif args.format == "latex":
        print(render_latex(f), file=out)
    else:
        print(render_text(f), file=out)
    return 0


def cmd_spectrum(args, out) -> int:
    if not args.hyperpath:
        raise UsageError("spectrum is available for --hyperpath only")
    m, k = args.hyperpath
    digits = _digits(_limits(args).precision_bits)
    descs = sorted(hyperpath_eigenvalues(m, k))
    if args.format == "json":
        print(json.dumps([d.to_dict(digits) for d in descs]), file=out)
    else:
        for d in descs:
            row = d.to_dict(digits)
            print(f"q={row['q']} theta={row['theta']} zero={row['zero']} value={row['re']} + {row['im']}i", file=out)
    return 0


def cmd_radius(args, out) -> int:
    if not args.hyperpath:
        raise UsageError("radius is available for --hyperpath only")
    m, k = args.hyperpath
    digits = _digits(_limits(args).precision_bits)
    r = spectral_radius(m, k, digits)
    if args.format == "json":
        print(json.dumps(r.to_dict(digits)), file=out)
    else:
        print(f"{r.exact_str()} ~ {r.to_dict(digits)['value']}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    checks = run_suite(args.suite, args.seed, _limits(args))
    failed = 0
    for c in checks:
        failed += not c.ok
        status = "PASS" if c.ok else "FAIL"
        print(f"[{status}] {c.name}" + (f"  ({c.detail})" if c.detail else ""), file=out)
    print(f"{args.suite}: {len(checks) - failed}/{len(checks)} passed", file=out)
    return EXIT_VERIFY if failed else 0


def cmd_oracle(args, out) -> int:
    limits = _limits(args)
    args.lazy = False
    label, h, closed = _family(args)
    res = oracle_charpoly(h, limits)
    if closed is not None:
        v = oracle_compare(closed, h, limits, oracle=res)
        print(json.dumps(v.to_dict()), file=out)
        return 0 if v.match else EXIT_VERIFY
    report = {
        "method": res.method,
        "degree": res.poly.degree,
        "primes": res.primes_used,
        "samples": res.sample_count,
        "poly": res.poly.to_json(),
    }
    if args.format == "json":
        print(json.dumps(report), file=out)
    else:
        print(render_expanded(res.poly, args.format), file=out)
    return 0


def _add_family(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--hyperpath", nargs=2, type=int, metavar=("M", "K"))
    g.add_argument("--hyperstar", nargs=2, type=int, metavar=("S", "K"))
    g.add_argument("--broom", nargs=3, type=int, metavar=("M", "S", "K"))
    g.add_argument("--input", metavar="FILE", help='hypergraph JSON {"k":..,"n":..,"edges":[..]}')


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")
    p.add_argument("--budget", type=int, help="max Macaulay matrix dimension (default 512)")
    p.add_argument("--term-budget", type=int, help="max coefficients in an expansion (default 1e7)")
    p.add_argument("--precision", type=int, metavar="BITS", help="numeric precision (default 200)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercharpoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a family")
    _add_family(p)
    _add_common(p)
    p.add_argument("--expand", action="store_true", help="multiply out the factored form")
    p.set_defaults(func=cmd_charpoly)

    for name, func, helptext in (
        ("spectrum", cmd_spectrum, "distinct eigenvalues of a hyperpath"),
        ("radius", cmd_radius, "spectral radius of a hyperpath"),
        ("oracle", cmd_oracle, "first-principles characteristic polynomial"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_family(p)
        _add_common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a packaged consistency suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    except (ValueError, IndexError, FileNotFoundError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    except BudgetExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())
