"""Command-line front end.

Eight subcommands expose the library's workflows: expand, convergents,
cylinders, dist, fit, constants, stats, gcf-check.  Machine-readable
results go to stdout (canonical JSON with sorted keys, or RFC-4180-style
CSV with a header row and LF line endings); diagnostics go to stderr.
Exit codes: 0 success, 1 domain/parse error, 2 usage error.

Exact rationals are serialized as "p/q" strings; reals print at 12
significant digits unless --digits (or the CLOGKIT_DIGITS environment
variable) says otherwise.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import random
import sys
from fractions import Fraction

from mpmath import mpf, nstr

from . import distribution, gcfpredicates, intervals, khinchine
from .expand import (
    Expansion,
    TermSequence,
    Variant,
    convergents,
    expand_gcf,
    expand_type1,
    expand_type2,
    expand_type3,
    sequence_from_name,
    to_json_dict,
    to_text,
)
from .numtypes import (
    DomainError,
    ParseError,
    PrecisionGuard,
    rational_from_decimal,
    significant_digits,
)

__all__ = ["main", "run"]

_INT_RE_CHARS = set("+-0123456789")


def _resolve_digits(arg_digits: int | None) -> int:
    if arg_digits is not None:
        digits = arg_digits
    else:
        env = os.environ.get("CLOGKIT_DIGITS")
        digits = int(env) if env else 12
    if digits < 1:
        msg = f"--digits must be >= 1, got {digits}"
        raise DomainError(msg)
    return digits


def _fmt_real(v, digits: int) -> str:
    if isinstance(v, mpf):
        return nstr(v, digits)
    return f"{float(v):.{digits}g}"


def _fmt_rational(x: Fraction) -> str:
    return str(x)  # Fraction prints "p/q", or "p" for integers


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _emit_csv(header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _parse_value_text(text: str) -> tuple[Fraction, PrecisionGuard | None]:
    """Parse "p/q", an integer, or a decimal numeral.

    Decimals are truncations of something, so they come back with a guard
    sized to their significant digits; exact forms need no guard.
    """
    text = "".join(text.split())
    if not text:
        raise ParseError("empty value")
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return Fraction(int(num), int(den)), None
        except (ValueError, ZeroDivisionError) as exc:
            msg = f"bad rational {text!r}: {exc}"
            raise ParseError(msg) from None
    if set(text) <= _INT_RE_CHARS:
        try:
            return Fraction(int(text)), None
        except ValueError:
            msg = f"bad integer {text!r}"
            raise ParseError(msg) from None
    value = rational_from_decimal(text)
    return value, PrecisionGuard(significant_digits(text))


def _read_value(args) -> tuple[Fraction, PrecisionGuard | None]:
    if getattr(args, "value", None) is not None:
        return _parse_value_text(args.value)
    if getattr(args, "value_file", None) is not None:
        with open(args.value_file, encoding="utf-8") as fh:
            return _parse_value_text(fh.read())
    raise ParseError("no input value: pass --value or --value-file")


def _expander(args):
    """Return (callable x -> Expansion, variant label) from --type/--seq flags."""
    if args.seq is not None:
        seq = sequence_from_name(args.seq)

        def go(x, guard=None):
            return expand_gcf(x, seq, args.max_terms, guard=guard)

        return go
    if args.base is None:
        raise ParseError("--base is required with --type")
    fn = {1: expand_type1, 2: expand_type2, 3: expand_type3}[args.type]

    def go(x, guard=None):
        return fn(x, args.base, args.max_terms, guard=guard)

    return go


def _random_rationals(n: int, seed: int) -> list[Fraction]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        q = rng.randrange(2, 2**30)
        p = rng.randrange(q + 1, 2 * q)
        out.append(Fraction(p, q))
    return out


def _add_input_flags(sub, with_random: bool = False) -> None:
    group = sub.add_argument_group("input")
    group.add_argument("--type", type=int, choices=(1, 2, 3), help="continued-logarithm type")
    group.add_argument("--seq", help="term sequence: naturals, powers:B, or clog:B")
    group.add_argument("--base", type=int, help="base b >= 2 (with --type)")
    group.add_argument("--value", help='input as "p/q", integer, or decimal string')
    group.add_argument("--value-file", help="file containing the input value")
    group.add_argument("--max-terms", type=int, default=64, help="term budget (default 64)")
    if with_random:
        group.add_argument("--random", type=int, metavar="N", help="expand N seeded random rationals")
        group.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")


def _check_variant_flags(parser, args) -> None:
    if (args.type is None) == (args.seq is None):
        parser.error("exactly one of --type or --seq is required")


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------


def _cmd_expand(parser, args) -> int:
    _check_variant_flags(parser, args)
    go = _expander(args)
    if getattr(args, "random", None) is not None:
        values = [(v, None) for v in _random_rationals(args.random, args.seed)]
    else:
        values = [_read_value(args)]
    results = [go(x, guard) for x, guard in values]
    if args.format == "text":
        for e in results:
            sys.stdout.write(to_text(e) + "\n")
        return 0
    payload = [to_json_dict(e) for e in results]
    _emit_json(payload if len(payload) > 1 else payload[0])
    return 0


def _cmd_convergents(parser, args) -> int:
    _check_variant_flags(parser, args)
    go = _expander(args)
    x, guard = _read_value(args)
    e = go(x, guard)
    pairs = convergents(e)
    if args.format == "json":
        _emit_json([{"n": n, "p": pair.p, "q": pair.q} for n, pair in enumerate(pairs)])
        return 0
    _emit_csv(["n", "p", "q"], [[n, pair.p, pair.q] for n, pair in enumerate(pairs)])
    return 0


def _parse_path(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ks, ls = [], []
    for part in text.split(","):
        k_text, _, l_text = part.partition(":")
        try:
            ks.append(int(k_text))
            ls.append(int(l_text))
        except ValueError:
            msg = f"bad path component {part!r}; expected k:l"
            raise ParseError(msg) from None
    return tuple(ks), tuple(ls)


def _cylinder_rows_type3(args) -> list[list[str]]:
    rows = []
    if args.path is not None:
        paths = [_parse_path(args.path)]
    else:
        if args.rank is None:
            raise ParseError("pass --path or --rank with --k-max")
        level = [
            (k, ell)
            for k in range(args.k_max + 1)
            for ell in range(1, args.base)
        ]
        paths = [
            (tuple(k for k, _ in combo), tuple(ell for _, ell in combo))
            for combo in itertools.product(level, repeat=args.rank)
        ]
    for ks, ls in paths:
        spec = intervals.CylinderSpec(b=args.base, ks=ks, ls=ls)
        box = intervals.cylinder_endpoints(spec)
        rows.append(
            [
                "|".join(map(str, ks)),
                "|".join(map(str, ls)),
                _fmt_rational(box.lo),
                _fmt_rational(box.hi),
                _fmt_rational(box.measure),
            ]
        )
    return rows


def _cylinder_rows_gcf(args) -> list[list[str]]:
    seq = sequence_from_name(args.seq)
    if args.indices is not None:
        paths = [tuple(int(t) for t in args.indices.split(","))]
    else:
        if args.rank is None:
            raise ParseError("pass --indices or --rank with --j-max")
        paths = list(itertools.product(range(args.j_max + 1), repeat=args.rank))
    rows = []
    for ks in paths:
        box = intervals.cylinder_endpoints_gcf(seq, ks)
        rows.append(
            [
                "|".join(map(str, ks)),
                "",
                _fmt_rational(box.lo),
                _fmt_rational(box.hi),
                _fmt_rational(box.measure),
            ]
        )
    return rows


def _cmd_cylinders(parser, args) -> int:
    if (args.base is None) == (args.seq is None):
        parser.error("exactly one of --base or --seq is required")
    rows = _cylinder_rows_gcf(args) if args.seq else _cylinder_rows_type3(args)
    header = ["k-path", "l-path", "lo", "hi", "measure"]
    if args.format == "json":
        _emit_json([dict(zip(header, row)) for row in rows])
        return 0
    _emit_csv(header, rows)
    return 0


def _cmd_dist(parser, args) -> int:
    variant = {1: Variant.TYPE1, 2: Variant.TYPE2, 3: Variant.TYPE3}[args.type]
    digits = _resolve_digits(args.digits)
    if args.masses:
        table = distribution.dist_table(
            variant,
            args.base,
            grid_points=args.grid,
            iterations=args.iters,
            sum_cap=args.cap,
            k_max=args.k_max,
        )
        rows = []
        for (k, ell), mass in sorted(table.masses.items()):
            closed = ""
            lo = hi = ""
            if variant is Variant.TYPE3:
                closed = _fmt_real(distribution.dn_limit_type3(args.base, k, ell), digits)
                lo = _fmt_real(1.0 / (4.0 * ell * (ell + 1) * args.base**k), digits)
                hi = _fmt_real(2.0 / (ell * (ell + 1) * args.base**k), digits)
            elif variant is Variant.TYPE1:
                closed = _fmt_real(distribution.dn_limit_type1(args.base, k), digits)
            rows.append([k, ell, _fmt_real(mass, digits), closed, lo, hi])
        header = ["k", "l", "mass_iterated", "mass_closed_form", "bound_lo", "bound_hi"]
        if args.format == "json":
            payload = {
                "b": table.b,
                "tail_bound": _fmt_real(table.tail_bound, digits),
                "masses": [dict(zip(header, row)) for row in rows],
            }
            _emit_json(payload)
            return 0
        _emit_csv(header, rows)
        return 0

    m = distribution.iterate_m(variant, args.base, args.grid, args.iters, args.cap)
    rows = []
    for x, y in zip(m.xs, m.ys):
        if variant is Variant.TYPE1:
            limit = distribution.m_limit_type1(args.base, float(x))
        elif variant is Variant.TYPE3:
            limit = distribution.m_limit_type3(args.base, float(x))
        else:
            limit = None  # no known closed form for type II
        rows.append(
            [
                _fmt_real(x, digits),
                _fmt_real(y, digits),
                "" if limit is None else _fmt_real(limit, digits),
                "" if limit is None else _fmt_real(abs(y - limit), digits),
            ]
        )
    header = ["x", "m_n", "m_limit", "abs_err"]
    if args.format == "json":
        _emit_json([dict(zip(header, row)) for row in rows])
        return 0
    _emit_csv(header, rows)
    return 0


def _cmd_fit(parser, args) -> int:
    digits = _resolve_digits(args.digits)
    m = distribution.iterate_m(Variant.TYPE1, args.base, args.grid, args.iters, args.cap)
    result = distribution.fit_type1(args.base, m, args.init_alpha, args.init_beta)
    payload = {
        "alpha": _fmt_real(result.alpha, digits),
        "beta": _fmt_real(result.beta, digits),
        "rss": _fmt_real(result.rss, digits),
        "sweeps": result.sweeps,
    }
    if args.format == "csv":
        _emit_csv(
            ["alpha", "beta", "rss", "sweeps"],
            [[payload["alpha"], payload["beta"], payload["rss"], result.sweeps]],
        )
        return 0
    _emit_json(payload)
    return 0


def _bases_from_args(parser, args) -> list[int]:
    if args.base is not None and args.base_range is not None:
        parser.error("pass --base or --base-range, not both")
    if args.base is not None:
        return [args.base]
    if args.base_range is not None:
        lo_text, _, hi_text = args.base_range.partition("..")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            msg = f"bad --base-range {args.base_range!r}; expected A..B"
            raise ParseError(msg) from None
        if lo > hi:
            msg = f"empty base range {args.base_range!r}"
            raise ParseError(msg)
        return list(range(lo, hi + 1))
    parser.error("pass --base or --base-range")
    return []  # unreachable


def _constants_tolerance(kind: str, b: int | None, value: float) -> str:
    if kind == "classical":
        return "true" if abs(value - khinchine.PUBLISHED_CLASSICAL) < 1e-6 else "false"
    table = {
        "1": khinchine.PUBLISHED_KL1,
        "2": khinchine.PUBLISHED_KL2,
        "3": khinchine.PUBLISHED_KL3,
    }[kind]
    if b not in table:
        return ""
    published = table[b]
    if kind == "2" and b != 2:
        ok = abs(value - published) / published < 1e-2
    elif kind == "2":
        ok = abs(value - published) < 1e-5
    else:
        ok = abs(value - published) < 5e-9
    return "true" if ok else "false"


def _cmd_constants(parser, args) -> int:
    digits = _resolve_digits(args.digits)
    rows = []
    if args.type == "classical":
        kv = khinchine.classical_khinchine(args.l_cap)
        rows.append(
            [
                "classical",
                "",
                _fmt_real(kv.exponent_A, digits),
                _fmt_real(kv.value, digits),
                _constants_tolerance("classical", None, float(kv.value)),
            ]
        )
    else:
        fn = {
            "1": khinchine.kl_type1,
            "2": lambda b: khinchine.kl_type2_estimate(b, args.iters, args.k_cap),
            "3": khinchine.kl_type3,
        }[args.type]
        for b in _bases_from_args(parser, args):
            kv = fn(b)
            rows.append(
                [
                    args.type,
                    b,
                    _fmt_real(kv.exponent_A, digits),
                    _fmt_real(kv.value, digits),
                    _constants_tolerance(args.type, b, float(kv.value)),
                ]
            )
    header = ["type", "b", "A", "KL", "tolerance_met"]
    if args.format == "json":
        _emit_json([dict(zip(header, row)) for row in rows])
        return 0
    _emit_csv(header, rows)
    return 0


def _cmd_stats(parser, args) -> int:
    _check_variant_flags(parser, args)
    if args.seq is not None:
        parser.error("stats requires a continued-logarithm --type, not --seq")
    digits = _resolve_digits(args.digits)
    go = _expander(args)
    x, guard = _read_value(args)
    e = go(x, guard)
    stats = khinchine.term_stats(e, skip_first=args.skip_first)
    payload = {
        "n_terms": stats.n_terms,
        "geometric_mean": _fmt_real(stats.geometric_mean, digits),
        "histogram": [
            {"k": k, "l": ell, "count": count}
            for (k, ell), count in sorted(stats.histogram.items())
        ],
    }
    _emit_json(payload)
    return 0


def _cmd_gcf_check(parser, args) -> int:
    seq = sequence_from_name(args.seq)
    if args.property == "ratio":
        if args.m is None:
            parser.error("--property ratio requires --m")
        m_text = args.m
        if "/" in m_text:
            num, _, den = m_text.partition("/")
            m_value = Fraction(int(num), int(den))
        else:
            m_value = Fraction(m_text)
        cert = gcfpredicates.check_bounded_gap_ratio(seq, m_value, args.prefix)
    else:
        cert = gcfpredicates.check_divisible_gaps(seq, args.prefix)
    _emit_json(gcfpredicates.certificate_json_dict(cert))
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clogkit",
        description="Exact continued logarithms: expansions, cylinders, distributions, constants.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def common(sub):
        sub.add_argument("--digits", type=int, default=None, help="significant digits (default 12, or CLOGKIT_DIGITS)")

    p = subs.add_parser("expand", help="expand a value into terms")
    _add_input_flags(p, with_random=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    common(p)

    p = subs.add_parser("convergents", help="numerators/denominators of every truncation")
    _add_input_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)

    p = subs.add_parser("cylinders", help="cylinder interval tables")
    p.add_argument("--base", type=int, help="type III base")
    p.add_argument("--seq", help="term sequence for generalized cylinders")
    p.add_argument("--path", help='type III path "k:l,k:l,..."')
    p.add_argument("--indices", help='generalized index path "j,j,..."')
    p.add_argument("--rank", type=int, help="enumerate all paths of this rank")
    p.add_argument("--k-max", type=int, default=5, help="exponent cap for --rank (default 5)")
    p.add_argument("--j-max", type=int, default=5, help="index cap for --rank (default 5)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)

    p = subs.add_parser("dist", help="iterated distribution grid or mass table")
    p.add_argument("--type", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--cap", type=int, default=100, help="exponent-sum truncation (default 100)")
    p.add_argument("--masses", action="store_true", help="emit the term-mass table instead of the grid")
    p.add_argument("--k-max", type=int, default=8, help="rows of the mass table (default 8)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)

    p = subs.add_parser("fit", help="fit the two-parameter type I model")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--cap", type=int, default=100)
    p.add_argument("--init-alpha", type=float, default=0.9)
    p.add_argument("--init-beta", type=float, default=1.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)

    p = subs.add_parser("constants", help="logarithmic Khinchine constants")
    p.add_argument("--type", choices=("1", "2", "3", "classical"), required=True)
    p.add_argument("--base", type=int)
    p.add_argument("--base-range", help="inclusive range A..B")
    p.add_argument("--iters", type=int, default=10, help="type 2 iterations (default 10)")
    p.add_argument("--k-cap", type=int, default=100, help="type 2 exponent cap (default 100)")
    p.add_argument("--l-cap", type=int, default=10_000_000, help="classical series cap (default 1e7)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)

    p = subs.add_parser("stats", help="term histogram and geometric mean")
    _add_input_flags(p)
    p.add_argument("--skip-first", type=int, default=1, help="terms to exclude from the front (default 1)")
    common(p)

    p = subs.add_parser("gcf-check", help="check a term-sequence predicate")
    p.add_argument("--seq", required=True)
    p.add_argument("--property", choices=("ratio", "divisible"), required=True)
    p.add_argument("--m", help="bound M for --property ratio (rational)")
    p.add_argument("--prefix", type=int, default=1000)
    common(p)

    return parser


_DISPATCH = {
    "expand": _cmd_expand,
    "convergents": _cmd_convergents,
    "cylinders": _cmd_cylinders,
    "dist": _cmd_dist,
    "fit": _cmd_fit,
    "constants": _cmd_constants,
    "stats": _cmd_stats,
    "gcf-check": _cmd_gcf_check,
}


def run(argv: list[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    # Expansions of long decimal fixtures produce integers far beyond the
    # default int<->str conversion limit.
    sys.set_int_max_str_digits(2_000_000)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](parser, args)
    except (DomainError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
