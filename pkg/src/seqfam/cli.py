"""Command-line front end: tables, identity sweeps, float checks, OEIS lookup.

Exit codes: 0 success, 1 verification failure (failed checks or no catalog
match), 2 usage error, 3 external-service error.  Reports go to stdout in
text, csv or json; diagnostics go to stderr.  Big integers are rendered as
decimal strings in all machine formats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .exact import format_exact, parse_exact
from .families import (FIB, ExplicitRootsFamily, Family, LucasFamily, PochhammerFamily,
                       PowerFamily, SequenceWindow, family_label, table)
from .floatcheck import FloatCompareResult, compare_grid
from .identities import (ALL_IDENTITIES, Bound, Identity, SweepRanges, sweep)
from .oeis import OeisClient, TransportError, cross_check

#: Families swept by the selector "all" (the standard verification set).
STANDARD_FAMILIES: Tuple[Family, ...] = (
    PowerFamily(0), PowerFamily(1), PowerFamily(-1), PowerFamily(2),
    PowerFamily(Fraction(1, 2)), PochhammerFamily(),
    LucasFamily(-1), LucasFamily(1), LucasFamily(2), LucasFamily(-2),
)


class UsageError(ValueError):
    pass


def parse_range(text: str) -> Tuple[int, int]:
    try:
        lo_text, hi_text = text.split("..")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise UsageError(f"range must be 'a..b' with integers, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"range must have a <= b, got {text!r}")
    return lo, hi


def _parse_m_bound(text: str) -> Bound:
    if text.strip() == "n":
        return "n"
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"m bound must be an integer or 'n', got {text!r}") from None


def parse_m_range(text: str) -> Tuple[Bound, Bound]:
    try:
        lo_text, hi_text = text.split("..")
    except ValueError:
        raise UsageError(f"range must be 'a..b', got {text!r}") from None
    lo, hi = _parse_m_bound(lo_text), _parse_m_bound(hi_text)
    if isinstance(lo, int) and isinstance(hi, int) and lo > hi:
        raise UsageError(f"range must have a <= b, got {text!r}")
    return lo, hi


class _MappedRoots:
    """Roots read from a file: mapping n -> tuple of exact scalars."""

    def __init__(self, mapping):
        self.mapping = mapping

    def __call__(self, n, l):
        row = self.mapping.get(n)
        if row is None:
            raise ValueError(f"roots file lists no roots for n={n}")
        return row[l - 1]


def load_roots_file(path: str) -> ExplicitRootsFamily:
    """Load an explicit-roots family from a JSON file.

    Schema: {"label": str, "roots": {"<n>": ["<int or p/q>", ...], ...}} with
    exactly n root strings listed under each key n.
    """
    try:
        body = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read roots file {path}: {exc}") from exc
    roots = body.get("roots")
    if not isinstance(roots, dict) or not roots:
        raise UsageError(f"roots file {path} must carry a non-empty 'roots' mapping")
    mapping = {}
    for key, row in roots.items():
        try:
            n = int(key)
            values = tuple(parse_exact(str(v)) for v in row)
        except ValueError as exc:
            raise UsageError(f"roots file {path}: bad entry for n={key}: {exc}") from exc
        if n < 1 or len(values) != n:
            raise UsageError(f"roots file {path}: entry n={key} must list exactly {key} roots")
        mapping[n] = values
    label = str(body.get("label", Path(path).stem))
    return ExplicitRootsFamily(_MappedRoots(mapping), label=f"roots:{label}")


def parse_one_family(text: str) -> Family:
    text = text.strip()
    if text == "pochhammer":
        return PochhammerFamily()
    if text == "fib":
        return FIB
    if text == "power":
        return PowerFamily(0)
    if text.startswith("power:"):
        try:
            return PowerFamily(parse_exact(text.split(":", 1)[1]))
        except ValueError:
            raise UsageError(f"bad power parameter in {text!r}") from None
    if text.startswith("lucas:"):
        try:
            family = LucasFamily(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(f"bad lucas parameter in {text!r}: {exc}") from None
        return family
    if text.startswith("roots:"):
        return load_roots_file(text.split(":", 1)[1])
    raise UsageError(
        f"unknown family {text!r}; expected power[:c], pochhammer, fib, lucas:q, roots:<file>")


def parse_families(text: str) -> List[Family]:
    if text.strip() == "all":
        return list(STANDARD_FAMILIES)
    return [parse_one_family(item) for item in text.split(",") if item.strip()]


def parse_identities(text: str) -> List[Identity]:
    if text.strip().lower() == "all":
        return list(ALL_IDENTITIES)
    out = []
    for item in text.split(","):
        item = item.strip().upper()
        if not item:
            continue
        try:
            out.append(Identity(item))
        except ValueError:
            known = ", ".join(i.value for i in ALL_IDENTITIES)
            raise UsageError(f"unknown identity {item!r}; known: {known}") from None
    if not out:
        raise UsageError("no identities selected")
    return out


# ---------------------------------------------------------------------------
# Rendering

def render_table_text(window: SequenceWindow) -> str:
    n_lo, n_hi = window.n_range
    m_lo, m_hi = window.m_range
    header = ["n\\m"] + [str(m) for m in range(m_lo, m_hi + 1)]
    rows = [[str(n)] + [format_exact(v) for v in window.row(n)] for n in range(n_lo, n_hi + 1)]
    widths = [max(len(line[j]) for line in [header] + rows) for j in range(len(header))]
    lines = ["  ".join(cell.rjust(widths[j]) for j, cell in enumerate(line))
             for line in [header] + rows]
    return "\n".join(lines)


def render_table_csv(window: SequenceWindow) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    m_lo, m_hi = window.m_range
    writer.writerow(["n"] + [str(m) for m in range(m_lo, m_hi + 1)])
    for n in range(window.n_range[0], window.n_range[1] + 1):
        writer.writerow([str(n)] + [format_exact(v) for v in window.row(n)])
    return buf.getvalue().rstrip("\n")


def window_json_dict(window: SequenceWindow) -> dict:
    return {
        "kind": "table",
        "family": family_label(window.family),
        "n": list(window.n_range),
        "m": list(window.m_range),
        "values": [[format_exact(v) for v in row] for row in window.values],
    }


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# Subcommands

def cmd_table(args) -> int:
    families = parse_families(args.family)
    if len(families) != 1:
        raise UsageError("table takes exactly one family")
    window = table(families[0], parse_range(args.n), parse_range(args.m))
    if args.format == "json":
        _emit_json(window_json_dict(window))
    elif args.format == "csv":
        print(render_table_csv(window))
    else:
        print(render_table_text(window))
    return 0


def cmd_verify(args) -> int:
    families = parse_families(args.family)
    identities = parse_identities(args.identity)
    ranges = SweepRanges(
        n=parse_range(args.n),
        m=parse_m_range(args.m) if args.m else None,
        p=parse_range(args.p) if args.p else None,
        q=parse_range(args.q) if args.q else None,
    )
    report = sweep(identities, families, ranges, workers=args.workers)
    if report.total_checks == 0:
        print("warning: no admissible points in the sweep domain", file=sys.stderr)

    if args.format == "json":
        _emit_json(report.to_json_dict())
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["identity", "family", "n", "m", "p", "q", "lhs", "rhs", "residual"])
        for check in report.failures:
            p = check.params
            writer.writerow([check.identity.value, family_label(check.family),
                             p.get("n", ""), p.get("m", ""), p.get("p", ""), p.get("q", ""),
                             format_exact(check.lhs), format_exact(check.rhs),
                             format_exact(check.residual)])
        print(buf.getvalue().rstrip("\n"))
        print(f"# total_checks={report.total_checks} failures={len(report.failures)}",
              file=sys.stderr)
    else:
        print(f"identities: {', '.join(report.identities)}")
        print(f"families:   {', '.join(report.families)}")
        print(f"ranges:     {report.ranges}")
        print(f"checks:     {report.total_checks} "
              f"({len(report.failures)} failed) in {report.wall_time_s:.2f}s")
        for check in report.failures:
            print(f"FAIL {check.identity.value} {family_label(check.family)} "
                  f"{check.params}: lhs={format_exact(check.lhs)} "
                  f"rhs={format_exact(check.rhs)} residual={format_exact(check.residual)}")
    return 0 if report.passed else 1


def cmd_float_check(args) -> int:
    families = parse_families(args.family)
    n_range = parse_range(args.n)
    m_range = parse_range(args.m)
    tol = args.tol

    results: List[FloatCompareResult] = []
    for family in families:
        results.extend(compare_grid(family, n_range, m_range))
    failures = [r for r in results if not r.within(tol)]
    worst_rel = max((r.relative_error for r in results), default=0.0)
    worst_imag = max((r.imaginary_residual / max(1.0, abs(float(r.exact))) for r in results),
                     default=0.0)

    if args.format == "json":
        _emit_json({
            "kind": "float-check",
            "families": [family_label(f) for f in families],
            "n": list(n_range),
            "m": list(m_range),
            "tolerance": tol,
            "total_checks": len(results),
            "max_relative_error": worst_rel,
            "max_imaginary_ratio": worst_imag,
            "failure_count": len(failures),
            "failures": [r.to_json_dict() for r in failures],
        })
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["family", "n", "m", "exact", "float_real", "float_imag",
                         "relative_error", "imaginary_residual"])
        for r in failures:
            writer.writerow([r.family, r.n, r.m, str(r.exact), repr(r.real), repr(r.imag),
                             repr(r.relative_error), repr(r.imaginary_residual)])
        print(buf.getvalue().rstrip("\n"))
        print(f"# total_checks={len(results)} failures={len(failures)}", file=sys.stderr)
    else:
        print(f"families: {', '.join(family_label(f) for f in families)}")
        print(f"checks:   {len(results)}  tolerance {tol:g}")
        print(f"worst relative error:  {worst_rel:.3e}")
        print(f"worst imaginary ratio: {worst_imag:.3e}")
        for r in failures:
            print(f"FAIL {r.family} n={r.n} m={r.m}: exact={r.exact} "
                  f"float={r.real!r} rel={r.relative_error:.3e}")
    return 0 if not failures else 1


def cmd_oeis(args) -> int:
    families = parse_families(args.family)
    if len(families) != 1:
        raise UsageError("oeis takes exactly one family")
    family = families[0]

    if (args.row is None) == (args.column is None):
        raise UsageError("give exactly one of --row N or --column M")
    if args.row is not None:
        axis, fixed, rng = "row", args.row, parse_range(args.m or "0..9")
    else:
        axis, fixed, rng = "column", args.column, parse_range(args.n or "0..11")

    client = OeisClient(offline=args.offline,
                        cache_dir=Path(args.cache_dir) if args.cache_dir else None)
    match, verdict = cross_check(family, axis, fixed, rng, client)

    if args.format == "json":
        payload = match.to_json_dict()
        payload.update({
            "kind": "oeis-cross-check",
            "family": family_label(family),
            "axis": axis,
            "fixed": fixed,
            "range": list(rng),
            "verdict": verdict,
        })
        _emit_json(payload)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["family", "axis", "fixed", "terms", "ids", "source", "verdict"])
        writer.writerow([family_label(family), axis, fixed,
                         " ".join(str(t) for t in match.terms),
                         " ".join(match.ids), match.source, verdict])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(f"family: {family_label(family)}  {axis} {fixed}  terms {list(match.terms)}")
        status = "MATCH" if verdict else ("AMBIGUOUS" if match.ambiguous else "NO MATCH")
        print(f"{status}: {', '.join(match.ids) if match.ids else '-'} [{match.source}]")
    return 0 if verdict else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqfam",
        description="Exact families of product-representable sequences: "
                    "tables, identity sweeps, float checks, OEIS lookup.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "csv", "json"], default="text")

    p_table = sub.add_parser("table", help="render a window of family members")
    p_table.add_argument("--family", required=True)
    p_table.add_argument("--n", required=True, metavar="A..B")
    p_table.add_argument("--m", required=True, metavar="A..B")
    add_format(p_table)
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="sweep identities over a parameter grid")
    p_verify.add_argument("--identity", default="all",
                          help="comma-separated tags, or 'all'")
    p_verify.add_argument("--family", default="all",
                          help="comma-separated selectors, or 'all'")
    p_verify.add_argument("--n", default="1..12", metavar="A..B")
    p_verify.add_argument("--m", default="-8..8", metavar="A..B",
                          help="bounds may be integers or 'n' (e.g. n..20)")
    p_verify.add_argument("--p", default=None, metavar="A..B",
                          help="restrict p (default: all admissible)")
    p_verify.add_argument("--q", default=None, metavar="A..B",
                          help="restrict q (default: all admissible)")
    p_verify.add_argument("--workers", type=int, default=1)
    add_format(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_float = sub.add_parser("float-check", help="compare float root products to exact members")
    p_float.add_argument("--family", required=True)
    p_float.add_argument("--n", default="1..25", metavar="A..B")
    p_float.add_argument("--m", default="-10..10", metavar="A..B")
    p_float.add_argument("--tol", type=float, default=1e-9)
    add_format(p_float)
    p_float.set_defaults(func=cmd_float_check)

    p_oeis = sub.add_parser("oeis", help="cross-check a row or column against the catalog")
    p_oeis.add_argument("--family", required=True)
    p_oeis.add_argument("--row", type=int, default=None, metavar="N")
    p_oeis.add_argument("--column", type=int, default=None, metavar="M")
    p_oeis.add_argument("--n", default=None, metavar="A..B",
                        help="member range for --column (default 0..11)")
    p_oeis.add_argument("--m", default=None, metavar="A..B",
                        help="label range for --row (default 0..9)")
    p_oeis.add_argument("--offline", action="store_true",
                        help="use the bundled fixtures only; never touch the network")
    p_oeis.add_argument("--cache-dir", default=None,
                        help="override SEQFAM_CACHE_DIR for this invocation")
    add_format(p_oeis)
    p_oeis.set_defaults(func=cmd_oeis)

    return parser


#: Flags whose value may start with a minus sign (ranges like -8..8).
_VALUE_FLAGS = {"--m", "--n", "--p", "--q", "--row", "--column"}
_NEGATIVE_VALUE = re.compile(r"^-\d+(\.\.(-?\d+|n))?$")


def _merge_negative_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ['--m', '-8..8'] as ['--m=-8..8'] so argparse keeps them together."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (token in _VALUE_FLAGS and i + 1 < len(argv)
                and _NEGATIVE_VALUE.match(argv[i + 1])):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed; 2 for usage, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TransportError as exc:
        print(f"network error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
