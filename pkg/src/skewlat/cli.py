"""Command-line interface.

Exit codes: 0 success, 1 a law or check failed, 2 structural, usage or
I/O error.  Every command that reports takes ``--format text|json``; JSON
is key-sorted so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify, cosets, ideals
from .algebra import (
    BUILTIN_NAMES,
    NotASkewLattice,
    SkewLattice,
    StructuralError,
    builtin,
    find_isomorphism,
    from_tables,
    validate,
)
from .enumerate import (
    RESTRICTIONS,
    EnumerationBoundError,
    EnumerationSpec,
    canonical_form,
    emit,
    enumerate_algebras,
)
from .harness import theorem_harness
from .io import format_algebra, parse_tables
from .relations import ClassPair, class_order, d_classes, handedness, hasse_dot, quotient_by

OK, FAILED, ERROR = 0, 1, 2

# the count of skew ideals usually quoted for NC5L
QUOTED_NC5L_SKEW_IDEALS = 9


class UsageError(Exception):
    pass


# ---- loading and formatting -------------------------------------------------


def load_tables(source: str):
    """(meet, join, names) from a file, or from a builtin name if no such file."""
    path = Path(source)
    if path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise UsageError(f"cannot read {source}: {exc}") from None
        return parse_tables(text)
    try:
        S = builtin(source)
    except KeyError:
        raise UsageError(f"{source}: no such file or builtin ({', '.join(BUILTIN_NAMES)})") from None
    return S.meet, S.join, S.names


def load(source: str) -> SkewLattice:
    meet, join, names = load_tables(source)
    return from_tables(meet, join, names)


def fmt_set(S: SkewLattice, X) -> str:
    return "{" + ",".join(S.name(x) for x in sorted(X)) + "}"


def resolve(S: SkewLattice, token: str) -> int:
    try:
        return S.element(token)
    except KeyError:
        raise UsageError(f"unknown element {token!r}") from None


def _flatten(value, prefix: str, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(value[k], f"{prefix}.{k}" if prefix else str(k), out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(v, f"{prefix}[{i}]", out)
    elif isinstance(value, list):
        out.append((prefix, " ".join(str(v) for v in value)))
    elif isinstance(value, bool):
        out.append((prefix, "yes" if value else "no"))
    else:
        out.append((prefix, "-" if value is None else str(value)))


def render(data, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    rows: list[tuple[str, str]] = []
    _flatten(data, "", rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}".rstrip() + "\n" for k, v in rows)


# ---- reports ----------------------------------------------------------------


def _is_nc5l(S: SkewLattice) -> bool:
    return len(S) == 5 and find_isomorphism(S, builtin("NC5L")) is not None


def ideal_counts(S: SkewLattice) -> dict:
    return {kind: len(ideals.family(S, kind)) for kind in ideals.KINDS}


def count_notes(S: SkewLattice, counts: dict) -> list[str]:
    if _is_nc5l(S) and counts["skew_ideal"] != QUOTED_NC5L_SKEW_IDEALS:
        return [
            f"NC5L is usually quoted with {QUOTED_NC5L_SKEW_IDEALS} skew ideals; "
            f"exhaustive enumeration finds {counts['skew_ideal']}"
        ]
    return []


def algebra_report(S: SkewLattice) -> dict:
    """Everything ``info`` prints, as plain JSON-ready data."""
    co = class_order(S)
    P = co.partition
    classes = [fmt_set(S, blk) for blk in P.blocks]
    indices = []
    for pair in cosets.comparable_pairs(S):
        indices.append(
            {
                "upper": classes[pair.upper],
                "lower": classes[pair.lower],
                "upper_in_lower": cosets.index(S, pair, "upper_in_lower").value,
                "lower_in_upper": cosets.index(S, pair, "lower_in_upper").value,
            }
        )
    counts = ideal_counts(S)
    harness = theorem_harness(S)
    by_status: dict[str, int] = {}
    for r in harness.results:
        by_status[r.status] = by_status.get(r.status, 0) + 1
    return {
        "size": len(S),
        "names": [S.name(x) for x in S.elements],
        "handedness": handedness(S),
        "properties": {k: v for k, v in sorted(classify.properties(S).as_dict().items())},
        "classes": classes,
        "class_covers": [[classes[lo], classes[up]] for lo, up in sorted(co.covers.pairs())],
        "ideal_counts": counts,
        "notes": count_notes(S, counts),
        "indices": indices,
        "categorical": cosets.is_categorical(S),
        "strictly_categorical": cosets.is_strictly_categorical(S),
        "harness": {
            "ok": harness.ok,
            "counts": by_status,
            "failures": [r.name for r in harness.failures],
            "mismatches": [r.name for r in harness.mismatches],
        },
    }


# ---- commands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    meet, join, names = load_tables(args.path)
    from_tables(meet, join, names, check=False)  # shape, range and name checks
    report = validate(meet, join)
    label = (lambda x: names[x]) if names is not None else str
    for law, witness in report.failures:
        print(f"law {law} fails at ({', '.join(label(x) for x in witness)})", file=sys.stderr)
    if report.passed:
        print(f"ok: skew lattice of order {len(meet)}")
        return OK
    print(f"invalid: {len(report.failures)} law(s) fail")
    return FAILED


def cmd_info(args) -> int:
    S = load(args.path)
    sys.stdout.write(render(algebra_report(S), args.format))
    return OK


def cmd_ideals(args) -> int:
    S = load(args.path)
    kind = ("skew_" if args.skew else "") + ("filter" if args.filters else "ideal")
    if args.count:
        counts = ideal_counts(S)
        data = {"counts": counts, "notes": count_notes(S, counts)}
        if args.format == "json":
            sys.stdout.write(render(data, "json"))
        else:
            for k in ideals.KINDS:
                print(f"{k + 's':<13} {counts[k]}")
            for note in data["notes"]:
                print(f"note: {note}")
        return OK
    if args.principal is not None:
        x = resolve(S, args.principal)
        make = {
            "ideal": ideals.principal_ideal,
            "filter": ideals.principal_filter,
            "skew_ideal": ideals.principal_skew_ideal,
            "skew_filter": ideals.principal_skew_filter,
        }[kind]
        sets = [make(S, x).elements]
    else:
        sets = ideals.family(S, kind).sets()
    listing = [fmt_set(S, X) for X in sorted(sets, key=lambda X: (len(X), sorted(X)))]
    if args.format == "json":
        sys.stdout.write(render({"kind": kind, "sets": listing}, "json"))
    else:
        for line in listing:
            print(line)
    return OK


def cmd_cosets(args) -> int:
    S = load(args.path)
    P = d_classes(S)
    upper = P.block_of[resolve(S, args.upper)]
    lower = P.block_of[resolve(S, args.lower)]
    pair = ClassPair(upper, lower)
    try:
        lows, ups = cosets.coset_partition(S, pair)
    except ValueError:
        raise UsageError("the class of --upper must lie strictly above the class of --lower") from None
    data = {
        "upper_class": fmt_set(S, P.blocks[upper]),
        "lower_class": fmt_set(S, P.blocks[lower]),
        "cosets_in_lower": [fmt_set(S, c.elements) for c in lows],
        "cosets_in_upper": [fmt_set(S, c.elements) for c in ups],
        "bijections": [
            {
                "source": fmt_set(S, b.source.elements),
                "target": fmt_set(S, b.target.elements),
                "mapping": [f"{S.name(x)}->{S.name(y)}" for x, y in b.mapping],
            }
            for b in cosets.bijections(S, pair)
        ],
        "index_upper_in_lower": cosets.index(S, pair, "upper_in_lower").value,
        "index_lower_in_upper": cosets.index(S, pair, "lower_in_upper").value,
    }
    if args.format == "json":
        sys.stdout.write(render(data, "json"))
        return OK
    print(f"A = {data['upper_class']}  B = {data['lower_class']}")
    print("A-cosets in B: " + " ".join(data["cosets_in_lower"]))
    print("B-cosets in A: " + " ".join(data["cosets_in_upper"]))
    for b in data["bijections"]:
        print(f"{b['source']} -> {b['target']}: {' '.join(b['mapping'])}")
    print(f"[B:A] = {data['index_upper_in_lower']}")
    print(f"[A:B] = {data['index_lower_in_upper']}")
    return OK


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from None


def cmd_hasse(args) -> int:
    _write(hasse_dot(load(args.path)), args.output)
    return OK


def cmd_quotient(args) -> int:
    S = load(args.path)
    try:
        Q = quotient_by(S, args.rel).algebra
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(format_algebra(Q), args.output)
    return OK


def cmd_enumerate(args) -> int:
    restrict = frozenset(r for r in RESTRICTIONS if getattr(args, r))
    spec = EnumerationSpec(
        args.order,
        restrict,
        up_to_iso=not args.labelled,
        limit=args.limit,
        workers=args.workers,
        backend=args.backend,
        max_order=args.max_order,
        max_order_handed=max(args.max_order, args.max_order_handed),
    )
    try:
        algebras = list(enumerate_algebras(spec))
    except EnumerationBoundError as exc:
        raise UsageError(str(exc)) from None
    if args.emit is not None:
        emit(algebras, Path(args.emit))
    if args.labelled:
        keys = [format_algebra(S).replace("\n", " ").strip() for S in algebras]
    else:
        keys = [canonical_form(S).hex() for S in algebras]
    if args.format == "json":
        sys.stdout.write(render({"order": args.order, "count": len(algebras), "algebras": keys}, "json"))
    else:
        if not args.quiet:
            for k in keys:
                print(k)
        print(f"count {len(algebras)}")
    return OK


def cmd_check(args) -> int:
    S = load(args.path)
    report = theorem_harness(S)
    if args.format == "json":
        sys.stdout.write(render(report.as_dict(), "json"))
    else:
        width = max(len(r.name) for r in report.results)
        for r in report.results:
            line = f"{r.name.ljust(width)}  {r.status}"
            if r.detail:
                line += f"  ({r.detail})"
            print(line)
        print(f"summary: {len(report.failures)} failure(s), {len(report.mismatches)} paper-claim mismatch(es)")
    return OK if report.ok else FAILED


# ---- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="skewlat", description="Finite skew lattice toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_path(name, helptext, parents=(fmt,)):
        sp = sub.add_parser(name, help=helptext, parents=list(parents))
        sp.add_argument("path", help="algebra file or builtin name (NC5R, NC5L, chain_<k>, M2, N5)")
        return sp

    sp = with_path("validate", "check every skew-lattice law", parents=())
    sp.set_defaults(func=cmd_validate)

    sp = with_path("info", "full structural report")
    sp.set_defaults(func=cmd_info)

    sp = with_path("ideals", "list ideals, filters, skew ideals or skew filters")
    sp.add_argument("--skew", action="store_true", help="skew ideals (or skew filters with --filters)")
    sp.add_argument("--filters", action="store_true", help="filters instead of ideals")
    sp.add_argument("--principal", metavar="ELT", help="only the principal set of ELT")
    sp.add_argument("--count", action="store_true", help="cardinalities of all four families")
    sp.set_defaults(func=cmd_ideals)

    sp = with_path("cosets", "cosets, bijections and indices between two classes")
    sp.add_argument("--upper", required=True, metavar="ELT", help="element of the upper class A")
    sp.add_argument("--lower", required=True, metavar="ELT", help="element of the lower class B")
    sp.set_defaults(func=cmd_cosets)

    sp = with_path("hasse", "DOT diagram of the natural order", parents=())
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    sp.set_defaults(func=cmd_hasse)

    sp = with_path("quotient", "quotient by a Green relation, as an algebra file", parents=())
    sp.add_argument("--rel", choices=("D", "R", "L"), default="D")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("enumerate", help="all skew lattices of one order", parents=[fmt])
    sp.add_argument("--order", type=int, required=True)
    for r in RESTRICTIONS:
        sp.add_argument("--" + r.replace("_", "-"), dest=r, action="store_true", help=f"only {r.replace('_', '-')} algebras")
    sp.add_argument("--labelled", action="store_true", help="all labelled algebras, not one per isomorphism class")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--backend", choices=("python", "cython"))
    sp.add_argument("--max-order", type=int, default=5)
    sp.add_argument("--max-order-handed", type=int, default=6)
    sp.add_argument("--emit", metavar="DIR", help="write one file per algebra into DIR")
    sp.add_argument("-q", "--quiet", action="store_true", help="print only the count")
    sp.set_defaults(func=cmd_enumerate)

    sp = with_path("check", "run the invariant battery")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except (UsageError, StructuralError, OSError, ValueError) as exc:
        if isinstance(exc, NotASkewLattice):
            print(f"error: not a skew lattice: {exc}", file=sys.stderr)
            return FAILED
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
