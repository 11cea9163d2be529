"""The ``skewlat 1`` text format.

    skewlat 1
    n 3
    names 0 a 1          (optional)
    meet
    0 0 0
    0 1 1
    0 1 2
    join
    ...

Lines starting with ``#`` and blank lines are ignored; tokens are
whitespace separated.  :func:`format_algebra` writes the canonical form,
which :func:`parse_algebra` reads back to an identical algebra.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import SkewLattice, StructuralError, from_tables

HEADER = "skewlat 1"


def format_algebra(S: SkewLattice) -> str:
    lines = [HEADER, f"n {len(S)}"]
    if S.names is not None:
        lines.append("names " + " ".join(S.names))
    for label, table in (("meet", S.meet), ("join", S.join)):
        lines.append(label)
        lines.extend(" ".join(str(v) for v in row) for row in table)
    return "\n".join(lines) + "\n"


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise StructuralError(f"{what}: expected an integer, got {tok!r}") from None


def parse_tables(text: str) -> tuple[list[list[int]], list[list[int]], list[str] | None]:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0] != HEADER.split():
        raise StructuralError(f"missing header line {HEADER!r}")
    if len(lines) < 2 or len(lines[1]) != 2 or lines[1][0] != "n":
        raise StructuralError("expected 'n <int>' after the header")
    n = _int(lines[1][1], "size")
    if n < 1:
        raise StructuralError("size must be at least 1")
    pos = 2
    names = None
    if pos < len(lines) and lines[pos][0] == "names":
        names = lines[pos][1:]
        if len(names) != n:
            raise StructuralError(f"expected {n} names, got {len(names)}")
        pos += 1
    tables = []
    for label in ("meet", "join"):
        if pos >= len(lines) or lines[pos] != [label]:
            raise StructuralError(f"expected section {label!r}")
        pos += 1
        rows = lines[pos:pos + n]
        if len(rows) != n:
            raise StructuralError(f"section {label!r} needs {n} rows")
        table = []
        for r, row in enumerate(rows):
            if len(row) != n:
                raise StructuralError(f"{label} row {r} has {len(row)} entries, expected {n}")
            table.append([_int(t, f"{label} row {r}") for t in row])
        tables.append(table)
        pos += n
    if pos != len(lines):
        raise StructuralError("unexpected content after the join section")
    return tables[0], tables[1], names


def parse_algebra(text: str, check: bool = True) -> SkewLattice:
    """Parse and (by default) validate; raises StructuralError or NotASkewLattice."""
    meet, join, names = parse_tables(text)
    return from_tables(meet, join, names, check=check)


def read_algebra(path: str | Path, check: bool = True) -> SkewLattice:
    return parse_algebra(Path(path).read_text(encoding="utf-8"), check=check)


def write_algebra(S: SkewLattice, path: str | Path) -> None:
    Path(path).write_text(format_algebra(S), encoding="utf-8")
