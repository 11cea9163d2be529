"""Independent brute-force oracles used to freeze expected values.

Nothing here shares code with the search kernels: tables are filled cell
by cell with every value allowed, and each law is re-checked naively on
every tuple whose entries are already defined.
"""

from __future__ import annotations

import itertools


def _defined_ok(M, J, n):
    idx = range(n)

    def g(T, a, b):
        if a < 0 or b < 0:
            return -1
        return T[a][b]

    for T in (M, J):
        for x, y, z in itertools.product(idx, repeat=3):
            l = g(T, g(T, x, y), z)
            r = g(T, x, g(T, y, z))
            if l >= 0 and r >= 0 and l != r:
                return False
    for x, y in itertools.product(idx, repeat=2):
        checks = [
            (g(J, g(M, y, x), x), x),
            (g(J, x, g(M, x, y)), x),
            (g(M, x, g(J, x, y)), x),
            (g(M, g(J, y, x), x), x),
        ]
        for v, want in checks:
            if v >= 0 and v != want:
                return False
        m, j = M[x][y], J[x][y]
        if m >= 0 and j >= 0:
            if (j == x) != (m == y) or (j == y) != (m == x):
                return False
    return True


def labelled_skew_lattices(n: int) -> list[tuple[tuple, tuple]]:
    """All labelled skew lattices on n elements, as (meet, join) row tuples."""
    M = [[-1] * n for _ in range(n)]
    J = [[-1] * n for _ in range(n)]
    for x in range(n):
        M[x][x] = J[x][x] = x
    cells = [(T, i, j) for i in range(n) for j in range(n) if i != j for T in (M, J)]
    out = []

    def rec(k):
        if k == len(cells):
            out.append((tuple(map(tuple, M)), tuple(map(tuple, J))))
            return
        T, i, j = cells[k]
        for v in range(n):
            T[i][j] = v
            if _defined_ok(M, J, n):
                rec(k + 1)
        T[i][j] = -1

    rec(0)
    return sorted(out)


def all_tables_order2() -> list[tuple[tuple, tuple]]:
    """Order 2 by filtering every pair of 2x2 tables (2^16 candidates)."""
    out = []
    vals = list(itertools.product(range(2), repeat=4))
    for m in vals:
        for j in vals:
            M = (m[0:2], m[2:4])
            J = (j[0:2], j[2:4])
            if _defined_ok([list(r) for r in M], [list(r) for r in J], 2) and all(M[x][x] == x == J[x][x] for x in range(2)):
                out.append((M, J))
    return sorted(out)


def isomorphism_classes(tables: list[tuple[tuple, tuple]], n: int) -> int:
    """Count classes by trying every permutation (fine for n <= 4)."""
    seen = set()
    classes = 0
    for M, J in tables:
        if (M, J) in seen:
            continue
        classes += 1
        for p in itertools.permutations(range(n)):
            inv = [0] * n
            for x, px in enumerate(p):
                inv[px] = x
            PM = tuple(tuple(p[M[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
            PJ = tuple(tuple(p[J[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
            seen.add((PM, PJ))
    return classes


def naive_family(meet, join, kind: str) -> set[frozenset]:
    """Every nonempty subset meeting the textbook definition, by brute force.

    ideal: ∨-closed and y∧x∧y = y, x ∈ X ⇒ y ∈ X.  skew ideal: ∨-closed and
    x∧y = y = y∧x, x ∈ X ⇒ y ∈ X.  Filters use the dual tables.
    """
    if kind in ("filter", "skew_filter"):
        meet, join = join, meet
        kind = "ideal" if kind == "filter" else "skew_ideal"
    n = len(meet)
    M, J = meet, join
    if kind == "ideal":
        below = [[y for y in range(n) if M[M[y][x]][y] == y] for x in range(n)]
    else:
        below = [[y for y in range(n) if M[x][y] == y == M[y][x]] for x in range(n)]
    out = set()
    for mask in range(1, 1 << n):
        X = frozenset(x for x in range(n) if mask >> x & 1)
        if any(J[x][y] not in X for x in X for y in X):
            continue
        if all(y in X for x in X for y in below[x]):
            out.add(X)
    return out
