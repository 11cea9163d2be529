"""Finite skew lattices given by Cayley tables.

An algebra on ``n`` elements is stored as two ``n x n`` tables of element
ids (``meet[x][y]`` is ``x ∧ y``).  Row is the left operand, column the
right one.  Everything in the package is a pure function of these tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

Table = tuple[tuple[int, ...], ...]


class StructuralError(ValueError):
    """Tables are malformed (wrong shape, entry out of range, bad names)."""


class NotASkewLattice(ValueError):
    """Tables are well formed but violate at least one skew-lattice law."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        first = report.failures[0]
        super().__init__(f"law {first[0]!r} fails at {first[1]}")


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    failures: list[tuple[str, tuple[int, ...]]]


@dataclass(frozen=True, eq=False)
class SkewLattice:
    """Immutable finite skew lattice.

    Instances built through :func:`from_tables` (the usual route) are
    validated; ``validated`` is False only for algebras constructed with
    ``check=False``.
    """

    meet: Table
    join: Table
    names: tuple[str, ...] | None = None
    validated: bool = False
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_key", (self.meet, self.join, self.names))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewLattice):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._key)
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def size(self) -> int:
        return len(self.meet)

    def __len__(self) -> int:
        return len(self.meet)

    @property
    def elements(self) -> range:
        return range(len(self.meet))

    def m(self, *xs: int) -> int:
        """Left-to-right meet of the arguments."""
        r = xs[0]
        meet = self.meet
        for x in xs[1:]:
            r = meet[r][x]
        return r

    def j(self, *xs: int) -> int:
        """Left-to-right join of the arguments."""
        r = xs[0]
        join = self.join
        for x in xs[1:]:
            r = join[r][x]
        return r

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def fmt(self, xs: Iterable[int]) -> str:
        return "{" + ",".join(self.name(x) for x in sorted(xs)) + "}"

    def element(self, token: str | int) -> int:
        """Resolve an element by name (when names exist) or by id."""
        if isinstance(token, int):
            if 0 <= token < self.size:
                return token
            raise KeyError(token)
        if self.names is not None:
            if token in self.names:
                return self.names.index(token)
            raise KeyError(token)
        if token.isdigit() and int(token) < self.size:
            return int(token)
        raise KeyError(token)


def _as_table(rows: Sequence[Sequence[int]], n: int, label: str) -> Table:
    if len(rows) != n:
        raise StructuralError(f"{label} table has {len(rows)} rows, expected {n}")
    out = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise StructuralError(f"{label} row {i} has {len(row)} entries, expected {n}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise StructuralError(f"{label} row {i} has out-of-range entry {v!r}")
        out.append(tuple(row))
    return tuple(out)


def _laws(M: Table, J: Table) -> list[tuple[str, int, Callable[..., bool]]]:
    return [
        ("meet_idempotent", 1, lambda x: M[x][x] == x),
        ("join_idempotent", 1, lambda x: J[x][x] == x),
        ("meet_associative", 3, lambda x, y, z: M[M[x][y]][z] == M[x][M[y][z]]),
        ("join_associative", 3, lambda x, y, z: J[J[x][y]][z] == J[x][J[y][z]]),
        # (y∧x)∨x = x = x∨(x∧y) and the duals x∧(x∨y) = x = (y∨x)∧x
        ("absorption_meet_join_left", 2, lambda x, y: J[M[y][x]][x] == x),
        ("absorption_meet_join_right", 2, lambda x, y: J[x][M[x][y]] == x),
        ("absorption_join_meet_right", 2, lambda x, y: M[x][J[x][y]] == x),
        ("absorption_join_meet_left", 2, lambda x, y: M[J[y][x]][x] == x),
        ("duality_join_left", 2, lambda x, y: (J[x][y] == x) == (M[x][y] == y)),
        ("duality_join_right", 2, lambda x, y: (J[x][y] == y) == (M[x][y] == x)),
    ]


def validate(meet: Sequence[Sequence[int]], join: Sequence[Sequence[int]]) -> ValidationReport:
    """Check every skew-lattice law exhaustively.

    Raises StructuralError for malformed tables.  Each failed law is
    reported once, with the first violating tuple in lexicographic order.
    """
    n = len(meet)
    if n < 1:
        raise StructuralError("carrier must be nonempty")
    if len(join) != n:
        raise StructuralError(f"table sizes differ: {n} vs {len(join)}")
    M = _as_table(meet, n, "meet")
    J = _as_table(join, n, "join")
    failures = []
    for name, arity, law in _laws(M, J):
        for args in itertools.product(range(n), repeat=arity):
            if not law(*args):
                failures.append((name, args))
                break
    return ValidationReport(not failures, failures)


def law_holds(name: str, S: SkewLattice, args: tuple[int, ...]) -> bool:
    """Replay one named law on one tuple (used to check witnesses)."""
    for law_name, _, law in _laws(S.meet, S.join):
        if law_name == name:
            return law(*args)
    raise KeyError(name)


def from_tables(
    meet: Sequence[Sequence[int]],
    join: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    check: bool = True,
) -> SkewLattice:
    n = len(meet)
    if names is not None:
        names = tuple(str(t) for t in names)
        if len(names) != n:
            raise StructuralError(f"{len(names)} names for {n} elements")
        if len(set(names)) != n:
            raise StructuralError("element names must be distinct")
        if any(not t or any(c.isspace() for c in t) or t.startswith("#") for t in names):
            raise StructuralError("element names must be printable tokens")
    if check:
        report = validate(meet, join)
        if not report.passed:
            raise NotASkewLattice(report)
    else:
        _as_table(meet, n, "meet")
        _as_table(join, n, "join")
    return SkewLattice(
        tuple(tuple(r) for r in meet),
        tuple(tuple(r) for r in join),
        names,
        validated=check,
    )


def make_rectangular(l_size: int, r_size: int) -> SkewLattice:
    """The rectangular skew lattice on L x R, flattened row-major.

    (x,y) ∨ (x',y') = (x',y) and (x,y) ∧ (x',y') = (x,y').
    """
    if l_size < 1 or r_size < 1:
        raise ValueError("both factors must be nonempty")
    n = l_size * r_size
    cells = [divmod(i, r_size) for i in range(n)]
    meet = [[x * r_size + y2 for (_, y2) in cells] for (x, _) in cells]
    join = [[x2 * r_size + y for (x2, _) in cells] for (_, y) in cells]
    names = None
    if n > 1:
        names = [f"({x},{y})" for x, y in cells]
    return from_tables(meet, join, names)


def direct_product(S: SkewLattice, T: SkewLattice) -> SkewLattice:
    """Componentwise product; element (s, t) has id ``s * |T| + t``."""
    nt = len(T)
    pairs = [divmod(i, nt) for i in range(len(S) * nt)]
    meet = [[S.meet[s][s2] * nt + T.meet[t][t2] for (s2, t2) in pairs] for (s, t) in pairs]
    join = [[S.join[s][s2] * nt + T.join[t][t2] for (s2, t2) in pairs] for (s, t) in pairs]
    names = [f"{S.name(s)}.{T.name(t)}" for s, t in pairs]
    return from_tables(meet, join, names)


def dualize(S: SkewLattice) -> SkewLattice:
    """Swap the two operations.  Ideals of the dual are filters of S."""
    return SkewLattice(S.join, S.meet, S.names, S.validated)


def relabel(S: SkewLattice, perm: Sequence[int], keep_names: bool = True) -> SkewLattice:
    """Image of S under the bijection ``x -> perm[x]``."""
    n = len(S)
    inv = [0] * n
    for x, p in enumerate(perm):
        inv[p] = x
    meet = tuple(tuple(perm[S.meet[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    join = tuple(tuple(perm[S.join[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    names = None
    if keep_names and S.names is not None:
        names = tuple(S.names[inv[a]] for a in range(n))
    return SkewLattice(meet, join, names, S.validated)


def is_closed(S: SkewLattice, X: Iterable[int]) -> bool:
    """Whether X is closed under both operations."""
    X = set(X)
    return all(S.meet[x][y] in X and S.join[x][y] in X for x in X for y in X)


def generated_subalgebra(S: SkewLattice, X: Iterable[int]) -> frozenset[int]:
    closure = set(X)
    frontier = list(closure)
    while frontier:
        new = set()
        for x in frontier:
            for y in list(closure):
                for v in (S.meet[x][y], S.meet[y][x], S.join[x][y], S.join[y][x]):
                    if v not in closure:
                        new.add(v)
        closure |= new
        frontier = list(new)
    return frozenset(closure)


def subalgebra(S: SkewLattice, X: Iterable[int]) -> tuple[SkewLattice, tuple[int, ...]]:
    """Restrict S to a closed subset.

    Returns the subalgebra (relabelled 0..k-1 in increasing id order) and
    the embedding, a tuple mapping new ids to old ids.
    """
    elems = tuple(sorted(set(X)))
    if not elems:
        raise ValueError("subalgebra of the empty set")
    if not is_closed(S, elems):
        raise ValueError(f"{S.fmt(elems)} is not a subalgebra")
    pos = {x: i for i, x in enumerate(elems)}
    meet = tuple(tuple(pos[S.meet[a][b]] for b in elems) for a in elems)
    join = tuple(tuple(pos[S.join[a][b]] for b in elems) for a in elems)
    names = tuple(S.name(a) for a in elems)
    return SkewLattice(meet, join, names, S.validated), elems


def is_lattice(S: SkewLattice) -> bool:
    n = len(S)
    meet_comm = all(S.meet[x][y] == S.meet[y][x] for x in range(n) for y in range(x + 1, n))
    join_comm = all(S.join[x][y] == S.join[y][x] for x in range(n) for y in range(x + 1, n))
    assert meet_comm == join_comm, "commutativity of one operation must force the other"
    return meet_comm


def noncommuting_pair(S: SkewLattice) -> tuple[int, int] | None:
    n = len(S)
    for x in range(n):
        for y in range(x + 1, n):
            if S.meet[x][y] != S.meet[y][x]:
                return (x, y)
    return None


def lattice_from_order(leq: Sequence[Sequence[bool]], names: Sequence[str] | None = None) -> SkewLattice:
    """Build a lattice from its order matrix (``leq[x][y]`` means x <= y)."""
    n = len(leq)

    def bound(x: int, y: int, upper: bool) -> int:
        if upper:
            cands = [z for z in range(n) if leq[x][z] and leq[y][z]]
            best = [z for z in cands if all(leq[z][w] for w in cands)]
        else:
            cands = [z for z in range(n) if leq[z][x] and leq[z][y]]
            best = [z for z in cands if all(leq[w][z] for w in cands)]
        if len(best) != 1:
            raise ValueError(f"order is not a lattice at ({x},{y})")
        return best[0]

    meet = [[bound(x, y, False) for y in range(n)] for x in range(n)]
    join = [[bound(x, y, True) for y in range(n)] for x in range(n)]
    return from_tables(meet, join, names)


def chain(k: int) -> SkewLattice:
    if k < 1:
        raise ValueError("chain length must be positive")
    meet = [[min(x, y) for y in range(k)] for x in range(k)]
    join = [[max(x, y) for y in range(k)] for x in range(k)]
    return from_tables(meet, join)


# Cayley tables of the two five-element skew lattices, element order 0, a, b, c, 1.
_NC5_NAMES = ("0", "a", "b", "c", "1")

_NC5R_MEET = (
    (0, 0, 0, 0, 0),
    (0, 1, 2, 0, 1),
    (0, 1, 2, 0, 2),
    (0, 0, 0, 3, 3),
    (0, 1, 2, 3, 4),
)
_NC5R_JOIN = (
    (0, 1, 2, 3, 4),
    (1, 1, 1, 4, 4),
    (2, 2, 2, 4, 4),
    (3, 4, 4, 3, 4),
    (4, 4, 4, 4, 4),
)
_NC5L_MEET = (
    (0, 0, 0, 0, 0),
    (0, 1, 1, 0, 1),
    (0, 2, 2, 0, 2),
    (0, 0, 0, 3, 3),
    (0, 1, 2, 3, 4),
)
_NC5L_JOIN = (
    (0, 1, 2, 3, 4),
    (1, 1, 2, 4, 4),
    (2, 1, 2, 4, 4),
    (3, 4, 4, 3, 4),
    (4, 4, 4, 4, 4),
)

BUILTIN_NAMES = ("NC5R", "NC5L", "chain_<k>", "M2", "N5")


def builtin(name: str) -> SkewLattice:
    key = name.strip()
    if key == "NC5R":
        return from_tables(_NC5R_MEET, _NC5R_JOIN, _NC5_NAMES)
    if key == "NC5L":
        return from_tables(_NC5L_MEET, _NC5L_JOIN, _NC5_NAMES)
    if key.startswith("chain_") and key[6:].isdigit():
        return chain(int(key[6:]))
    if key in ("M2", "diamond"):
        # 0 < a, b < 1
        leq = [[x == y or x == 0 or y == 3 for y in range(4)] for x in range(4)]
        return lattice_from_order(leq, ("0", "a", "b", "1"))
    if key in ("N5", "pentagon"):
        # 0 < a < c < 1 and 0 < b < 1
        up = {0: {0, 1, 2, 3, 4}, 1: {1, 3, 4}, 2: {2, 4}, 3: {3, 4}, 4: {4}}
        leq = [[y in up[x] for y in range(5)] for x in range(5)]
        return lattice_from_order(leq, ("0", "a", "b", "c", "1"))
    raise KeyError(f"unknown builtin algebra {name!r}; known: {', '.join(BUILTIN_NAMES)}")


@dataclass(frozen=True)
class IsoWitness:
    """Bijection ``mapping[x]`` from the source carrier onto the target's."""

    mapping: tuple[int, ...]

    def inverse(self) -> "IsoWitness":
        inv = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return IsoWitness(tuple(inv))


def is_isomorphism(S: SkewLattice, T: SkewLattice, f: Sequence[int]) -> bool:
    n = len(S)
    if len(T) != n or sorted(f) != list(range(n)):
        return False
    return all(
        f[S.meet[x][y]] == T.meet[f[x]][f[y]] and f[S.join[x][y]] == T.join[f[x]][f[y]]
        for x in range(n)
        for y in range(n)
    )


def element_signature(S: SkewLattice) -> list[tuple[int, ...]]:
    """Isomorphism-invariant profile of each element.

    D-class size, class position (number of classes below and above), and
    the sizes of the natural-order down- and up-sets.
    """
    n = len(S)
    M = S.meet
    # y ⪯ x iff y∧x∧y = y; x D y iff both directions
    pre = [[M[M[y][x]][y] == y for x in range(n)] for y in range(n)]
    leq = [[M[x][y] == x == M[y][x] for y in range(n)] for x in range(n)]
    sig = []
    for x in range(n):
        dsize = sum(1 for y in range(n) if pre[x][y] and pre[y][x])
        below = sum(1 for y in range(n) if pre[y][x])
        above = sum(1 for y in range(n) if pre[x][y])
        down = sum(1 for y in range(n) if leq[y][x])
        up = sum(1 for y in range(n) if leq[x][y])
        r_size = sum(1 for y in range(n) if M[x][y] == y and M[y][x] == x)
        sig.append((dsize, below, above, down, up, r_size))
    return sig


def find_isomorphism(S: SkewLattice, T: SkewLattice) -> IsoWitness | None:
    """Backtracking search for an isomorphism S -> T.

    Candidate images are restricted to elements of equal signature, which
    in particular maps D-classes onto D-classes of the same size.
    """
    n = len(S)
    if len(T) != n:
        return None
    sig_s = element_signature(S)
    sig_t = element_signature(T)
    if sorted(sig_s) != sorted(sig_t):
        return None
    cands = [[y for y in range(n) if sig_t[y] == sig_s[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: (len(cands[x]), x))
    f = [-1] * n
    used = [False] * n
    SM, SJ, TM, TJ = S.meet, S.join, T.meet, T.join

    def consistent(x: int) -> bool:
        # every pair whose operands and product all have images, and that involves x
        for a in range(n):
            fa = f[a]
            if fa < 0:
                continue
            for b in range(n):
                fb = f[b]
                if fb < 0:
                    continue
                pm, pj = SM[a][b], SJ[a][b]
                if x not in (a, b, pm, pj):
                    continue
                if f[pm] >= 0 and f[pm] != TM[fa][fb]:
                    return False
                if f[pj] >= 0 and f[pj] != TJ[fa][fb]:
                    return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for y in cands[x]:
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(x) and search(k + 1):
                return True
            used[y] = False
        f[x] = -1
        return False

    if not search(0):
        return None
    assert is_isomorphism(S, T, f)
    return IsoWitness(tuple(f))
