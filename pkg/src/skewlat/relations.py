"""Orders, Green's relations, D-classes, quotients and Hasse diagrams.

Storage convention: an order relation holds as ``(smaller, larger)``, so
``leq[(y, x)]`` reads "y <= x".  Relations are kept as one Python int per
row, bit ``b`` of row ``a`` standing for the pair ``(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .algebra import (
    IsoWitness,
    SkewLattice,
    direct_product,
    find_isomorphism,
    is_isomorphism,
    is_lattice,
)


@dataclass(frozen=True)
class Relation:
    n: int
    rows: tuple[int, ...]

    @classmethod
    def from_predicate(cls, n: int, pred: Callable[[int, int], bool]) -> "Relation":
        rows = []
        for a in range(n):
            r = 0
            for b in range(n):
                if pred(a, b):
                    r |= 1 << b
            rows.append(r)
        return cls(n, tuple(rows))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * n
        for a, b in pairs:
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << a for a in range(n)))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        a, b = pair
        return bool(self.rows[a] >> b & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in range(self.n) if self.rows[a] >> b & 1]

    def image(self, a: int) -> frozenset[int]:
        r = self.rows[a]
        return frozenset(b for b in range(self.n) if r >> b & 1)

    def preimage(self, b: int) -> frozenset[int]:
        return frozenset(a for a in range(self.n) if self.rows[a] >> b & 1)

    def __and__(self, other: "Relation") -> "Relation":
        return Relation(self.n, tuple(x & y for x, y in zip(self.rows, other.rows)))

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.n, tuple(x | y for x, y in zip(self.rows, other.rows)))

    def inverse(self) -> "Relation":
        return Relation.from_pairs(self.n, ((b, a) for a, b in self.pairs()))

    def compose(self, other: "Relation") -> "Relation":
        """Pairs (a, c) with (a, b) in self and (b, c) in other."""
        rows = []
        for a in range(self.n):
            r = 0
            row = self.rows[a]
            for b in range(self.n):
                if row >> b & 1:
                    r |= other.rows[b]
            rows.append(r)
        return Relation(self.n, tuple(rows))

    def issubset(self, other: "Relation") -> bool:
        return all(x & ~y == 0 for x, y in zip(self.rows, other.rows))

    def is_reflexive(self) -> bool:
        return all(self.rows[a] >> a & 1 for a in range(self.n))

    def is_symmetric(self) -> bool:
        return self == self.inverse()

    def is_antisymmetric(self) -> bool:
        return all(not (b in self.image(a) and a in self.image(b)) for a in range(self.n) for b in range(a))

    def is_transitive(self) -> bool:
        return self.compose(self).issubset(self)

    def is_partial_order(self) -> bool:
        return self.is_reflexive() and self.is_antisymmetric() and self.is_transitive()

    def strict(self) -> "Relation":
        return Relation(self.n, tuple(r & ~(1 << a) for a, r in enumerate(self.rows)))

    def covers(self) -> "Relation":
        """Transitive reduction of the strict part (for partial orders)."""
        lt = self.strict()
        two_step = lt.compose(lt)
        return Relation(self.n, tuple(x & ~y for x, y in zip(lt.rows, two_step.rows)))


@dataclass(frozen=True)
class Partition:
    """Blocks ordered by least element; ``block_of[x]`` is x's block index."""

    n: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        bl = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1)
        block_of = [-1] * n
        for i, b in enumerate(bl):
            if not b:
                raise ValueError("empty block")
            for x in b:
                if not 0 <= x < n or block_of[x] != -1:
                    raise ValueError("blocks must be disjoint and within range")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the carrier")
        return cls(n, tuple(bl), tuple(block_of))

    @classmethod
    def from_equivalence(cls, rel: Relation) -> "Partition":
        assert rel.is_reflexive() and rel.is_symmetric() and rel.is_transitive()
        seen: set[int] = set()
        blocks = []
        for a in range(rel.n):
            if a not in seen:
                b = rel.image(a)
                seen |= b
                blocks.append(b)
        return cls.from_blocks(rel.n, blocks)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, tuple((a,) for a in range(n)), tuple(range(n)))

    def __len__(self) -> int:
        return len(self.blocks)

    def block(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[x]]


@dataclass(frozen=True)
class QuotientAlgebra:
    algebra: SkewLattice
    projection: tuple[int, ...]
    partition: Partition


@dataclass(frozen=True)
class ClassOrder:
    """Order of the D-classes: ``order[(B, A)]`` means B <= A."""

    partition: Partition
    order: Relation
    covers: Relation

    def lt(self, lower: int, upper: int) -> bool:
        return lower != upper and (lower, upper) in self.order

    def comparable(self, p: int, q: int) -> bool:
        return (p, q) in self.order or (q, p) in self.order


@dataclass(frozen=True)
class ClassPair:
    upper: int
    lower: int


@lru_cache(maxsize=4096)
def natural_leq(S: SkewLattice) -> Relation:
    """y <= x iff x∧y = y = y∧x."""
    M = S.meet
    rel = Relation.from_predicate(len(S), lambda y, x: M[x][y] == y == M[y][x])
    assert rel.is_partial_order()
    return rel


@lru_cache(maxsize=4096)
def natural_preorder(S: SkewLattice) -> Relation:
    """y ⪯ x iff y∧x∧y = y, cross-checked against x∨y∨x = x."""
    M, J = S.meet, S.join
    rel = Relation.from_predicate(len(S), lambda y, x: M[M[y][x]][y] == y)
    dual = Relation.from_predicate(len(S), lambda y, x: J[J[x][y]][x] == x)
    assert rel == dual, "meet and join forms of the preorder disagree"
    assert rel.is_reflexive() and rel.is_transitive()
    return rel


@lru_cache(maxsize=4096)
def green_R(S: SkewLattice) -> Relation:
    M = S.meet
    rel = Relation.from_predicate(len(S), lambda x, y: M[x][y] == y and M[y][x] == x)
    J = S.join
    assert rel == Relation.from_predicate(len(S), lambda x, y: J[x][y] == x and J[y][x] == y)
    return rel


@lru_cache(maxsize=4096)
def green_L(S: SkewLattice) -> Relation:
    M = S.meet
    rel = Relation.from_predicate(len(S), lambda x, y: M[x][y] == x and M[y][x] == y)
    J = S.join
    assert rel == Relation.from_predicate(len(S), lambda x, y: J[x][y] == y and J[y][x] == x)
    return rel


@lru_cache(maxsize=4096)
def green_D(S: SkewLattice) -> Relation:
    M = S.meet
    rel = Relation.from_predicate(len(S), lambda x, y: M[M[x][y]][x] == x and M[M[y][x]][y] == y)
    R, L = green_R(S), green_L(S)
    assert rel == R.compose(L) == L.compose(R)
    pre = natural_preorder(S)
    assert rel == pre & pre.inverse()
    return rel


@lru_cache(maxsize=4096)
def d_classes(S: SkewLattice) -> Partition:
    P = Partition.from_equivalence(green_D(S))
    M, J = S.meet, S.join
    for block in P.blocks:
        for x in block:
            for y in block:
                assert M[M[x][y]][x] == x and J[J[x][y]][x] == x, "D-class is not rectangular"
    return P


def is_congruence(S: SkewLattice, P: Partition) -> bool:
    M, J = S.meet, S.join
    b = P.block_of
    for block in P.blocks:
        x0 = block[0]
        for x in block[1:]:
            for y in S.elements:
                if b[M[x][y]] != b[M[x0][y]] or b[M[y][x]] != b[M[y][x0]]:
                    return False
                if b[J[x][y]] != b[J[x0][y]] or b[J[y][x]] != b[J[y][x0]]:
                    return False
    return True


def quotient(S: SkewLattice, P: Partition) -> QuotientAlgebra:
    if P.n != len(S):
        raise ValueError("partition size does not match the algebra")
    if not is_congruence(S, P):
        raise ValueError("partition is not a congruence")
    reps = [blk[0] for blk in P.blocks]
    b = P.block_of
    meet = tuple(tuple(b[S.meet[x][y]] for y in reps) for x in reps)
    join = tuple(tuple(b[S.join[x][y]] for y in reps) for x in reps)
    names = tuple("+".join(S.name(x) for x in blk) for blk in P.blocks)
    Q = SkewLattice(meet, join, names, S.validated)
    if P == d_classes(S):
        assert is_lattice(Q), "S/D must be a lattice"
    return QuotientAlgebra(Q, b, P)


def quotient_by(S: SkewLattice, rel: str) -> QuotientAlgebra:
    rels = {"D": green_D, "R": green_R, "L": green_L}
    if rel not in rels:
        raise ValueError(f"unknown relation {rel!r}; expected D, R or L")
    return quotient(S, Partition.from_equivalence(rels[rel](S)))


def handedness(S: SkewLattice) -> str:
    """``right``, ``left``, ``both`` (a lattice) or ``neither``."""
    n = len(S)
    M, J = S.meet, S.join
    pairs = [(x, y) for x in range(n) for y in range(n)]
    right = all(M[M[x][y]][x] == M[y][x] for x, y in pairs)
    left = all(M[M[x][y]][x] == M[x][y] for x, y in pairs)
    assert right == all(J[J[x][y]][x] == J[x][y] for x, y in pairs)
    assert left == all(J[J[x][y]][x] == J[y][x] for x, y in pairs)
    if right and left:
        assert is_lattice(S)
        return "both"
    return "right" if right else "left" if left else "neither"


@lru_cache(maxsize=4096)
def class_order(S: SkewLattice) -> ClassOrder:
    """Order on D-classes; B <= A iff y ⪯ x for y in B and x in A."""
    P = d_classes(S)
    pre = natural_preorder(S)
    reps = [blk[0] for blk in P.blocks]
    k = len(reps)
    order = Relation.from_predicate(k, lambda p, q: (reps[p], reps[q]) in pre)
    # any representative gives the same answer
    for p in range(k):
        for q in range(k):
            expect = (p, q) in order
            assert all(((y, x) in pre) == expect for y in P.blocks[p] for x in P.blocks[q])
    assert order.is_partial_order()
    Q = quotient(S, P).algebra
    assert order == Relation.from_predicate(k, lambda p, q: Q.meet[p][q] == p)
    return ClassOrder(P, order, order.covers())


@lru_cache(maxsize=4096)
def element_cover(S: SkewLattice) -> Relation:
    """``(x, y)`` in the result iff x ⊲ y: x < y with nothing strictly between."""
    return natural_leq(S).covers()


def _check_pair(S: SkewLattice, a: int, B: int) -> ClassOrder:
    co = class_order(S)
    if not 0 <= B < len(co.partition):
        raise ValueError(f"no D-class with index {B}")
    return co


def up_witness(S: SkewLattice, a: int, B: int) -> int:
    """Least b in class B with b <= a, for B strictly below the class of a."""
    co = _check_pair(S, a, B)
    A = co.partition.block_of[a]
    if not co.lt(B, A):
        raise ValueError("class B must lie strictly below the class of a")
    leq = natural_leq(S)
    for b in co.partition.blocks[B]:
        if (b, a) in leq:
            return b
    raise AssertionError("every element dominates some element of each lower class")


def down_witness(S: SkewLattice, b: int, A: int) -> int:
    """Least a in class A with b <= a, for A strictly above the class of b."""
    co = _check_pair(S, b, A)
    B = co.partition.block_of[b]
    if not co.lt(B, A):
        raise ValueError("class A must lie strictly above the class of b")
    leq = natural_leq(S)
    for a in co.partition.blocks[A]:
        if (b, a) in leq:
            return a
    raise AssertionError("every element lies below some element of each upper class")


@dataclass(frozen=True)
class DiamondSets:
    join_class: frozenset[int]
    meet_class: frozenset[int]
    commuting_joins: frozenset[int]
    commuting_meets: frozenset[int]


def diamond_sets(S: SkewLattice, A: int, B: int) -> DiamondSets:
    """Join and meet classes of the skew diamond spanned by classes A and B.

    The diamond is the subalgebra generated by A ∪ B; its join (meet) class
    is its intersection with the D-class of any a∨b (a∧b).  Also returns the
    sets built from commuting pairs only.
    """
    from .algebra import generated_subalgebra

    co = class_order(S)
    if co.comparable(A, B):
        raise ValueError("classes must be incomparable")
    P = co.partition
    blkA, blkB = P.blocks[A], P.blocks[B]
    gen = generated_subalgebra(S, blkA + blkB)
    a0, b0 = blkA[0], blkB[0]
    jc = frozenset(x for x in gen if P.block_of[x] == P.block_of[S.join[a0][b0]])
    mc = frozenset(x for x in gen if P.block_of[x] == P.block_of[S.meet[a0][b0]])
    cj = frozenset(S.join[a][b] for a in blkA for b in blkB if S.join[a][b] == S.join[b][a])
    cm = frozenset(S.meet[a][b] for a in blkA for b in blkB if S.meet[a][b] == S.meet[b][a])
    return DiamondSets(jc, mc, cj, cm)


def commuting_partner(S: SkewLattice, a: int, B: int) -> int:
    """Least b in class B commuting with a under both operations.

    Class B and the class of a must be incomparable.
    """
    co = _check_pair(S, a, B)
    A = co.partition.block_of[a]
    if co.comparable(A, B):
        raise ValueError("classes must be incomparable")
    M, J = S.meet, S.join
    for b in co.partition.blocks[B]:
        if J[a][b] == J[b][a] and M[a][b] == M[b][a]:
            return b
    raise AssertionError("no commuting partner in a skew diamond")


@dataclass(frozen=True)
class SecondDecomposition:
    right_factor: QuotientAlgebra  # S/L
    left_factor: QuotientAlgebra  # S/R
    fibred_product: SkewLattice
    pairs: tuple[tuple[int, int], ...]  # fibred-product elements as (S/L id, S/R id)
    witness: IsoWitness  # S -> fibred product


def check_second_decomposition(S: SkewLattice) -> SecondDecomposition:
    """Rebuild S as the fibred product of S/L and S/R over S/D."""
    from .algebra import subalgebra

    SL = quotient_by(S, "L")
    SR = quotient_by(S, "R")
    assert handedness(SL.algebra) in ("right", "both")
    assert handedness(SR.algebra) in ("left", "both")
    D = d_classes(S)
    # D-projection of an L-class (or R-class) is the D-class of any representative
    dl = [D.block_of[blk[0]] for blk in SL.partition.blocks]
    dr = [D.block_of[blk[0]] for blk in SR.partition.blocks]
    prod = direct_product(SL.algebra, SR.algebra)
    nr = len(SR.algebra)
    members = [p * nr + q for p in range(len(SL.algebra)) for q in range(nr) if dl[p] == dr[q]]
    F, emb = subalgebra(prod, members)
    F = SkewLattice(F.meet, F.join, None, F.validated)
    pairs = tuple(divmod(e, nr) for e in emb)
    index = {pq: i for i, pq in enumerate(pairs)}
    natural = [index[(SL.projection[x], SR.projection[x])] for x in S.elements]
    assert is_isomorphism(S, F, natural), "x -> (x/L, x/R) must be an isomorphism"
    assert find_isomorphism(S, F) is not None
    return SecondDecomposition(SL, SR, F, pairs, IsoWitness(tuple(natural)))


def hasse_dot(S: SkewLattice) -> str:
    """Admissible Hasse diagram in DOT.

    Solid edges run from each element to the elements covering it; dashed
    undirected edges trace a path through each D-class in id order.
    """
    cov = element_cover(S)
    P = d_classes(S)
    lines = ["// skewlat hasse v1", "digraph skewlat {"]
    for x in S.elements:
        label = S.name(x).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{x} [label="{label}"];')
    for x, y in sorted(cov.pairs()):
        lines.append(f"  n{x} -> n{y} [style=solid];")
    dashed = []
    for blk in P.blocks:
        dashed.extend(zip(blk, blk[1:]))
    for x, y in sorted(dashed):
        lines.append(f"  n{x} -> n{y} [dir=none, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
