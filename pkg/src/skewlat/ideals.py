"""Ideals, filters, skew ideals and skew filters.

Ideals are ∨-closed and ⪯-down-closed; skew ideals are ∨-closed and
≤-down-closed.  Every filter-side operation is the ideal-side one applied
to the dual algebra, where ∧ and ∨ swap and both orders reverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .algebra import SkewLattice, dualize
from .relations import Relation, d_classes, element_cover, natural_leq, natural_preorder, quotient

KINDS = ("ideal", "filter", "skew_ideal", "skew_filter")

_dual = lru_cache(maxsize=4096)(dualize)


class EmptySubsetError(ValueError):
    pass


@dataclass(frozen=True)
class IdealSet:
    kind: str
    elements: frozenset[int]
    generators: frozenset[int] | None = None

    def __post_init__(self) -> None:
        assert self.kind in KINDS
        assert self.elements, "ideal-type sets are nonempty"

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


@dataclass(frozen=True)
class IdealLattice:
    """Members ordered by (size, elements); ``meet[i][j]`` is None when the
    intersection is empty (possible for skew ideals, never for ideals)."""

    kind: str
    members: tuple[IdealSet, ...]
    order: Relation
    meet: tuple[tuple[Optional[int], ...], ...]
    join: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)

    def sets(self) -> list[frozenset[int]]:
        return [I.elements for I in self.members]

    def index(self, X: Iterable[int]) -> int | None:
        X = frozenset(X)
        for i, I in enumerate(self.members):
            if I.elements == X:
                return i
        return None


def _subset(S: SkewLattice, X: Iterable[int]) -> frozenset[int]:
    X = frozenset(X)
    if not X:
        raise EmptySubsetError("ideal-type sets must be nonempty")
    if any(not 0 <= x < len(S) for x in X):
        raise ValueError("element id out of range")
    return X


def _join_closed(S: SkewLattice, X: frozenset[int]) -> bool:
    J = S.join
    return all(J[x][y] in X for x in X for y in X)


def _meet_closed(S: SkewLattice, X: frozenset[int]) -> bool:
    M = S.meet
    return all(M[x][y] in X for x in X for y in X)


# ---- ideals -----------------------------------------------------------------


def ideal_criteria(S: SkewLattice, X: Iterable[int]) -> dict[str, bool]:
    """Evaluate the four equivalent ideal definitions on X.

    ``preorder``, ``one_sided`` and ``sandwich`` are the three criteria for
    a ∨-closed set (each also requires ∨-closure here); ``weak`` is the
    biconditional a, b ∈ X ⇔ a∨b∨a ∈ X, which needs no closure assumption.
    """
    X = _subset(S, X)
    M, J = S.meet, S.join
    n = len(S)
    pre = natural_preorder(S)
    closed = _join_closed(S, X)
    preorder = closed and all(x in X for y in X for x in pre.preimage(y))
    one_sided = closed and all(M[y][x] in X and M[x][y] in X for y in X for x in range(n))
    sandwich = closed and all(M[M[x][y]][x] in X for y in X for x in range(n))
    weak = all(((a in X) and (b in X)) == (J[J[a][b]][a] in X) for a in range(n) for b in range(n))
    return {"preorder": preorder, "one_sided": one_sided, "sandwich": sandwich, "weak": weak}


def is_ideal(S: SkewLattice, X: Iterable[int]) -> bool:
    crit = ideal_criteria(S, X)
    assert len(set(crit.values())) == 1, f"ideal characterizations disagree: {crit}"
    return crit["preorder"]


def filter_criteria(S: SkewLattice, X: Iterable[int]) -> dict[str, bool]:
    return ideal_criteria(_dual(S), X)


def is_filter(S: SkewLattice, X: Iterable[int]) -> bool:
    return is_ideal(_dual(S), X)


# ---- skew ideals ------------------------------------------------------------


def skew_ideal_criteria(S: SkewLattice, X: Iterable[int]) -> dict[str, bool]:
    X = _subset(S, X)
    M = S.meet
    leq = natural_leq(S)
    closed = _join_closed(S, X)
    order = closed and all(x in X for y in X for x in leq.preimage(y))
    sandwich = closed and all(M[M[y][x]][y] in X for y in X for x in S.elements)
    return {"order": order, "sandwich": sandwich}


def is_skew_ideal(S: SkewLattice, X: Iterable[int]) -> bool:
    X = _subset(S, X)
    crit = skew_ideal_criteria(S, X)
    assert crit["order"] == crit["sandwich"], f"skew ideal characterizations disagree: {crit}"
    if crit["order"]:
        assert _meet_closed(S, X), "skew ideals are subalgebras"
    return crit["order"]


def is_skew_filter(S: SkewLattice, X: Iterable[int]) -> bool:
    return is_skew_ideal(_dual(S), X)


# ---- generation -------------------------------------------------------------


def _closure(S: SkewLattice, X: frozenset[int], below: Relation) -> frozenset[int]:
    J = S.join
    out = set(X)
    while True:
        new = set()
        for y in out:
            new |= below.preimage(y)
        for x in out:
            for y in out:
                new.add(J[x][y])
        if new <= out:
            return frozenset(out)
        out |= new


def _class_ideal(S: SkewLattice, X: frozenset[int]) -> frozenset[int]:
    """Union of the D-classes in the S/D lattice ideal generated by X/D."""
    Q = quotient(S, d_classes(S))
    L = Q.algebra
    gen = {Q.projection[x] for x in X}
    top = next(iter(gen))
    for p in gen:
        top = L.join[top][p]
    P = Q.partition
    return frozenset(x for p in L.elements if L.meet[p][top] == p for x in P.blocks[p])


def antecip_union(S: SkewLattice, X: Iterable[int]) -> frozenset[int]:
    """⋃{D_x↓ : x ∈ X}, the union of principal ideals of the generators' classes."""
    D = d_classes(S)
    pre = natural_preorder(S)
    out: set[int] = set()
    for x in X:
        for y in D.block(x):
            out |= pre.preimage(y)
    return frozenset(out)


def generated_ideal(S: SkewLattice, X: Iterable[int]) -> IdealSet:
    X = _subset(S, X)
    I = _closure(S, X, natural_preorder(S))
    # the union of generator down-sets is always contained; equality needs
    # the ∨-closure of the classes, i.e. the lattice ideal of S/D
    assert antecip_union(S, X) <= I
    assert I == _class_ideal(S, X)
    if len(X) == 1:
        assert I == antecip_union(S, X)
    return IdealSet("ideal", I, X)


def generated_filter(S: SkewLattice, X: Iterable[int]) -> IdealSet:
    I = generated_ideal(_dual(S), X)
    return IdealSet("filter", I.elements, I.generators)


def skewdi_formula(S: SkewLattice, X: Iterable[int]) -> frozenset[int]:
    """All finite joins x₁∨⋯∨xₙ with each xᵢ below some member of X."""
    leq = natural_leq(S)
    down: set[int] = set()
    for y in X:
        down |= leq.preimage(y)
    J = S.join
    out = set(down)
    frontier = set(down)
    while frontier:
        new = {J[a][b] for a in out for b in frontier} | {J[b][a] for a in out for b in frontier}
        frontier = new - out
        out |= frontier
    return frozenset(out)


def generated_skew_ideal(S: SkewLattice, X: Iterable[int]) -> IdealSet:
    X = _subset(S, X)
    I = _closure(S, X, natural_leq(S))
    # the finite-join description needs ∧ to distribute over ∨ from both
    # sides; the sandwich identity alone is too weak (NC5R satisfies it)
    if is_one_sided_meet_distributive(S):
        assert I == skewdi_formula(S, X), "finite-join formula disagrees with the closure"
    return IdealSet("skew_ideal", I, X)


def generated_skew_filter(S: SkewLattice, X: Iterable[int]) -> IdealSet:
    I = generated_skew_ideal(_dual(S), X)
    return IdealSet("skew_filter", I.elements, I.generators)


# ---- principal sets ---------------------------------------------------------


def principal_ideal(S: SkewLattice, x: int) -> IdealSet:
    M = S.meet
    n = len(S)
    sxs = frozenset(M[M[s][x]][t] for s in range(n) for t in range(n))
    assert sxs == natural_preorder(S).preimage(x)
    gen = generated_ideal(S, [x])
    assert sxs == gen.elements
    return gen


def principal_skew_ideal(S: SkewLattice, x: int) -> IdealSet:
    M = S.meet
    xsx = frozenset(M[M[x][s]][x] for s in S.elements)
    assert xsx == natural_leq(S).preimage(x)
    gen = generated_skew_ideal(S, [x])
    assert xsx == gen.elements
    return gen


def principal_filter(S: SkewLattice, x: int) -> IdealSet:
    I = principal_ideal(_dual(S), x)
    return IdealSet("filter", I.elements, I.generators)


def principal_skew_filter(S: SkewLattice, x: int) -> IdealSet:
    I = principal_skew_ideal(_dual(S), x)
    return IdealSet("skew_filter", I.elements, I.generators)


def skew_ideal_stages(S: SkewLattice, x: int) -> list[frozenset[int]]:
    """Stages x↓*₀ = {x}, x↓*ₙ₊₁ = ⋃{z∧D_y∧z : z ∈ x↓*ₙ, y ⊲ z}, until empty."""
    cov = element_cover(S)
    D = d_classes(S)
    M = S.meet
    stages = [frozenset([x])]
    while True:
        nxt = set()
        for z in stages[-1]:
            for y in cov.preimage(z):
                nxt.update(M[M[z][d]][z] for d in D.block(y))
        if not nxt:
            return stages
        stages.append(frozenset(nxt))


def recursive_principal_skew_ideal(S: SkewLattice, x: int) -> IdealSet:
    union = frozenset().union(*skew_ideal_stages(S, x))
    assert union == principal_skew_ideal(S, x).elements
    return IdealSet("skew_ideal", union, frozenset([x]))


def is_meet_distributive(S: SkewLattice) -> bool:
    """x∧(y∨z)∧x = (x∧y∧x)∨(x∧z∧x) for all x, y, z."""
    return meet_distributive_witness(S) is None


def is_one_sided_meet_distributive(S: SkewLattice) -> bool:
    """x∧(y∨z) = (x∧y)∨(x∧z) and (y∨z)∧x = (y∧x)∨(z∧x) for all x, y, z."""
    return _one_sided_cached(S)


@lru_cache(maxsize=4096)
def _one_sided_cached(S: SkewLattice) -> bool:
    M, J = S.meet, S.join
    return all(
        M[x][J[y][z]] == J[M[x][y]][M[x][z]] and M[J[y][z]][x] == J[M[y][x]][M[z][x]]
        for x, y, z in itertools.product(S.elements, repeat=3)
    )


def meet_distributive_witness(S: SkewLattice) -> tuple[int, int, int] | None:
    M, J = S.meet, S.join
    for x, y, z in itertools.product(S.elements, repeat=3):
        if M[M[x][J[y][z]]][x] != J[M[M[x][y]][x]][M[M[x][z]][x]]:
            return (x, y, z)
    return None


# ---- enumeration ------------------------------------------------------------


def down_sets(leq: Relation) -> Iterator[frozenset[int]]:
    """Every nonempty down-set of a partial order, as frozensets.

    Elements are decided from the top of a linear extension down; an
    element is forced in as soon as something above it is in.
    """
    n = leq.n
    ext = sorted(range(n), key=lambda x: (-len(leq.preimage(x)), x))
    above = [leq.image(x) - {x} for x in range(n)]
    chosen: set[int] = set()

    def rec(k: int) -> Iterator[frozenset[int]]:
        if k == n:
            if chosen:
                yield frozenset(chosen)
            return
        x = ext[k]
        if above[x] & chosen:
            chosen.add(x)
            yield from rec(k + 1)
            chosen.discard(x)
            return
        yield from rec(k + 1)
        chosen.add(x)
        yield from rec(k + 1)
        chosen.discard(x)

    yield from rec(0)


def _lattice(kind: str, sets: list[frozenset[int]], join_of) -> IdealLattice:
    sets = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    where = {s: i for i, s in enumerate(sets)}
    k = len(sets)
    order = Relation.from_predicate(k, lambda i, j: sets[i] <= sets[j])
    meet = tuple(tuple(where.get(sets[i] & sets[j]) if sets[i] & sets[j] else None for j in range(k)) for i in range(k))
    join = tuple(tuple(where[join_of(sets[i] | sets[j])] for j in range(k)) for i in range(k))
    members = tuple(IdealSet(kind, s) for s in sets)
    return IdealLattice(kind, members, order, meet, join)


@lru_cache(maxsize=1024)
def enumerate_ideals(S: SkewLattice) -> IdealLattice:
    Q = quotient(S, d_classes(S))
    L = Q.algebra
    Lleq = natural_leq(L)
    P = Q.partition
    lattice_ideals = [I for I in down_sets(Lleq) if _join_closed(L, I)]
    sets = [frozenset(x for p in I for x in P.blocks[p]) for I in lattice_ideals]
    for I in sets:
        assert is_ideal(S, I)
    # every union of D-classes is an ideal exactly when its image is a lattice ideal
    k = len(P)
    lattice_set = set(lattice_ideals)
    for mask in range(1, 1 << k):
        classes = frozenset(p for p in range(k) if mask >> p & 1)
        union = frozenset(x for p in classes for x in P.blocks[p])
        assert is_ideal(S, union) == (classes in lattice_set)
    result = _lattice("ideal", sets, lambda U: generated_ideal(S, U).elements)
    # the inclusion orders agree under I -> I/D
    proj = [frozenset(Q.projection[x] for x in I.elements) for I in result.members]
    assert all((proj[i] <= proj[j]) == ((i, j) in result.order) for i in range(len(proj)) for j in range(len(proj)))
    for i in range(len(result)):
        for j in range(len(result)):
            assert result.meet[i][j] is not None, "ideals of a finite algebra always intersect"
    return result


@lru_cache(maxsize=1024)
def enumerate_filters(S: SkewLattice) -> IdealLattice:
    lat = enumerate_ideals(_dual(S))
    return IdealLattice(
        "filter",
        tuple(IdealSet("filter", I.elements) for I in lat.members),
        lat.order,
        lat.meet,
        lat.join,
    )


@lru_cache(maxsize=1024)
def enumerate_skew_ideals(S: SkewLattice) -> IdealLattice:
    sets = [I for I in down_sets(natural_leq(S)) if _join_closed(S, I)]
    for I in sets:
        assert is_skew_ideal(S, I)
    lat = _lattice("skew_ideal", sets, lambda U: generated_skew_ideal(S, U).elements)
    for i in range(len(lat)):
        for j in range(len(lat)):
            m = lat.meet[i][j]
            if m is not None:
                assert lat.members[m].elements == lat.members[i].elements & lat.members[j].elements
    return lat


@lru_cache(maxsize=1024)
def enumerate_skew_filters(S: SkewLattice) -> IdealLattice:
    lat = enumerate_skew_ideals(_dual(S))
    return IdealLattice(
        "skew_filter",
        tuple(IdealSet("skew_filter", I.elements) for I in lat.members),
        lat.order,
        lat.meet,
        lat.join,
    )


def empty_intersections(lat: IdealLattice) -> list[tuple[int, int]]:
    """Pairs of members whose intersection is empty (so not a lattice meet)."""
    return [(i, j) for i in range(len(lat)) for j in range(i + 1, len(lat)) if lat.meet[i][j] is None]


def family(S: SkewLattice, kind: str) -> IdealLattice:
    return {
        "ideal": enumerate_ideals,
        "filter": enumerate_filters,
        "skew_ideal": enumerate_skew_ideals,
        "skew_filter": enumerate_skew_filters,
    }[kind](S)
