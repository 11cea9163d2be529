"""Coset geometry between comparable D-classes.

For classes A > B, the A-cosets in B are the sets A∧b∧A (b ∈ B) and the
B-cosets in A are the sets B∨a∨B (a ∈ A).  Any B-coset in A and any
A-coset in B are matched by the natural order: x ↦ the unique y with
x ≥ y.

Indices follow the image-set definition.  ``[B:A]`` ("upper_in_lower") is
|a∧B∧a| for a ∈ A, the number of A-cosets in B, and ``[A:B]``
("lower_in_upper") is |b∨A∨b| for b ∈ B, the number of B-cosets in A.

Mixed products are rebuilt, for x ∈ A and y ∈ B, from the bijections and
the operations inside each class only:

    x∧y∧x = φ(x), φ the bijection B∨x∨B → A∧y∧A
    x∧y = φ(x) ∧ y,   y∧x = y ∧ φ(x)          (products inside B)
    y∨x∨y = φ⁻¹(y)
    x∨y = x ∨ φ⁻¹(y), y∨x = φ⁻¹(y) ∨ x        (products inside A)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import SkewLattice, subalgebra
from .relations import ClassPair, class_order, d_classes, natural_leq

SIDES = ("in_lower", "in_upper")
DIRECTIONS = ("upper_in_lower", "lower_in_upper")


@dataclass(frozen=True)
class Coset:
    classes: ClassPair
    side: str
    elements: frozenset[int]
    anchor: int

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


@dataclass(frozen=True)
class CosetBijection:
    source: Coset  # B-coset in A
    target: Coset  # A-coset in B
    mapping: tuple[tuple[int, int], ...]  # sorted (x, y) with x ≥ y

    def __call__(self, x: int) -> int:
        return dict(self.mapping)[x]

    def inverse(self, y: int) -> int:
        for a, b in self.mapping:
            if b == y:
                return a
        raise KeyError(y)

    @property
    def graph(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.mapping)


@dataclass(frozen=True)
class IndexValue:
    classes: ClassPair
    direction: str
    value: int


def comparable_pairs(S: SkewLattice) -> list[ClassPair]:
    co = class_order(S)
    k = len(co.partition)
    return [ClassPair(A, B) for A in range(k) for B in range(k) if co.lt(B, A)]


def _pair(S: SkewLattice, pair: ClassPair) -> tuple[tuple[int, ...], tuple[int, ...]]:
    co = class_order(S)
    k = len(co.partition)
    if not (0 <= pair.upper < k and 0 <= pair.lower < k):
        raise ValueError("class index out of range")
    if not co.lt(pair.lower, pair.upper):
        raise ValueError("classes are not comparable as upper > lower")
    return co.partition.blocks[pair.upper], co.partition.blocks[pair.lower]


def _coset_set(S: SkewLattice, A: tuple[int, ...], B: tuple[int, ...], anchor: int, side: str) -> frozenset[int]:
    M, J = S.meet, S.join
    if side == "in_lower":
        return frozenset(M[M[a][anchor]][a] for a in A)
    return frozenset(J[J[b][anchor]][b] for b in B)


def coset(S: SkewLattice, pair: ClassPair, anchor: int, side: str) -> Coset:
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    A, B = _pair(S, pair)
    home = B if side == "in_lower" else A
    if anchor not in home:
        raise ValueError("anchor is not in the class the coset lives in")
    elems = _coset_set(S, A, B, anchor, side)
    assert elems <= set(home)
    for other in home:
        c = _coset_set(S, A, B, other, side)
        assert c == elems or not (c & elems), "cosets must be equal or disjoint"
    return Coset(pair, side, elems, min(elems))


def image_set(S: SkewLattice, x: int, target_class: int) -> frozenset[int]:
    """x∧T∧x for T below the class of x, x∨T∨x for T above it."""
    co = class_order(S)
    P = co.partition
    X = P.block_of[x]
    T = P.blocks[target_class]
    leq = natural_leq(S)
    M, J = S.meet, S.join
    if co.lt(target_class, X):
        by_formula = frozenset(M[M[x][t]][x] for t in T)
        by_order = frozenset(t for t in T if (t, x) in leq)
    elif co.lt(X, target_class):
        by_formula = frozenset(J[J[x][t]][x] for t in T)
        by_order = frozenset(t for t in T if (x, t) in leq)
    else:
        raise ValueError("classes are not comparable")
    assert by_formula == by_order
    return by_formula


@lru_cache(maxsize=8192)
def coset_partition(S: SkewLattice, pair: ClassPair) -> tuple[tuple[Coset, ...], tuple[Coset, ...]]:
    """(A-cosets in B, B-cosets in A), each listed by least element."""
    A, B = _pair(S, pair)
    lower = {}
    for b in B:
        c = _coset_set(S, A, B, b, "in_lower")
        lower.setdefault(c, Coset(pair, "in_lower", c, min(c)))
    upper = {}
    for a in A:
        c = _coset_set(S, A, B, a, "in_upper")
        upper.setdefault(c, Coset(pair, "in_upper", c, min(c)))
    lows = tuple(sorted(lower.values(), key=lambda c: c.anchor))
    ups = tuple(sorted(upper.values(), key=lambda c: c.anchor))
    for cosets, cls in ((lows, B), (ups, A)):
        assert sorted(x for c in cosets for x in c.elements) == sorted(cls), "cosets must partition the class"
    for a in A:
        img = image_set(S, a, pair.lower)
        assert all(len(img & c.elements) == 1 for c in lows), "image sets are transversals"
    for b in B:
        img = image_set(S, b, pair.upper)
        assert all(len(img & c.elements) == 1 for c in ups), "image sets are transversals"
    return lows, ups


def coset_bijection(S: SkewLattice, upper_coset: Coset, lower_coset: Coset) -> CosetBijection:
    if upper_coset.classes != lower_coset.classes:
        raise ValueError("cosets belong to different class pairs")
    if upper_coset.side != "in_upper" or lower_coset.side != "in_lower":
        raise ValueError("need a coset in the upper class and one in the lower class")
    leq = natural_leq(S)
    mapping = []
    for x in sorted(upper_coset.elements):
        ys = [y for y in lower_coset.elements if (y, x) in leq]
        assert len(ys) == 1, "each element must dominate exactly one element of the opposite coset"
        mapping.append((x, ys[0]))
    assert sorted(y for _, y in mapping) == sorted(lower_coset.elements), "coset bijection must be onto"
    return CosetBijection(upper_coset, lower_coset, tuple(mapping))


@lru_cache(maxsize=8192)
def bijections(S: SkewLattice, pair: ClassPair) -> tuple[CosetBijection, ...]:
    lows, ups = coset_partition(S, pair)
    return tuple(coset_bijection(S, u, lo) for u in ups for lo in lows)


def _find(cosets: tuple[Coset, ...], x: int) -> Coset:
    for c in cosets:
        if x in c.elements:
            return c
    raise AssertionError("cosets cover the class")


def reconstruction_check(S: SkewLattice, pair: ClassPair) -> bool:
    """Rebuild every product between the two classes and compare with the tables."""
    A, B = _pair(S, pair)
    lows, ups = coset_partition(S, pair)
    M, J = S.meet, S.join
    # operations inside a single class, taken from its own subalgebra
    RA, embA = subalgebra(S, A)
    RB, embB = subalgebra(S, B)
    ia = {x: i for i, x in enumerate(embA)}
    ib = {x: i for i, x in enumerate(embB)}

    def meet_B(u: int, v: int) -> int:
        return embB[RB.meet[ib[u]][ib[v]]]

    def join_A(u: int, v: int) -> int:
        return embA[RA.join[ia[u]][ia[v]]]

    for x in A:
        for y in B:
            phi = coset_bijection(S, _find(ups, x), _find(lows, y))
            fx = phi(x)
            fy = phi.inverse(y)
            if (meet_B(fx, y), meet_B(y, fx)) != (M[x][y], M[y][x]):
                return False
            if (join_A(x, fy), join_A(fy, x)) != (J[x][y], J[y][x]):
                return False
    return True


def index(S: SkewLattice, pair: ClassPair, direction: str) -> IndexValue:
    A, B = _pair(S, pair)
    lows, ups = coset_partition(S, pair)
    if direction == "upper_in_lower":
        sizes = {len(image_set(S, a, pair.lower)) for a in A}
        count = len(lows)
    elif direction == "lower_in_upper":
        sizes = {len(image_set(S, b, pair.upper)) for b in B}
        count = len(ups)
    else:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    assert len(sizes) == 1, "image sets in one direction have equal size"
    value = sizes.pop()
    assert value == count, "index equals the number of cosets"
    return IndexValue(pair, direction, value)


def idx(S: SkewLattice, lower: int, upper: int) -> int:
    """[lower:upper] for classes lower < upper: |u∧lower∧u| for u in upper."""
    return index(S, ClassPair(upper, lower), "upper_in_lower").value


# ---- categorical structure --------------------------------------------------


@dataclass(frozen=True)
class CategoricalReport:
    categorical: bool
    strictly: bool
    failures: tuple  # (A, B, C, composite graph) with no matching A-C bijection
    empty: tuple  # (A, B, C, phi index, psi index) with an empty composite
    inclusion_only: tuple = field(default=())  # composites contained in, not equal to, a bijection


def class_chains(S: SkewLattice, length: int = 3) -> list[tuple[int, ...]]:
    """Strictly descending chains of classes A₁ > A₂ > ⋯ of the given length."""
    co = class_order(S)
    k = len(co.partition)
    below = [[q for q in range(k) if co.lt(q, p)] for p in range(k)]
    out = []

    def walk(path: list[int]) -> None:
        if len(path) == length:
            out.append(tuple(path))
            return
        for q in below[path[-1]]:
            walk(path + [q])

    for p in range(k):
        walk([p])
    return sorted(out)


@lru_cache(maxsize=4096)
def categorical_report(S: SkewLattice) -> CategoricalReport:
    failures = []
    empty = []
    inclusion = []
    for A, B, C in class_chains(S, 3):
        ab = bijections(S, ClassPair(A, B))
        bc = bijections(S, ClassPair(B, C))
        ac = [f.graph for f in bijections(S, ClassPair(A, C))]
        for i, phi in enumerate(ab):
            for j, psi in enumerate(bc):
                link = phi.target.elements & psi.source.elements
                comp = frozenset((x, psi(y)) for x, y in phi.mapping if y in link)
                if not comp:
                    empty.append((A, B, C, i, j))
                    continue
                if comp not in ac:
                    failures.append((A, B, C, tuple(sorted(comp))))
                    if any(comp <= g for g in ac):
                        inclusion.append((A, B, C, tuple(sorted(comp))))
    cat = not failures
    return CategoricalReport(cat, cat and not empty, tuple(failures), tuple(empty), tuple(inclusion))


def is_categorical(S: SkewLattice) -> bool:
    return categorical_report(S).categorical


def lstrictly_condition(S: SkewLattice) -> bool:
    """Every x↑* is a normal subalgebra and every x↓* a conormal one."""
    from .classify import identity_witness

    leq = natural_leq(S)
    for x in S.elements:
        up, _ = subalgebra(S, leq.image(x))
        down, _ = subalgebra(S, leq.preimage(x))
        if identity_witness(up, "normal") is not None:
            return False
        if identity_witness(down, "conormal") is not None:
            return False
    return True


def is_strictly_categorical(S: SkewLattice) -> bool:
    strict = categorical_report(S).strictly
    assert strict == lstrictly_condition(S), "strict categoricity disagrees with the x↑*/x↓* test"
    return strict


def check_order_eq_cosets(S: SkewLattice, pair: ClassPair) -> bool:
    if not is_categorical(S):
        raise ValueError("requires a categorical skew lattice")
    A, B = _pair(S, pair)
    leq = natural_leq(S)
    union = frozenset().union(*(f.graph for f in bijections(S, pair)))
    return union == frozenset((x, y) for x in A for y in B if (y, x) in leq)


@dataclass(frozen=True)
class CountingReport:
    ok: bool
    windows: tuple  # (A, B, C, [C:A], [C:B], [B:A]) for every A > B > C from the chain
    strict: bool
    product_ok: bool | None
    divisibility_ok: bool | None


def counting_check(S: SkewLattice, chain: list[int]) -> CountingReport:
    """Index inequalities along a descending chain of class ids."""
    co = class_order(S)
    if len(set(chain)) != len(chain) or any(not co.lt(chain[i + 1], chain[i]) for i in range(len(chain) - 1)):
        raise ValueError("classes must form a strictly descending chain")
    strict = is_strictly_categorical(S)
    windows = []
    ok = True
    for i, j, k in itertools.combinations(range(len(chain)), 3):
        A, B, C = chain[i], chain[j], chain[k]
        ca, cb, ba = idx(S, C, A), idx(S, C, B), idx(S, B, A)
        windows.append((A, B, C, ca, cb, ba))
        ok = ok and ca <= cb * ba
        if strict:
            ok = ok and ca == cb * ba
    product_ok = divisibility_ok = None
    if strict and len(chain) >= 2:
        bottom = chain[-1]
        prod = 1
        for i in range(len(chain) - 1):
            prod *= idx(S, chain[i + 1], chain[i])
        product_ok = idx(S, bottom, chain[0]) == prod
        # e_i = [C:A_i]; for the bottom class itself the index is 1
        e = [idx(S, bottom, A) if A != bottom else 1 for A in chain]
        divisibility_ok = all(e[i] % e[i + 1] == 0 for i in range(len(e) - 1))
        ok = ok and product_ok and divisibility_ok
    return CountingReport(ok, tuple(windows), strict, product_ok, divisibility_ok)


# ---- skew ideals against cosets ---------------------------------------------


@dataclass(frozen=True)
class IdealCosetReport:
    ok: bool
    meets_cosets: bool
    primitive: bool
    failures: tuple


def ideal_coset_checks(S: SkewLattice) -> IdealCosetReport:
    co = class_order(S)
    P = co.partition
    leq = natural_leq(S)
    failures = []
    for x in S.elements:
        for y in leq.preimage(x):
            X, Y = P.block_of[x], P.block_of[y]
            if X == Y:
                continue
            lows, ups = coset_partition(S, ClassPair(X, Y))
            down = leq.preimage(x)
            up = leq.image(y)
            if not all(c.elements & down for c in lows):
                failures.append(("down_meets_cosets", x, y))
            if not all(c.elements & up for c in ups):
                failures.append(("up_meets_cosets", x, y))
    meets = not failures
    # a∪B for a comparable pair is a primitive subalgebra
    for pair in comparable_pairs(S):
        A, B = P.blocks[pair.upper], P.blocks[pair.lower]
        T, emb = subalgebra(S, A + B)
        tleq = natural_leq(T)
        tco = class_order(T)
        assert len(tco.partition) == 2
        inv = {e: i for i, e in enumerate(emb)}
        tA = tco.partition.block_of[inv[A[0]]]
        tB = tco.partition.block_of[inv[B[0]]]
        for a in A:
            lhs = tleq.preimage(inv[a])
            rhs = image_set(T, inv[a], tB) | {inv[a]}
            if lhs != rhs:
                failures.append(("primitive_down", a, pair))
        for b in B:
            lhs = tleq.image(inv[b])
            rhs = image_set(T, inv[b], tA) | {inv[b]}
            if lhs != rhs:
                failures.append(("primitive_up", b, pair))
    if len(P) == 2 and comparable_pairs(S):
        prim = not any(f[0].startswith("primitive") for f in failures)
    else:
        prim = True
    return IdealCosetReport(not failures, meets, prim, tuple(failures))


def descending_cover_chains(S: SkewLattice, x: int) -> list[tuple[int, ...]]:
    """Maximal chains x = x₀ ⊳ x₁ ⊳ ⋯ ⊳ xₙ in the covering relation."""
    from .relations import element_cover

    cov = element_cover(S)
    out = []

    def walk(path: list[int]) -> None:
        below = sorted(cov.preimage(path[-1]))
        if not below:
            out.append(tuple(path))
            return
        for y in below:
            walk(path + [y])

    walk([x])
    return out


@dataclass(frozen=True)
class ChainBound:
    chain: tuple[int, ...]
    local_size: int  # |x↓*| restricted to the classes on the chain
    bound: int
    strict_bound: int | None


def index_ideal_bounds(S: SkewLattice, x: int) -> list[ChainBound]:
    """Index bounds on x↓* along each maximal descending covering chain.

    The bound at level k multiplies the image-set sizes of consecutive
    chain elements, ``[D_{x_{i+1}} : D_{x_i}]``, and is compared with the
    part of x↓* lying in the classes the chain passes through.
    """
    P = d_classes(S)
    leq = natural_leq(S)
    down = leq.preimage(x)
    strict = is_strictly_categorical(S)
    out = []
    for ch in descending_cover_chains(S, x):
        classes = {P.block_of[c] for c in ch}
        local = sum(1 for y in down if P.block_of[y] in classes)
        total, prod = 1, 1
        for i in range(len(ch) - 1):
            prod *= idx(S, P.block_of[ch[i + 1]], P.block_of[ch[i]])
            total += prod
        sb = None
        if strict:
            sb = 1 + sum(idx(S, P.block_of[c], P.block_of[x]) for c in ch[1:])
        out.append(ChainBound(ch, local, total, sb))
    return out


def index_ideal_bound_check(S: SkewLattice, x: int) -> bool:
    return all(b.local_size <= b.bound and (b.strict_bound is None or b.local_size <= b.strict_bound) for b in index_ideal_bounds(S, x))
