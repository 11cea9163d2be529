"""Variety predicates and structure extraction.

Every identity is decided by sweeping all tuples in lexicographic order,
so a failing property always carries the least violating tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .algebra import (
    IsoWitness,
    SkewLattice,
    direct_product,
    find_isomorphism,
    is_closed,
    is_lattice,
    subalgebra,
)
from .relations import class_order, d_classes, green_D, natural_leq, quotient

PROPERTY_NAMES = (
    "symmetric",
    "normal",
    "conormal",
    "binormal",
    "distributive",
    "quasi_distributive",
    "meet_distributive",
    "rectangular",
    "skew_chain",
    "right_handed",
    "left_handed",
    "lattice",
)


def _sweep(S: SkewLattice, arity: int, ok) -> tuple[int, ...] | None:
    for t in itertools.product(S.elements, repeat=arity):
        if not ok(*t):
            return t
    return None


def identity_witness(S: SkewLattice, name: str) -> tuple[int, ...] | None:
    """Least tuple violating the named identity, or None if it holds."""
    M, J = S.meet, S.join
    if name == "normal":
        return _sweep(S, 4, lambda x, y, z, w: M[M[M[x][y]][z]][w] == M[M[M[x][z]][y]][w])
    if name == "conormal":
        return _sweep(S, 4, lambda x, y, z, w: J[J[J[x][y]][z]][w] == J[J[J[x][z]][y]][w])
    if name == "symmetric":
        return _sweep(S, 2, lambda x, y: (M[x][y] == M[y][x]) == (J[x][y] == J[y][x]))
    if name == "distributive":
        return _sweep(
            S,
            3,
            lambda x, y, z: M[M[x][J[y][z]]][x] == J[M[M[x][y]][x]][M[M[x][z]][x]]
            and J[J[x][M[y][z]]][x] == M[J[J[x][y]][x]][J[J[x][z]][x]],
        )
    if name == "meet_distributive":
        return _sweep(S, 3, lambda x, y, z: M[M[x][J[y][z]]][x] == J[M[M[x][y]][x]][M[M[x][z]][x]])
    if name == "right_handed":
        return _sweep(S, 2, lambda x, y: M[M[x][y]][x] == M[y][x])
    if name == "left_handed":
        return _sweep(S, 2, lambda x, y: M[M[x][y]][x] == M[x][y])
    if name == "lattice":
        return _sweep(S, 2, lambda x, y: M[x][y] == M[y][x])
    raise KeyError(name)


@dataclass(frozen=True)
class PropertyReport:
    values: dict  # name -> (bool, witness tuple or None)

    def __getitem__(self, name: str) -> tuple[bool, tuple[int, ...] | None]:
        return self.values[name]

    def holds(self, name: str) -> bool:
        return self.values[name][0]

    def as_dict(self) -> dict:
        return {k: {"holds": v[0], "witness": list(v[1]) if v[1] is not None else None} for k, v in sorted(self.values.items())}


@lru_cache(maxsize=4096)
def properties(S: SkewLattice) -> PropertyReport:
    vals: dict[str, tuple[bool, Optional[tuple[int, ...]]]] = {}
    for name in ("symmetric", "normal", "conormal", "distributive", "meet_distributive", "right_handed", "left_handed", "lattice"):
        w = identity_witness(S, name)
        vals[name] = (w is None, w)
    if not vals["normal"][0]:
        vals["binormal"] = (False, vals["normal"][1])
    else:
        vals["binormal"] = vals["conormal"]
    Q = quotient(S, d_classes(S))
    reps = [blk[0] for blk in Q.partition.blocks]
    qd = identity_witness(Q.algebra, "distributive")
    vals["quasi_distributive"] = (qd is None, None if qd is None else tuple(reps[p] for p in qd))
    D = green_D(S)
    rect = next(((x, y) for x in S.elements for y in S.elements if (x, y) not in D), None)
    vals["rectangular"] = (rect is None, rect)
    co = class_order(S)
    k = len(co.partition)
    inc = next(((reps[p], reps[q]) for p in range(k) for q in range(k) if not co.comparable(p, q)), None)
    vals["skew_chain"] = (inc is None, inc)
    return PropertyReport(vals)


# ---- center -----------------------------------------------------------------


@dataclass(frozen=True)
class Center:
    elements: frozenset[int]
    empty: bool
    is_subalgebra: bool
    is_normal: bool  # as a subalgebra; False when not closed
    ideal_image: bool | None  # its D-image is a lattice ideal of S/D (normal S only)


def center(S: SkewLattice) -> Center:
    """Union of the singleton D-classes, with the facts stated about it."""
    P = d_classes(S)
    Z = frozenset(b[0] for b in P.blocks if len(b) == 1)
    closed = bool(Z) and is_closed(S, Z)
    normal = closed and identity_witness(subalgebra(S, Z)[0], "normal") is None
    ideal_image = None
    if Z and properties(S).holds("normal"):
        from .ideals import is_ideal

        Q = quotient(S, P)
        image = frozenset(Q.projection[z] for z in Z)
        ideal_image = closed and is_ideal(Q.algebra, image)
    if Z:
        assert closed and normal, "a nonempty center is a normal subalgebra"
        assert ideal_image in (None, True)
    return Center(Z, not Z, closed, normal, ideal_image)


# ---- lattice sections -------------------------------------------------------


@lru_cache(maxsize=4096)
def lattice_sections(S: SkewLattice) -> tuple[frozenset[int], ...]:
    P = d_classes(S)
    Q = quotient(S, P).algebra
    out = []
    for pick in itertools.product(*P.blocks):
        if is_closed(S, pick):
            T, _ = subalgebra(S, pick)
            assert is_lattice(T)
            assert find_isomorphism(T, Q) is not None, "a lattice section is a copy of S/D"
            out.append(frozenset(pick))
    return tuple(sorted(out, key=sorted))


def top_section_ok(S: SkewLattice) -> bool | None:
    """For normal S with a top class: m↓* is a lattice section for every m in it.

    None when the hypothesis does not apply.
    """
    if not properties(S).holds("normal"):
        return None
    co = class_order(S)
    k = len(co.partition)
    tops = [p for p in range(k) if all((q, p) in co.order for q in range(k))]
    if not tops:
        return None
    leq = natural_leq(S)
    sections = set(lattice_sections(S))
    return all(leq.preimage(m) in sections for m in co.partition.blocks[tops[0]])


# ---- skew Boolean algebras --------------------------------------------------


def find_zero(S: SkewLattice) -> int | None:
    """The singleton bottom class {0} with 0∧x = x∧0 = 0 for all x."""
    co = class_order(S)
    P = co.partition
    k = len(P)
    bottoms = [p for p in range(k) if all((p, q) in co.order for q in range(k))]
    if not bottoms or len(P.blocks[bottoms[0]]) != 1:
        return None
    z = P.blocks[bottoms[0]][0]
    if all(S.meet[z][x] == z == S.meet[x][z] for x in S.elements):
        return z
    return None


@dataclass(frozen=True)
class SkewBooleanStructure:
    zero: int
    difference: tuple[tuple[int, ...], ...]


def _difference_solutions(S: SkewLattice, zero: int, x: int, y: int) -> list[int]:
    M, J = S.meet, S.join
    u = M[M[x][y]][x]
    return [z for z in S.elements if J[u][z] == x and M[u][z] == zero]


def skew_boolean_analysis(S: SkewLattice) -> tuple[SkewBooleanStructure | None, str | None]:
    """The structure, or None with the reason it does not exist."""
    zero = find_zero(S)
    if zero is None:
        return None, "no zero"
    props = properties(S)
    for name in ("distributive", "normal", "symmetric"):
        if not props.holds(name):
            return None, f"not {name}"
    n = len(S)
    table = [[-1] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            sols = _difference_solutions(S, zero, x, y)
            if not sols:
                return None, f"no difference for ({S.name(x)}, {S.name(y)})"
            if len(sols) > 1:
                return None, f"several differences for ({S.name(x)}, {S.name(y)}): {S.fmt(sols)}"
            table[x][y] = sols[0]
    return SkewBooleanStructure(zero, tuple(tuple(r) for r in table)), None


def skew_boolean_structure(S: SkewLattice) -> SkewBooleanStructure | None:
    return skew_boolean_analysis(S)[0]


def _is_boolean_lattice(T: SkewLattice) -> bool:
    if not is_lattice(T) or identity_witness(T, "distributive") is not None:
        return False
    leq = natural_leq(T)
    n = len(T)
    bottom = [x for x in range(n) if len(leq.preimage(x)) == 1]
    top = [x for x in range(n) if len(leq.image(x)) == 1]
    if len(bottom) != 1 or len(top) != 1:
        return False
    b, t = bottom[0], top[0]
    return all(any(T.meet[x][y] == b and T.join[x][y] == t for y in range(n)) for x in range(n))


def leech_characterization(S: SkewLattice) -> bool:
    """Symmetric, with a zero, and every x↓* a Boolean lattice."""
    if find_zero(S) is None or not properties(S).holds("symmetric"):
        return False
    leq = natural_leq(S)
    return all(_is_boolean_lattice(subalgebra(S, leq.preimage(x))[0]) for x in S.elements)


# ---- Schein factorization ---------------------------------------------------


@dataclass(frozen=True)
class ScheinFactors:
    lattice: SkewLattice
    rectangular: SkewLattice
    witness: IsoWitness  # S -> lattice × rectangular


def schein_factorization(S: SkewLattice) -> ScheinFactors | None:
    if not properties(S).holds("binormal"):
        raise ValueError("Schein factorization needs a binormal skew lattice")
    P = d_classes(S)
    L = quotient(S, P).algebra
    L = SkewLattice(L.meet, L.join, L.names, True)
    for blk in P.blocks:
        R, _ = subalgebra(S, blk)
        f = find_isomorphism(S, direct_product(L, R))
        if f is not None:
            return ScheinFactors(L, R, f)
    return None


# ---- normality cross-checks -------------------------------------------------


@dataclass(frozen=True)
class NormalityReport:
    normal: bool
    local_lattices: bool  # every x↓* commutative
    single_coset: bool  # B is one A-coset for every pair A > B
    quasi_distributive: bool
    local_distributive: bool  # every x↓* distributive
    distributive: bool

    @property
    def consistent(self) -> bool:
        if not self.normal == self.local_lattices == self.single_coset:
            return False
        if self.normal:
            return self.quasi_distributive == self.local_distributive == self.distributive
        return True


def normality_report(S: SkewLattice) -> NormalityReport:
    from .cosets import comparable_pairs, coset_partition

    props = properties(S)
    leq = natural_leq(S)
    downs = [subalgebra(S, leq.preimage(x))[0] for x in S.elements]
    local_lat = all(is_lattice(T) for T in downs)
    local_dist = all(identity_witness(T, "distributive") is None for T in downs)
    single = all(len(coset_partition(S, p)[0]) == 1 for p in comparable_pairs(S))
    return NormalityReport(
        props.holds("normal"),
        local_lat,
        single,
        props.holds("quasi_distributive"),
        local_dist,
        props.holds("distributive"),
    )


def normality_cross_checks(S: SkewLattice) -> bool:
    return normality_report(S).consistent
