"""Run every structural invariant on one algebra and collect the outcome.

Each check returns ``None`` when it passes or a short detail string when
it fails.  Checks tied to a specific quoted claim about NC5L return a
``paper-claim mismatch`` status instead of a failure, as do the two
general statements that the tables refute (see ``MISMATCH_CHECKS``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import classify, cosets, ideals
from .algebra import SkewLattice, builtin, dualize, find_isomorphism, is_closed, is_lattice
from .relations import (
    class_order,
    check_second_decomposition,
    commuting_partner,
    d_classes,
    diamond_sets,
    green_D,
    green_L,
    green_R,
    handedness,
    natural_leq,
    natural_preorder,
    up_witness,
    down_witness,
)

PASS = "pass"
FAIL = "fail"
MISMATCH = "paper-claim mismatch"
NA = "not applicable"

# checks whose failure means a published statement does not hold, not a bug
MISMATCH_CHECKS = {
    "claim.nc5l_nine_skew_ideals",
    "claim.nc5l_0ac_skew_ideal",
    "ideals.generated_union_of_class_ideals",
    "skew_ideals.intersections_nonempty",
    "skew_ideals.finite_joins_sandwich_distributive",
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str | None = None


@dataclass(frozen=True)
class AlgebraReport:
    results: tuple[CheckResult, ...]

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def mismatches(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == MISMATCH]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "results": [{"name": r.name, "status": r.status, "detail": r.detail} for r in self.results],
        }


Check = Callable[[SkewLattice], "str | None | bool"]
CHECKS: list[tuple[str, Check]] = []


def check(name: str):
    def deco(fn: Check) -> Check:
        CHECKS.append((name, fn))
        return fn

    return deco


def _first(items) -> str | None:
    for it in items:
        return str(it)
    return None


def _pairs(S: SkewLattice):
    return itertools.product(S.elements, repeat=2)


# ---- order structure --------------------------------------------------------


@check("order.product_bounds")
def _product_bounds(S):
    M, J = S.meet, S.join
    pre, leq = natural_preorder(S), natural_leq(S)
    for x, y in _pairs(S):
        m, j = M[x][y], J[x][y]
        if not ((m, x) in pre and (m, y) in pre and (x, j) in pre and (y, j) in pre):
            return f"preorder bounds fail at ({x},{y})"
        if not ((M[m][x], x) in leq and (x, J[j][x]) in leq):
            return f"order sandwich fails at ({x},{y})"
        if (m, J[y][x]) not in leq:
            return f"x∧y ≤ y∨x fails at ({x},{y})"
    return None


@check("order.three_descriptions")
def _order_forms(S):
    M, J = S.meet, S.join
    leq = natural_leq(S)
    for x, y in _pairs(S):
        a = (y, x) in leq
        b = y == M[M[x][y]][x]
        c = x == J[J[y][x]][y]
        if not a == b == c:
            return f"disagreement at x={x}, y={y}"
    return None


@check("order.classes_are_antichains")
def _antichains(S):
    leq, D = natural_leq(S), green_D(S)
    return _first((x, y) for x, y in leq if x != y and (x, y) in D)


@check("order.leq_within_preorder")
def _leq_pre(S):
    if not natural_leq(S).issubset(natural_preorder(S)):
        return "some x ≤ y without x ⪯ y"
    pre = natural_preorder(S)
    if green_D(S) != pre & pre.inverse():
        return "D differs from ⪯ ∩ ⪰"
    return None


@check("order.class_order_direction")
def _class_direction(S):
    co = class_order(S)
    pre = natural_preorder(S)
    P = co.partition
    for p, q in itertools.product(range(len(P)), repeat=2):
        if co.lt(q, p):
            # y in the lower class, x in the upper one: y ⪯ x, never x ⪯ y
            for x in P.blocks[p]:
                for y in P.blocks[q]:
                    if (y, x) not in pre or (x, y) in pre:
                        return f"classes {p} > {q} at x={x}, y={y}"
    return None


@check("order.up_witnesses")
def _up(S):
    co = class_order(S)
    P = co.partition
    for x in S.elements:
        X = P.block_of[x]
        for B in range(len(P)):
            if co.lt(B, X):
                up_witness(S, x, B)
            if co.lt(X, B):
                down_witness(S, x, B)
    return None


@check("order.skew_diamonds")
def _diamonds(S):
    co = class_order(S)
    P = co.partition
    k = len(P)
    for A, B in itertools.combinations(range(k), 2):
        if co.comparable(A, B):
            continue
        for a in P.blocks[A]:
            commuting_partner(S, a, B)
        for b in P.blocks[B]:
            commuting_partner(S, b, A)
        ds = diamond_sets(S, A, B)
        if ds.join_class != ds.commuting_joins or ds.meet_class != ds.commuting_meets:
            return f"join/meet classes of diamond ({A},{B}) not spanned by commuting pairs"
    return None


@check("handedness.green_relations")
def _handed(S):
    h = handedness(S)
    D = green_D(S)
    if h in ("right", "both") and green_R(S) != D:
        return "right-handed but R ≠ D"
    if h in ("left", "both") and green_L(S) != D:
        return "left-handed but L ≠ D"
    return None


@check("decomposition.fibred_product")
def _second(S):
    check_second_decomposition(S)
    return None


# ---- ideals -----------------------------------------------------------------


def _join_closed_subsets(S: SkewLattice):
    n = len(S)
    J = S.join
    for mask in range(1, 1 << n):
        X = frozenset(x for x in range(n) if mask >> x & 1)
        if all(J[a][b] in X for a in X for b in X):
            yield X


@check("ideals.characterizations_agree")
def _criteria(S):
    for X in _join_closed_subsets(S):
        for crit in (ideals.ideal_criteria(S, X), ideals.filter_criteria(S, X)):
            if len(set(crit.values())) != 1:
                return f"{S.fmt(X)}: {crit}"
        sk = ideals.skew_ideal_criteria(S, X)
        if sk["order"] != sk["sandwich"]:
            return f"skew ideal criteria differ on {S.fmt(X)}"
    return None


@check("ideals.families_are_subalgebras")
def _subalgebras(S):
    for kind in ideals.KINDS:
        for X in ideals.family(S, kind).sets():
            if not is_closed(S, X):
                return f"{kind} {S.fmt(X)} not closed"
    return None


@check("ideals.unions_of_classes")
def _full(S):
    P = d_classes(S)
    for kind in ("ideal", "filter"):
        for X in ideals.family(S, kind).sets():
            if any(set(P.block(x)) - X for x in X):
                return f"{kind} {S.fmt(X)} cuts a class"
    return None


@check("ideals.match_quotient_ideals")
def _slavik(S):
    from .relations import quotient

    Q = quotient(S, d_classes(S)).algebra
    if len(ideals.enumerate_ideals(S)) != len(ideals.enumerate_ideals(Q)):
        return "ideal counts of S and S/D differ"
    if len(ideals.enumerate_filters(S)) != len(ideals.enumerate_filters(Q)):
        return "filter counts of S and S/D differ"
    return None


@check("ideals.principal_descriptions")
def _principal(S):
    for x in S.elements:
        ideals.principal_ideal(S, x)
        ideals.principal_skew_ideal(S, x)
        ideals.principal_filter(S, x)
        ideals.principal_skew_filter(S, x)
        ideals.recursive_principal_skew_ideal(S, x)
        if not ideals.principal_skew_ideal(S, x).elements <= ideals.principal_ideal(S, x).elements:
            return f"x↓* ⊄ x↓ at {x}"
    return None


@check("ideals.principal_determined_by_class")
def _antecip(S):
    D = green_D(S)
    for x, y in _pairs(S):
        same = ideals.principal_ideal(S, x).elements == ideals.principal_ideal(S, y).elements
        if same != ((x, y) in D):
            return f"x↓ = y↓ ⇔ x D y fails at ({x},{y})"
        fsame = ideals.principal_filter(S, x).elements == ideals.principal_filter(S, y).elements
        if fsame != ((x, y) in D):
            return f"x↑ = y↑ ⇔ x D y fails at ({x},{y})"
        if (ideals.principal_skew_ideal(S, x).elements == ideals.principal_skew_ideal(S, y).elements) != (x == y):
            return f"x↓* = y↓* ⇔ x = y fails at ({x},{y})"
    P = d_classes(S)
    for x in S.elements:
        if ideals.principal_skew_ideal(S, x).elements & set(P.block(x)) != {x}:
            return f"x↓* ∩ D_x ≠ {{x}} at {x}"
    return None


@check("ideals.principal_union_of_skew")
def _disjoint_union(S):
    P = d_classes(S)
    for x in S.elements:
        union = frozenset().union(*(ideals.principal_skew_ideal(S, y).elements for y in P.block(x)))
        if union != ideals.principal_ideal(S, x).elements:
            return f"x↓ ≠ ⋃ y↓* at {x}"
    return None


@check("ideals.cardinalities")
def _cards(S):
    D = green_D(S)
    P = d_classes(S)
    for x, y in D:
        if len(ideals.principal_skew_ideal(S, x)) != len(ideals.principal_skew_ideal(S, y)):
            return f"|x↓*| ≠ |y↓*| for {x} D {y}"
    for x in S.elements:
        if len(ideals.principal_ideal(S, x)) > len(P.block(x)) * len(ideals.principal_skew_ideal(S, x)):
            return f"|x↓| > |D_x|·|x↓*| at {x}"
    return None


@check("ideals.generated_union_of_class_ideals")
def _antecip_general(S):
    # the union of the generators' principal ideals, read literally
    for X in _subsets(S):
        gen = ideals.generated_ideal(S, X).elements
        if gen != ideals.antecip_union(S, X):
            return f"X = {S.fmt(X)}: X↓ = {S.fmt(gen)} but the union is {S.fmt(ideals.antecip_union(S, X))}"
    return None


def _subsets(S: SkewLattice):
    n = len(S)
    for mask in range(1, 1 << n):
        yield frozenset(x for x in range(n) if mask >> x & 1)


@check("skew_ideals.finite_joins")
def _skewdi(S):
    if not ideals.is_one_sided_meet_distributive(S):
        return NA
    for X in _subsets(S):
        ideals.generated_skew_ideal(S, X)
    return None


@check("skew_ideals.finite_joins_sandwich_distributive")
def _skewdi_sandwich(S):
    if not ideals.is_meet_distributive(S):
        return NA
    for X in _subsets(S):
        if ideals.generated_skew_ideal(S, X).elements != ideals.skewdi_formula(S, X):
            return f"X = {S.fmt(X)}"
    return None


@check("skew_ideals.intersections_nonempty")
def _empty_meets(S):
    for kind in ("skew_ideal", "skew_filter"):
        lat = ideals.family(S, kind)
        bad = ideals.empty_intersections(lat)
        if bad:
            i, j = bad[0]
            return f"{kind}s {S.fmt(lat.members[i].elements)} and {S.fmt(lat.members[j].elements)} are disjoint"
    return None


def _nc5l_map(S: SkewLattice):
    if len(S) != 5:
        return None
    return find_isomorphism(builtin("NC5L"), S)


@check("claim.nc5l_nine_skew_ideals")
def _nine(S):
    if _nc5l_map(S) is None:
        return NA
    k = len(ideals.enumerate_skew_ideals(S))
    return None if k == 9 else f"enumeration finds {k} skew ideals, the stated count is 9"


@check("claim.nc5l_0ac_skew_ideal")
def _zero_a_c(S):
    f = _nc5l_map(S)
    if f is None:
        return NA
    X = [f.mapping[x] for x in (0, 1, 3)]
    if ideals.enumerate_skew_ideals(S).index(X) is not None:
        return None
    return f"{{0,a,c}} is not ∨-closed (a∨c = 1), so it is not a skew ideal"


# ---- cosets -----------------------------------------------------------------


@check("cosets.partition_and_bijections")
def _coset_geometry(S):
    P = d_classes(S)
    for pair in cosets.comparable_pairs(S):
        lows, ups = cosets.coset_partition(S, pair)
        for group, cls in ((lows, P.blocks[pair.lower]), (ups, P.blocks[pair.upper])):
            sizes = {len(c.elements) for c in group}
            if len(sizes) != 1:
                return f"unequal coset sizes for {pair}"
            if sizes.pop() * len(group) != len(cls):
                return f"|coset|·index ≠ |class| for {pair}"
        cosets.bijections(S, pair)
        cosets.index(S, pair, "upper_in_lower")
        cosets.index(S, pair, "lower_in_upper")
        if not cosets.reconstruction_check(S, pair):
            return f"reconstruction fails for {pair}"
    return None


@check("cosets.single_coset_iff_normal")
def _cs_normal(S):
    rep = classify.normality_report(S)
    if rep.normal != rep.single_coset:
        return "normality and the single-coset test disagree"
    conormal = classify.properties(S).holds("conormal")
    single_up = all(len(cosets.coset_partition(S, p)[1]) == 1 for p in cosets.comparable_pairs(S))
    if conormal != single_up:
        return "conormality and the dual single-coset test disagree"
    return None


@check("cosets.strictly_categorical_characterization")
def _lstrictly(S):
    rep = cosets.categorical_report(S)
    if rep.strictly != cosets.lstrictly_condition(S):
        return "definition and the x↑*/x↓* test disagree"
    return None


@check("cosets.order_from_bijections")
def _order_eq(S):
    if not cosets.is_categorical(S):
        return NA
    return _first(p for p in cosets.comparable_pairs(S) if not cosets.check_order_eq_cosets(S, p))


@check("cosets.index_products")
def _counting(S):
    for length in range(3, len(d_classes(S)) + 1):
        for ch in cosets.class_chains(S, length):
            if not cosets.counting_check(S, list(ch)).ok:
                return f"chain {ch}"
    return None


@check("cosets.skew_ideals_meet_cosets")
def _ideal_cosets(S):
    rep = cosets.ideal_coset_checks(S)
    return None if rep.ok else str(rep.failures[0])


@check("cosets.skew_ideal_size_bound")
def _bound(S):
    return _first(x for x in S.elements if not cosets.index_ideal_bound_check(S, x))


# ---- varieties --------------------------------------------------------------


@check("classify.duality")
def _dual(S):
    p, q = classify.properties(S), classify.properties(dualize(S))
    if p.holds("symmetric") != q.holds("symmetric"):
        return "symmetry not self-dual"
    if p.holds("normal") != q.holds("conormal"):
        return "normal(S) ≠ conormal(dual S)"
    return None


@check("classify.implications")
def _implications(S):
    p = classify.properties(S)
    if p.holds("distributive") and not p.holds("quasi_distributive"):
        return "distributive but not quasi-distributive"
    if p.holds("normal") and not cosets.is_strictly_categorical(S):
        return "normal but not strictly categorical"
    if p.holds("skew_chain") and not p.holds("symmetric"):
        return "skew chain but not symmetric"
    if is_lattice(S) != (handedness(S) == "both"):
        return "lattice test and handedness disagree"
    return None


@check("classify.normality_equivalences")
def _normality(S):
    rep = classify.normality_report(S)
    return None if rep.consistent else str(rep)


@check("classify.center")
def _center(S):
    classify.center(S)
    return None


@check("classify.lattice_sections")
def _sections(S):
    secs = classify.lattice_sections(S)
    if classify.properties(S).holds("quasi_distributive") and not secs:
        return "quasi-distributive without a lattice section"
    if classify.top_section_ok(S) is False:
        return "m↓* is not a lattice section"
    return None


@check("classify.schein")
def _schein(S):
    if not classify.properties(S).holds("binormal"):
        return NA
    return None if classify.schein_factorization(S) is not None else "no factorization found"


@check("classify.skew_boolean")
def _sba(S):
    if classify.find_zero(S) is None:
        return NA
    found = classify.skew_boolean_structure(S) is not None
    if found != classify.leech_characterization(S):
        return f"structure {'found' if found else 'absent'} but the x↓* test says otherwise"
    return None


def theorem_harness(S: SkewLattice) -> AlgebraReport:
    results = []
    for name, fn in CHECKS:
        try:
            out = fn(S)
        except AssertionError as exc:
            results.append(CheckResult(name, FAIL, f"assertion: {exc}"))
            continue
        if out is None:
            results.append(CheckResult(name, PASS))
        elif out == NA:
            results.append(CheckResult(name, NA))
        elif name in MISMATCH_CHECKS:
            results.append(CheckResult(name, MISMATCH, out))
        else:
            results.append(CheckResult(name, FAIL, out))
    return AlgebraReport(tuple(results))
