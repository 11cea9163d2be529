import pytest
from hypothesis import given, settings

from skewlat import ideals
from skewlat.algebra import builtin, chain, dualize, is_closed
from skewlat.relations import d_classes, natural_leq, natural_preorder, quotient

from oracles import naive_family
from strategies import algebra_and_subset, algebras


def names(S, X):
    return {S.name(x) for x in X}


def ids(S, *tokens):
    return frozenset(S.element(t) for t in tokens)


def test_is_ideal_examples(nc5l):
    assert ideals.is_ideal(nc5l, ids(nc5l, "0", "a", "b"))
    assert not ideals.is_ideal(nc5l, ids(nc5l, "0", "b"))
    assert ideals.is_ideal(nc5l, nc5l.elements)
    with pytest.raises(ideals.EmptySubsetError):
        ideals.is_ideal(nc5l, [])


def test_is_filter_examples(nc5l):
    assert ideals.is_filter(nc5l, ids(nc5l, "1"))
    assert ideals.is_filter(nc5l, ids(nc5l, "c", "1"))
    assert not ideals.is_filter(nc5l, ids(nc5l, "a", "1"))


def test_is_skew_ideal_examples(nc5l):
    assert ideals.is_skew_ideal(nc5l, ids(nc5l, "0", "b"))
    # a∨c = 1 lies outside, so {0,a,c} is not a skew ideal
    assert not ideals.is_skew_ideal(nc5l, ids(nc5l, "0", "a", "c"))
    for I in ideals.enumerate_ideals(nc5l).sets():
        assert ideals.is_skew_ideal(nc5l, I)


def test_generated_sets(nc5r, nc5l):
    assert names(nc5r, ideals.generated_ideal(nc5r, ids(nc5r, "a")).elements) == {"0", "a", "b"}
    assert ideals.generated_ideal(nc5r, ids(nc5r, "a", "c")).elements == frozenset(nc5r.elements)
    assert ideals.generated_ideal(nc5r, [0]).elements == {0}
    I = ideals.generated_skew_ideal(nc5l, ids(nc5l, "b"))
    assert names(nc5l, I.elements) == {"0", "b"} and I.generators == ids(nc5l, "b")
    assert names(nc5l, ideals.generated_skew_ideal(nc5l, ids(nc5l, "a", "b")).elements) == {"0", "a", "b"}
    L = builtin("N5")
    for x in L.elements:
        assert ideals.generated_skew_ideal(L, [x]).elements == natural_leq(L).preimage(x)


def test_principal_sets(nc5r):
    assert names(nc5r, ideals.principal_ideal(nc5r, nc5r.element("a")).elements) == {"0", "a", "b"}
    assert names(nc5r, ideals.principal_ideal(nc5r, nc5r.element("c")).elements) == {"0", "c"}
    assert names(nc5r, ideals.principal_skew_ideal(nc5r, nc5r.element("a")).elements) == {"0", "a"}
    assert ideals.principal_skew_ideal(nc5r, nc5r.element("1")).elements == frozenset(nc5r.elements)
    assert names(nc5r, ideals.principal_skew_filter(nc5r, nc5r.element("c")).elements) == {"c", "1"}
    assert names(nc5r, ideals.principal_filter(nc5r, nc5r.element("a")).elements) == {"a", "b", "1"}
    L = builtin("M2")
    assert ideals.principal_ideal(L, 3).elements == frozenset(L.elements)
    assert ideals.principal_filter(L, 0).elements == frozenset(L.elements)
    assert ideals.principal_skew_ideal(chain(1), 0).elements == {0}


def test_enumerations_nc5l(nc5l):
    ideal_sets = [names(nc5l, X) for X in ideals.enumerate_ideals(nc5l).sets()]
    assert ideal_sets == [{"0"}, {"0", "c"}, {"0", "a", "b"}, {"0", "a", "b", "c", "1"}]
    skew = ideals.enumerate_skew_ideals(nc5l)
    assert len(skew) == 6
    assert skew.index(ids(nc5l, "0", "b")) is not None
    assert skew.index(ids(nc5l, "b")) is None
    assert skew.index(ids(nc5l, "0", "a", "c")) is None
    filt = [names(nc5l, X) for X in ideals.enumerate_filters(nc5l).sets()]
    assert filt == [{"1"}, {"c", "1"}, {"a", "b", "1"}, {"0", "a", "b", "c", "1"}]
    assert len(ideals.enumerate_skew_filters(nc5l)) == 6


def test_small_counts():
    assert len(ideals.enumerate_ideals(chain(1))) == 1
    assert len(ideals.enumerate_ideals(chain(3))) == 3
    L = builtin("N5")
    assert ideals.enumerate_skew_ideals(L).sets() == ideals.enumerate_ideals(L).sets()


def test_skew_ideal_stages(nc5r):
    one, a = nc5r.element("1"), nc5r.element("a")
    st = [names(nc5r, s) for s in ideals.skew_ideal_stages(nc5r, one)]
    assert st == [{"1"}, {"a", "b", "c"}, {"0"}]
    assert [names(nc5r, s) for s in ideals.skew_ideal_stages(nc5r, a)] == [{"a"}, {"0"}]
    assert ideals.skew_ideal_stages(nc5r, 0) == [frozenset({0})]
    assert ideals.recursive_principal_skew_ideal(nc5r, one).elements == frozenset(nc5r.elements)


def test_meet_distributivity(nc5r):
    assert ideals.is_meet_distributive(nc5r)
    assert not ideals.is_meet_distributive(builtin("N5"))
    assert ideals.meet_distributive_witness(builtin("N5")) is not None
    assert ideals.is_meet_distributive(chain(3))
    # the sandwich identity holds on NC5R but the one-sided law does not
    assert not ideals.is_one_sided_meet_distributive(nc5r)


def test_dual_ideals_are_filters(nc5l):
    assert ideals.enumerate_ideals(dualize(nc5l)).sets() == ideals.enumerate_filters(nc5l).sets()


def test_ideals_lattice_structure(nc5l):
    lat = ideals.enumerate_skew_ideals(nc5l)
    sets = lat.sets()
    for i in range(len(lat)):
        for j in range(len(lat)):
            U = lat.members[lat.join[i][j]].elements
            assert sets[i] | sets[j] <= U
            uppers = [s for s in sets if sets[i] | sets[j] <= s]
            assert all(U <= s for s in uppers)


def test_empty_intersections_reported():
    R2 = builtin("chain_2")
    assert ideals.empty_intersections(ideals.enumerate_skew_ideals(R2)) == []
    from skewlat.algebra import make_rectangular

    rect = make_rectangular(1, 2)
    lat = ideals.enumerate_skew_ideals(rect)
    assert [sorted(s) for s in lat.sets()] == [[0], [1], [0, 1]]
    assert ideals.empty_intersections(lat) == [(0, 1)]


def test_families_match_naive_oracle(sweep4, nc5r, nc5l):
    for S in sweep4 + [nc5r, nc5l]:
        for kind in ideals.KINDS:
            assert set(ideals.family(S, kind).sets()) == naive_family(S.meet, S.join, kind), (kind, S)


@settings(max_examples=80, deadline=None)
@given(algebra_and_subset())
def test_characterizations_agree(case):
    S, X = case
    crit = ideals.ideal_criteria(S, X)
    if ideals._join_closed(S, X):
        assert len(set(crit.values())) == 1
    assert ideals.is_ideal(S, X) == (X in naive_family(S.meet, S.join, "ideal"))


@settings(max_examples=80, deadline=None)
@given(algebra_and_subset())
def test_generated_closures(case):
    S, X = case
    I = ideals.generated_ideal(S, X).elements
    K = ideals.generated_skew_ideal(S, X).elements
    assert X <= K <= I
    assert ideals.is_ideal(S, I) and ideals.is_skew_ideal(S, K)
    assert is_closed(S, I) and is_closed(S, K)
    # least: every ideal containing X contains I
    for J in ideals.enumerate_ideals(S).sets():
        if X <= J:
            assert I <= J
    F = ideals.generated_filter(S, X).elements
    assert ideals.is_filter(S, F) and X <= F


@settings(max_examples=60, deadline=None)
@given(algebras())
def test_principal_identities(S):
    D = d_classes(S)
    pre = natural_preorder(S)
    leq = natural_leq(S)
    for x in S.elements:
        down = ideals.principal_ideal(S, x).elements
        sdown = ideals.principal_skew_ideal(S, x).elements
        assert down == pre.preimage(x)
        assert sdown == leq.preimage(x)
        assert sdown & set(D.block(x)) == {x}
        assert down == frozenset().union(*(ideals.principal_skew_ideal(S, y).elements for y in D.block(x)))
        assert len(down) <= len(D.block(x)) * len(sdown)
        assert ideals.recursive_principal_skew_ideal(S, x).elements == sdown
        for y in S.elements:
            same_class = D.block_of[x] == D.block_of[y]
            assert (ideals.principal_ideal(S, y).elements == down) == same_class
            assert (ideals.principal_skew_ideal(S, y).elements == sdown) == (x == y)
            if same_class:
                assert len(ideals.principal_skew_ideal(S, y)) == len(sdown)


@settings(max_examples=40, deadline=None)
@given(algebras())
def test_ideal_lattice_matches_quotient(S):
    Q = quotient(S, d_classes(S)).algebra
    for kind in ideals.KINDS:
        for I in ideals.family(S, kind).sets():
            assert is_closed(S, I)
    assert len(ideals.enumerate_ideals(S)) == len(ideals.enumerate_ideals(Q))
