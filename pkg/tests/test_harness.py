from skewlat.algebra import builtin, chain, direct_product
from skewlat.harness import FAIL, MISMATCH, MISMATCH_CHECKS, NA, PASS, theorem_harness


def statuses(report):
    return {r.name: r.status for r in report.results}


def test_nc5r(nc5r):
    rep = theorem_harness(nc5r)
    assert rep.ok, rep.failures
    assert {r.name for r in rep.mismatches} == {
        "ideals.generated_union_of_class_ideals",
        "skew_ideals.finite_joins_sandwich_distributive",
    }
    st = statuses(rep)
    assert st["claim.nc5l_nine_skew_ideals"] == NA
    assert st["cosets.partition_and_bijections"] == PASS


def test_nc5l(nc5l):
    rep = theorem_harness(nc5l)
    assert rep.ok, rep.failures
    names = {r.name for r in rep.mismatches}
    assert {"claim.nc5l_nine_skew_ideals", "claim.nc5l_0ac_skew_ideal"} <= names
    assert names <= MISMATCH_CHECKS
    detail = next(r.detail for r in rep.mismatches if r.name == "claim.nc5l_nine_skew_ideals")
    assert "6" in detail and "9" in detail


def test_report_shape(nc5r):
    rep = theorem_harness(nc5r)
    d = rep.as_dict()
    assert d["ok"] and len(d["results"]) == len(rep.results)
    assert all(r.status in (PASS, FAIL, MISMATCH, NA) for r in rep.results)
    assert rep.as_dict() == theorem_harness(nc5r).as_dict()


def test_sweep_order4(sweep4):
    for S in sweep4:
        rep = theorem_harness(S)
        assert rep.ok, (S, rep.failures)


def test_sweep_order5(sweep5):
    mismatched = 0
    for S in sweep5:
        rep = theorem_harness(S)
        assert rep.ok, (S, rep.failures)
        mismatched += bool(rep.mismatches)
    assert mismatched > 0


def test_larger_products(nc5r):
    for S in (direct_product(nc5r, chain(2)), direct_product(chain(3), builtin("M2"))):
        assert theorem_harness(S).ok
