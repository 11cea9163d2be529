import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlat.algebra import NotASkewLattice, StructuralError, builtin
from skewlat.io import format_algebra, parse_algebra, parse_tables, read_algebra, write_algebra

from strategies import algebras

NC5R_FILE = """skewlat 1
n 5
names 0 a b c 1
meet
0 0 0 0 0
0 1 2 0 1
0 1 2 0 2
0 0 0 3 3
0 1 2 3 4
join
0 1 2 3 4
1 1 1 4 4
2 2 2 4 4
3 4 4 3 4
4 4 4 4 4
"""


def test_golden_format(nc5r):
    assert format_algebra(nc5r) == NC5R_FILE
    S = parse_algebra(NC5R_FILE)
    assert S == nc5r and S.names == nc5r.names


def test_comments_and_whitespace():
    text = "# a comment\n\nskewlat 1\n  n   2\n# between\nmeet\n0 0\n0   1\njoin\n\t0 1\n1 1\n"
    S = parse_algebra(text)
    assert S.meet == ((0, 0), (0, 1)) and S.names is None
    assert format_algebra(S) == "skewlat 1\nn 2\nmeet\n0 0\n0 1\njoin\n0 1\n1 1\n"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "skewlat 2\nn 1\nmeet\n0\njoin\n0\n",
        "skewlat 1\nmeet\n0\njoin\n0\n",
        "skewlat 1\nn x\nmeet\n0\njoin\n0\n",
        "skewlat 1\nn 0\nmeet\njoin\n",
        "skewlat 1\nn 2\nnames a\nmeet\n0 0\n0 1\njoin\n0 1\n1 1\n",
        "skewlat 1\nn 2\nnames a a\nmeet\n0 0\n0 1\njoin\n0 1\n1 1\n",
        "skewlat 1\nn 2\nmeet\n0 0\n0 1\n",
        "skewlat 1\nn 2\nmeet\n0 0\n0\njoin\n0 1\n1 1\n",
        "skewlat 1\nn 2\nmeet\n0 0\n0 x\njoin\n0 1\n1 1\n",
        "skewlat 1\nn 2\nmeet\n0 0\n0 7\njoin\n0 1\n1 1\n",
        "skewlat 1\nn 2\nmeet\n0 0\n0 1\njoin\n0 1\n1 1\nextra\n",
    ],
)
def test_structural_errors(text):
    with pytest.raises(StructuralError):
        parse_algebra(text)


def test_law_failure_is_not_structural():
    text = "skewlat 1\nn 2\nmeet\n0 1\n0 1\njoin\n0 1\n1 1\n"
    with pytest.raises(NotASkewLattice):
        parse_algebra(text)
    meet, join, names = parse_tables(text)
    assert meet == [[0, 1], [0, 1]] and names is None


def test_file_roundtrip(tmp_path, nc5l):
    p = tmp_path / "nc5l.skl"
    write_algebra(nc5l, p)
    assert read_algebra(p) == nc5l
    assert p.read_text() == format_algebra(nc5l)


@settings(max_examples=80, deadline=None)
@given(algebras(), st.booleans())
def test_roundtrip_property(S, with_names):
    if with_names:
        from skewlat.algebra import from_tables

        S = from_tables(S.meet, S.join, [f"e{i}" for i in range(len(S))])
    text = format_algebra(S)
    T = parse_algebra(text)
    assert T == S and T.names == S.names
    assert format_algebra(T) == text


def test_builtins_roundtrip():
    for name in ("NC5R", "NC5L", "chain_3", "M2", "N5"):
        S = builtin(name)
        assert parse_algebra(format_algebra(S)) == S
