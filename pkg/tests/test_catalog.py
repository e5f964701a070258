import pytest
from hypothesis import given
from hypothesis import strategies as st

from algvar.catalog import (
    ENTRIES,
    FAMILIES,
    GEO,
    STEPS,
    detect_kind,
    entry,
    get,
    ids,
    parse,
    parse_algebra,
    parse_closed_set,
    parse_cocycle,
    parse_witness,
    render,
)
from algvar.catalog.data import ISO_EXCEPTIONS, ORBIT_DIMS
from algvar.parsing import ParseError


def test_counts():
    assert {k: len(ids(k)) for k in ("lie", "assoc", "anti", "delta")} == {"lie": 3, "assoc": 11, "anti": 16, "delta": 12}
    assert len(ENTRIES) == 42


def test_geo_counts():
    kinds = [g.kind for g in GEO]
    assert kinds.count("degeneration") == 13
    assert kinds.count("nondegeneration") == 4


def test_get_specializes_parameters():
    A = get("L03^2")
    assert not A.params
    assert A.c[0][2][2] == 2
    assert get("L03^a").param_names == ("a",)


def test_unknown_id():
    with pytest.raises(KeyError):
        get("Z99")


def test_entries_record_lie_part():
    e = entry("N05^a")
    assert e.lie_id == "L03^a" and e.kind == "anti"


def test_parse_algebra():
    A = parse_algebra("dim 3; params a (a != 0); e1*e2 = e2; e1*e3 = a*e3;")
    assert A.dim == 3 and A.param_names == ("a",)
    assert A.c[0][1][1] == 1


@pytest.mark.parametrize(
    "text,where",
    [
        ("dim 3; e1*e4 = e2;", "e4"),
        ("dim 3; e1*e2 = e2", None),
        ("e1*e2 = e2;", "dim"),
        ("dim 3; e1*e2 = b*e2;", "b"),
    ],
)
def test_parse_errors(text, where):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    if where:
        assert where in str(exc.value)


def test_detect_kind():
    assert detect_kind("dim 3; e1*e2 = e3;") == "algebra"
    assert detect_kind("theta = (0, 0, D[1,1]);") == "cocycle"
    assert detect_kind("E1 = t*e1; E2 = e2; E3 = e3;") == "witness"
    assert detect_kind("A1^2 <= A2;") == "closed_set"


def test_closed_set_parse():
    R = parse_closed_set("A1*A3 + A3*A1 <= A3; c[1,2,1] = c[2,1,1];", 3)
    assert R.containments == ((1, 3, 3), (3, 1, 3))
    assert len(R.linear_eqs) == 1


@pytest.mark.parametrize("ident", sorted(ids()))
def test_algebra_round_trip(ident):
    A = get(ident) if "^" not in ident else entry(ident).algebra
    assert parse(render(A)) == A


def test_cocycle_round_trip():
    for f in FAMILIES.values():
        assert parse_cocycle(render(f.eta)).equals(f.eta)


def test_witness_round_trip():
    for g in GEO:
        if g.witness is not None:
            assert parse_witness(render(g.witness)) == g.witness


def test_closed_set_round_trip():
    for g in GEO:
        if g.closed_set is not None:
            assert parse_closed_set(render(g.closed_set), 3) == g.closed_set


def test_tables_present():
    assert len(FAMILIES) >= 30
    assert len(STEPS) > 0
    assert {t for t, *_ in ORBIT_DIMS} == {"G0", "G1", "G2"}
    assert [f for f, *_ in ISO_EXCEPTIONS] == ["G05^a", "N05^a", "L03^a"]


@given(st.integers(-5, 5), st.integers(1, 4))
def test_scalar_entries_round_trip(p, q):
    A = parse_algebra(f"dim 2; e1*e1 = {p}/{q}*e2;")
    assert parse_algebra(render(A)) == A
