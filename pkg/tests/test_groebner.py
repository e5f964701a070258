import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from algvar.groebner import (
    Budget,
    GroebnerBudgetExceeded,
    groebner,
    normal_form,
    rational_roots,
    solve_rational,
    verify_certificate,
)
from algvar.scalars import Poly

from conftest import polys

x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")
GENS = ("x", "y", "z")


def to_sympy(p: Poly):
    return sympy.sympify(str(p).replace("^", "**"))


def sympy_basis(ps, gens, order):
    G = sympy.groebner([to_sympy(p) for p in ps], *sympy.symbols(gens), order=order, domain="QQ")
    return sorted(str(sympy.expand(g)) for g in G.exprs)


def ours(ps, gens, order):
    return sorted(str(sympy.expand(to_sympy(g))) for g in groebner(ps, list(gens), order).basis)


def test_lex_example():
    r = groebner([x * x + y * y - Poly(1), x - y], ["x", "y"], "lex")
    assert [str(p) for p in r.basis] == ["x - y", "y^2 - 1/2"]
    assert not r.is_unit


@pytest.mark.parametrize("order,sym", [("grevlex", "grevlex"), ("lex", "lex")])
def test_cyclic3_against_sympy(order, sym):
    ps = [x + y + z, x * y + y * z + z * x, x * y * z - Poly(1)]
    assert ours(ps, GENS, order) == sympy_basis(ps, GENS, sym)


@given(st.lists(polys(GENS, max_terms=3, max_deg=2), min_size=1, max_size=3))
@settings(max_examples=40)
def test_reduced_basis_matches_sympy(ps):
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        return
    assert ours(ps, GENS, "grevlex") == sympy_basis(ps, GENS, "grevlex")


def test_unit_ideal_certificate():
    ps = [x * y - Poly(1), x]
    r = groebner(ps, ["x", "y"], track=True)
    assert r.is_unit and verify_certificate(ps, r.cofactors)


@given(st.lists(polys(GENS, max_terms=3, max_deg=2), min_size=2, max_size=3))
@settings(max_examples=40)
def test_certificates_verify_when_unit(ps):
    r = groebner(ps, list(GENS), track=True)
    if r.is_unit:
        assert verify_certificate(ps, r.cofactors)


def test_wrong_certificate_rejected():
    assert not verify_certificate([x, y], [Poly(1), Poly(1)])
    assert not verify_certificate([x], None)


def test_normal_form():
    assert str(normal_form(x * x * y, [x * y - Poly(1)], ["x", "y"])) == "x"


def test_rational_roots():
    assert rational_roots(x * x * x - Poly(2) * x, "x") == [Fraction(0)]
    assert sorted(rational_roots(Poly(6) * x * x - Poly(5) * x + Poly(1), "x")) == [Fraction(1, 3), Fraction(1, 2)]


def test_solve_rational():
    sol = solve_rational([x * x - Poly(4), x + y], ["x", "y"], random.Random(0))
    assert sol["x"] ** 2 == 4 and sol["x"] + sol["y"] == 0
    assert solve_rational([x * x - Poly(2)], ["x"]) is None
    assert solve_rational([Poly(1)], ["x"]) is None


KATSURA = [
    x + Poly(2) * y + Poly(2) * z - Poly(1),
    x * x + Poly(2) * y * y + Poly(2) * z * z - x,
    Poly(2) * x * y + Poly(2) * y * z - y,
]


def test_budget_exceeded():
    assert groebner(KATSURA, list(GENS), "lex").pairs == 3
    with pytest.raises(GroebnerBudgetExceeded):
        groebner(KATSURA, list(GENS), "lex", budget=Budget(max_pairs=2))
