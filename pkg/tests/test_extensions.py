from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algvar import linalg
from algvar.algebra import Algebra, in_basis
from algvar.catalog import AUT_SHAPES, FAMILIES, STEPS, get, parse_cocycle, parse_matrix
from algvar.extensions import (
    CocycleTriple,
    NotSymmetricError,
    SymBilinearForm,
    act,
    delta_form,
    extend,
    is_automorphism,
    is_cocycle,
)
from algvar.scalars import ParameterDecl, Scalar

a = Scalar.var("a")


def cocycle(text, params=""):
    return parse_cocycle((f"params {params};\n" if params else "") + f"theta = {text};")


def test_delta_forms():
    d11 = delta_form(1, 1, 3)
    assert d11.b[0][0] == 1 and sum(x != 0 for row in d11.b for x in row) == 1
    d12 = delta_form(1, 2, 3)
    assert d12.b[0][1] == 1 and d12.b[1][0] == 1
    assert delta_form(2, 3, 3).b[2][1] == 1


def test_non_symmetric_rejected():
    with pytest.raises(NotSymmetricError):
        SymBilinearForm([[0, 1, 0], [0, 0, 0], [0, 0, 0]])


def test_extend_l01_gives_n02():
    X = extend(get("L01"), cocycle("(0, 0, D[1,1] + a*D[2,2])", "a"))
    assert X.equals(get("N02^a"))


def test_extend_by_zero():
    assert extend(get("L02"), CocycleTriple.zero(3)) == get("L02")


def test_extend_to_g06_with_rescaling():
    L = get("L03^d+1")
    X = extend(L, cocycle("(0, D[1,2], D[2,2] + (d + 1)*D[1,3])", "d"))
    F = linalg.matrix([[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, 1]])
    assert in_basis(Algebra(3, X.c, get("G06^d").params), F).equals(get("G06^d"))


def test_zero_cocycle_on_l01():
    for delta in (-1, 2, Scalar.var("d")):
        assert is_cocycle(get("L01"), CocycleTriple.zero(3), delta)


def test_eta2_on_l01():
    assert is_cocycle(get("L01"), FAMILIES[("A1", "I", "eta2")].eta, -1)


def test_eta3_on_l03_0_symbolic():
    f = FAMILIES[("A2", "V", "eta3")]
    assert is_cocycle(get("L03^0"), f.eta, Scalar.var("d"))


def test_non_cocycle_detected():
    # a Delta_11 component in the e1 slot of L01 breaks the delta = -1 identities
    assert not is_cocycle(get("L01"), cocycle("(D[1,1], 0, 0)"), -1)


def _step(theorem, case, eta, label=None):
    for s in STEPS:
        if (s.theorem, s.case, s.eta_id) == (theorem, case, eta) and (label is None or s.label == label):
            return s
    raise KeyError((theorem, case, eta, label))


def test_act_anchor_eta2():
    s = _step("A1", "I", "eta2")
    assert str(act(s.eta, s.phi, s.params)) == "(0, D[1,1], a3*D[1,2])"


def test_act_anchor_case_iv():
    s = _step("A1", "IV", "eta1", "a2 != 0")
    assert str(act(s.eta, s.phi, s.params)) == "(2*D[1,1], -D[1,2], D[3,3])"


def test_act_anchor_a2_case_iv():
    s = _step("A2", "IV", "eta3")
    assert str(act(s.eta, s.phi, s.params)) == "(0, D[1,2], -D[1,3])"


def test_act_identity():
    theta = FAMILIES[("A1", "IV", "eta1")].eta
    assert act(theta, linalg.identity(3), FAMILIES[("A1", "IV", "eta1")].eta.params).equals(theta)


def test_aut_l01_generic():
    shape = [s for s in AUT_SHAPES if s.lie_id == "L01"][0]
    assert is_automorphism(get("L01"), shape.phi, shape.params)


def test_aut_l02_shape():
    params = tuple(ParameterDecl(n) for n in ("a21", "a22", "a23", "a31"))
    phi = parse_matrix("[[1, 0, 0], [a21, a22, a23], [a31, 0, a22]]", params)
    assert is_automorphism(get("L02"), phi, params)


def test_identity_is_automorphism():
    assert is_automorphism(get("L03^a"), linalg.identity(3), get("L03^a").params)


def test_printed_eta3_matrix_is_not_automorphism():
    s = _step("A1", "I", "eta3")
    assert not is_automorphism(s.lie, s.printed_phi, s.params)
    assert is_automorphism(s.lie, s.phi, s.params)


# -- equivariance: the basis phi of extend(L, theta) yields extend(L, theta * phi)

nonzero = st.sampled_from([1, -1, 2, -3, Fraction(1, 2)])
small = st.integers(-3, 3)


@given(nonzero, nonzero, small, small, small, small, small)
def test_act_extend_equivariance(x, y, u, v, p, q, r):
    # Aut(L03^2): e1 -> e1 + u e2 + v e3, diagonal on e2, e3
    L = get("L03^2")
    phi = linalg.matrix([[1, 0, 0], [u, x, 0], [v, 0, y]])
    theta = cocycle(f"(0, {p}*D[1,1] + D[1,2], {q}*D[1,1] + {r}*D[1,3])")
    assert is_automorphism(L, phi)
    assert in_basis(extend(L, theta), phi) == extend(L, act(theta, phi))
