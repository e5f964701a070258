import pytest
from hypothesis import given

from algvar.algebra import Algebra, change_basis, commutator_algebra
from algvar.catalog import get, ids
from algvar.identities import NotLieError, check, delta_novikov, is_lie, is_metabelian, system
from algvar.scalars import Scalar

from conftest import rational_matrices


def test_a07_symbolic_delta():
    assert check(get("A07"), delta_novikov("symbolic")).holds


def test_g06_fails_for_other_delta():
    v = check(get("G06^d"), delta_novikov(Scalar.var("d2")))
    assert not v.holds
    assert v.witness == (1, 2, 2)
    assert v.coordinate == 3
    assert v.residual == Scalar.var("d2") - Scalar.var("d")


def test_n16_anti_novikov():
    assert check(get("N16"), delta_novikov(-1)).holds


def test_l01_two_step_nilpotent():
    assert check(get("L01"), system("two_step_nilpotent")).holds


def test_l02_metabelian():
    assert is_metabelian(get("L02"))


def test_abelian_metabelian():
    assert is_metabelian(Algebra.zero(3))


def test_commutator_of_g11_metabelian():
    assert is_metabelian(commutator_algebra(get("G11^d")))


def test_metabelian_needs_lie():
    with pytest.raises(NotLieError):
        is_metabelian(get("A07"))


def test_shifted_delta_fails():
    A = get("G09^d")
    assert check(A, delta_novikov("symbolic")).holds
    assert not check(A, delta_novikov(Scalar.var("d") + 1)).holds


def test_associative_algebras_are_commutative_associative():
    for ident in ids("assoc"):
        A = get(ident)
        for name in ("commutative", "associative"):
            assert check(A, system(name)).holds, (ident, name)


def test_not_lie():
    assert not is_lie(get("N13"))


@given(rational_matrices())
def test_check_is_basis_invariant(g):
    for ident, sys_ in (("G11^2", delta_novikov(2)), ("N13", delta_novikov(-1)), ("G06^3", delta_novikov(5))):
        A = get(ident)
        assert check(change_basis(A, g), sys_).holds == check(A, sys_).holds


def test_count_all_reports_failures():
    v = check(get("G06^d"), delta_novikov(Scalar.var("d2")), count_all=True)
    assert v.failures >= 1
