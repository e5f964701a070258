from fractions import Fraction

import pytest
from hypothesis import given

from algvar import linalg
from algvar.algebra import (
    Algebra,
    DimensionError,
    change_basis,
    commutator_algebra,
    in_basis,
    multiply,
    product_span,
)
from algvar.catalog import get
from algvar.scalars import Scalar, ScalarError

from conftest import alg, rational_matrices, sc

a = Scalar.var("a")


def test_multiply_idempotent_basis():
    assert multiply(get("A07"), (1, 0, 0), (1, 0, 0)) == (1, 0, 0)


def test_multiply_by_zero():
    A = get("G11^d")
    assert multiply(A, (0, 0, 0), (1, 2, 3)) == (0, 0, 0)


def test_multiply_right_action():
    assert multiply(get("G09^d"), (0, 1, 0), (1, 0, 0)) == (0, 1, 0)


def test_change_basis_identity():
    A = get("G01")
    assert change_basis(A, linalg.identity(3)) == A


def test_swap_and_scale_inverts_parameter():
    # new basis (e1/a, e3, e2) as columns
    P = linalg.matrix([[1 / a, 0, 0], [0, 0, 1], [0, 1, 0]])
    B = in_basis(get("G05^a"), P)
    assert B.equals(get("G05^a").substitute({"a": 1 / a}))
    # the same map read as the transport g is the inverse matrix
    assert change_basis(get("G05^a"), linalg.inverse(P)).equals(B)


def test_swap_and_scale_lie():
    P = linalg.matrix([[1 / a, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert in_basis(get("L03^a"), P).equals(get("L03^a").substitute({"a": 1 / a}))


def test_singular_basis_rejected():
    with pytest.raises(ScalarError):
        in_basis(get("A07"), linalg.zeros(3, 3))


def test_commutator_of_commutative_is_zero():
    assert commutator_algebra(get("A04")).is_zero()


def test_commutator_of_n01_is_l01():
    assert commutator_algebra(get("N01")) == get("L01")


def test_commutator_of_g09():
    C = commutator_algebra(get("G09^d"))
    assert C.c[1][0] == (0, Fraction(1, 2), 0)
    assert C.c[0][1] == (0, Fraction(-1, 2), 0)
    assert in_basis(C, linalg.matrix([[-2, 0, 0], [0, 1, 0], [0, 0, 1]])).equals(get("L03^0"))


def test_product_span_zero_algebra():
    assert all(all(x.is_zero() for x in v) for v in product_span(Algebra.zero(3), 1, 1))


def test_product_span_abelian_flag():
    assert all(all(x.is_zero() for x in v) for v in product_span(get("G05^1"), 2, 2))


def test_from_products_checks_indices():
    with pytest.raises(DimensionError):
        Algebra.from_products(2, {(1, 3): {1: 1}})


# -- group action


@given(rational_matrices(), rational_matrices())
def test_change_basis_is_group_action(g, h):
    A = get("G11^2")
    assert change_basis(change_basis(A, h), g) == change_basis(A, linalg.matmul(g, h))


@given(rational_matrices())
def test_change_basis_inverse(g):
    A = get("N13")
    assert change_basis(change_basis(A, g), linalg.inverse(g)) == A


@given(rational_matrices())
def test_commutator_equivariance(g):
    A = get("G12^3")
    assert commutator_algebra(change_basis(A, g)) == change_basis(commutator_algebra(A), g)
