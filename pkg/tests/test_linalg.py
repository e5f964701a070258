from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from algvar import linalg
from algvar.linalg import CaseSplitError
from algvar.scalars import ParameterDecl, Scalar

from conftest import rational_matrices, sc


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.to_fraction().numerator, x.to_fraction().denominator) for x in row] for row in m])


@given(rational_matrices(invertible=False))
def test_det_matches_sympy(m):
    assert linalg.det(m).to_fraction() == Fraction(str(to_sympy(m).det()))


@given(rational_matrices())
def test_inverse_is_inverse(m):
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(3)


@given(rational_matrices(invertible=False))
def test_rank_and_nullspace_match_sympy(m):
    assert linalg.rank(m) == to_sympy(m).rank()
    basis, _ = linalg.nullspace(m)
    assert len(basis) == 3 - linalg.rank(m)
    for v in basis:
        assert all(x.is_zero() for x in linalg.matvec(m, v))


def test_symbolic_determinant():
    a = Scalar.var("a")
    m = linalg.matrix([[a, 1, 0], [0, a, 0], [0, 0, 1]])
    assert linalg.det(m) == a * a


def test_generic_rank_records_excluded_pivot():
    a = Scalar.var("a")
    m = linalg.matrix([[a - 1, 0], [0, 1]])
    assert linalg.rank(m, (ParameterDecl("a"),), generic=True) == 2
    _, excluded = linalg.nullspace(m, (ParameterDecl("a"),), generic=True)
    assert [str(p) for p in excluded] == ["a - 1"]


def test_ambiguous_pivot_needs_case_split():
    a = Scalar.var("a")
    m = linalg.matrix([[a - 1, 0], [0, 1]])
    with pytest.raises(CaseSplitError, match="parameter case split needed"):
        linalg.rank(m, (ParameterDecl("a"),))


def test_constraint_certifies_pivot():
    m = linalg.matrix([[sc("a - 1"), 0], [0, 1]])
    decl = ParameterDecl("a", constraints=(sc("a - 1").num,))
    assert linalg.rank(m, (decl,)) == 2
