import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from algvar import linalg
from algvar.algebra import Algebra, change_basis, multiply
from algvar.catalog import get, ids
from algvar.groebner import Budget
from algvar.invariants import (
    derivations,
    find_isomorphism,
    find_proper_ideal,
    is_derivation,
    non_isomorphism_certificate,
    orbit_dimension,
    profile,
    spectral_ratio,
)
from algvar.scalars import Scalar

from conftest import rational_matrices


def _sample(ident, value=Fraction(2)):
    A = get(ident)
    if not A.params:
        return A
    return A.substitute({p.name: value for p in A.params}, params=())


def sympy_der_dim(A: Algebra) -> int:
    # independent oracle: solve D(e_i e_j) = D(e_i) e_j + e_i D(e_j) with sympy
    n = A.dim
    c = [[[sympy.Rational(A.c[i][j][k].to_fraction().numerator, A.c[i][j][k].to_fraction().denominator)
           for k in range(n)] for j in range(n)] for i in range(n)]
    D = sympy.Matrix(n, n, sympy.symbols(f"x0:{n * n}"))

    def mul(u, v):
        return sympy.Matrix([sum(u[i] * v[j] * c[i][j][k] for i in range(n) for j in range(n)) for k in range(n)])

    eqs = []
    E = sympy.eye(n)
    for i, j in itertools.product(range(n), repeat=2):
        lhs = D * mul(E[:, i], E[:, j])
        rhs = mul(D * E[:, i], E[:, j]) + mul(E[:, i], D * E[:, j])
        eqs.extend(lhs - rhs)
    M = sympy.Matrix([[sympy.diff(e, x) for x in D] for e in eqs])
    return n * n - M.rank()


@pytest.mark.parametrize("ident", sorted(ids()))
def test_der_dim_matches_sympy(ident):
    for v in (Fraction(2), Fraction(-3)):
        A = _sample(ident, v)
        assert derivations(A).dimension == sympy_der_dim(A)


def test_derivation_anchors():
    assert derivations(Algebra.zero(3)).dimension == 9
    assert derivations(get("A07")).dimension == 0
    assert derivations(get("G12^d"), generic=True).dimension == 4


def test_derivation_basis_verifies():
    for ident in ("N01", "L03^2", "G09^3"):
        A = get(ident)
        for D in derivations(A).basis:
            assert is_derivation(A, D)


def test_non_derivation():
    assert not is_derivation(get("N01"), linalg.identity(3))


def test_orbit_dimensions():
    assert orbit_dimension(get("A07")) == 9
    assert orbit_dimension(Algebra.zero(3)) == 0
    G = get("G05^a")
    assert orbit_dimension(G, generic=True) == 7
    assert orbit_dimension(G, generic=True, family=("a",)) == 8
    assert orbit_dimension(G, family=("a",), at={"a": Scalar(3)}) == 8


def test_profile_n01():
    p = profile(get("N01"))
    assert (p.dim_square, p.dim_annihilator, p.der_dim) == (1, 1, 6)


def test_profile_zero():
    p = profile(Algebra.zero(3))
    assert (p.dim_square, p.dim_annihilator, p.der_dim) == (0, 3, 9)


def test_a09_a10_separated_by_derivations():
    p, q = profile(get("A09")), profile(get("A10"))
    assert p.differences(q) == ["der_dim"]


def test_spectral_ratio_separates_l03():
    assert spectral_ratio(get("L03^2")) != spectral_ratio(get("L03^3"))
    assert spectral_ratio(get("L03^2")) == spectral_ratio(get("L03^1/2"))


def test_identity_isomorphism():
    r = find_isomorphism(get("N13"), get("N13"))
    assert r is not None and r.g == linalg.identity(3)


def test_g05_inverse_parameter():
    A, B = get("G05^2"), get("G05^1/2")
    r = find_isomorphism(A, B, seed=1)
    assert r is not None
    assert change_basis(A, r.g) == B


def test_l03_distinct_parameters():
    assert find_isomorphism(get("L03^2"), get("L03^3")) is None


def test_isomorphism_needs_specialization():
    with pytest.raises(ValueError):
        find_isomorphism(get("L03^a"), get("L03^2"))


def test_non_isomorphism_certificate():
    cert = non_isomorphism_certificate(get("N02^2"), get("N02^3"), Budget(max_pairs=5000))
    assert cert is not None and cert.verify()
    assert non_isomorphism_certificate(get("N02^2"), get("N02^2")) is None


@given(rational_matrices())
@settings(max_examples=15)
def test_isomorphism_recovers_random_basis_change(g):
    A = get("G09^2")
    B = change_basis(A, g)
    r = find_isomorphism(A, B)
    assert r is not None and change_basis(A, r.g) == B


def _closed(A, basis):
    n = A.dim
    rows = [tuple(v) for v in basis]
    r = linalg.rank(rows)
    for u in basis:
        for i in range(n):
            e = tuple(Scalar(int(k == i)) for k in range(n))
            for w in (multiply(A, u, e), multiply(A, e, u)):
                if linalg.rank(rows + [w]) != r:
                    return False
    return True


@pytest.mark.parametrize("ident", ["G09^2", "A07", "N13", "N01", "G12^3"])
def test_proper_ideals_close(ident):
    A = get(ident)
    found = find_proper_ideal(A)
    assert found is not None
    _, basis = found
    assert 0 < linalg.rank([tuple(v) for v in basis]) < A.dim
    assert _closed(A, basis)


@given(rational_matrices())
@settings(max_examples=20)
def test_profile_is_basis_invariant(g):
    for ident in ("N13", "G11^2", "A09"):
        A = get(ident)
        assert profile(change_basis(A, g)) == profile(A)
