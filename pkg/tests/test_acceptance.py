"""Acceptance criteria 1-9, exact arithmetic throughout.

Run with ``pytest tests/test_acceptance.py -v``; a per-criterion summary is
printed at the end of the session.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algvar import linalg
from algvar.algebra import Algebra, change_basis, commutator_algebra, in_basis, multiply
from algvar.catalog import ENTRIES, FAMILIES, GEO, STEPS, entry, get, parse_closed_set, parse_cocycle, parse_matrix
from algvar.catalog.data import ISO_EXCEPTIONS, ISO_SAMPLES, ORBIT_DIMS, R_G1_A_REPAIRED, R_G1_B, R_G2, geo_target
from algvar.extensions import act, extend, is_automorphism, is_cocycle
from algvar.geometry import (
    ClosedConditionSet,
    _generic_member,
    apply_index,
    is_borel_stable,
    refute_membership,
    satisfies,
    verify_degeneration,
    verify_nondegeneration,
)
from algvar.groebner import groebner
from algvar.identities import check, delta_novikov, is_metabelian, system
from algvar.invariants import derivations, find_isomorphism, find_proper_ideal, orbit_dimension
from algvar.parsing import parse_scalar
from algvar.scalars import ParameterDecl, Scalar, merge_params, substitute

from conftest import rational_matrices, scalars

c1 = pytest.mark.criterion(1)
c2 = pytest.mark.criterion(2)
c3 = pytest.mark.criterion(3)
c4 = pytest.mark.criterion(4)
c5 = pytest.mark.criterion(5)
c6 = pytest.mark.criterion(6)
c7 = pytest.mark.criterion(7)
c8 = pytest.mark.criterion(8)
c9 = pytest.mark.criterion(9)


def _kind(k):
    return [e for e in ENTRIES.values() if e.kind == k]


def _bind(A, b):
    if not b:
        return A
    return A.substitute(b, params=tuple(p for p in A.params if p.name not in b))


# -- 1. identity suite --------------------------------------------------------


@c1
def test_identity_suite():
    assert (len(_kind("assoc")), len(_kind("anti")), len(_kind("delta"))) == (11, 16, 12)
    start = time.perf_counter()
    for e in _kind("assoc"):
        for sys_ in (system("commutative"), system("associative"), delta_novikov("symbolic")):
            assert check(e.algebra, sys_).holds, (e.id, sys_)
    for e in _kind("anti"):
        assert check(e.algebra, delta_novikov(-1)).holds, e.id
    for e in _kind("delta"):
        v = check(e.algebra, delta_novikov("symbolic"))
        assert v.holds, (e.id, v.describe())
    assert time.perf_counter() - start < 5


@c1
def test_delta_constraints_declared():
    for e in _kind("delta"):
        for p in e.algebra.params:
            if p.name == "d":
                assert p.render() == "d (d != 0, d - 1 != 0, d + 1 != 0)"


# -- 2. commutators -----------------------------------------------------------


@c2
@pytest.mark.parametrize("ident", sorted(e.id for e in ENTRIES.values() if e.kind in ("anti", "delta")))
def test_commutator(ident):
    e = ENTRIES[ident]
    C = commutator_algebra(e.algebra)
    assert check(C, system("lie")).holds
    assert is_metabelian(C)
    F = e.rescaling or linalg.identity(3)
    target = in_basis(Algebra(3, e.lie.c, merge_params(C.params, e.lie.params)), F)
    assert C.equals(target, target.relations), f"{ident}: commutator differs from {e.lie_id}"


@c2
def test_n01_commutator_is_l01():
    assert commutator_algebra(get("N01")) == get("L01")


# -- 3. cocycles and basis reductions ---------------------------------------


@c3
def test_cocycle_families():
    start = time.perf_counter()
    fams = [f for f in FAMILIES.values() if f.theorem in ("A1", "A2")]
    assert len(fams) >= 30
    for f in fams:
        assert is_cocycle(f.lie, f.eta, f.delta), (f.theorem, f.case, f.eta_id)
    assert time.perf_counter() - start < 30


def _step_id(s):
    return f"{s.theorem}-{s.case}-{s.eta_id}-{s.label}"


@c3
@pytest.mark.parametrize("step", STEPS, ids=_step_id)
def test_reduction_step(step):
    assert is_automorphism(step.lie, step.phi, step.params)
    assert act(step.eta, step.phi, step.params).equals(step.expected)


@c3
@pytest.mark.parametrize(
    "theorem,case,eta,label,text",
    [
        ("A1", "I", "eta2", None, "(0, D[1,1], a3*D[1,2])"),
        ("A1", "IV", "eta1", "a2 != 0", "(2*D[1,1], -D[1,2], D[3,3])"),
        ("A2", "IV", "eta3", None, "(0, D[1,2], -D[1,3])"),
    ],
)
def test_anchor(theorem, case, eta, label, text):
    s = next(
        s for s in STEPS if (s.theorem, s.case, s.eta_id) == (theorem, case, eta) and (label is None or s.label == label)
    )
    assert str(act(s.eta, s.phi, s.params)) == text


def _printed(eta_id):
    return next(s for s in STEPS if s.printed_phi is not None and s.eta_id == eta_id)


@c3
@pytest.mark.xfail(
    strict=True,
    reason="erratum: the printed phi2 for A1 case I eta1 yields (0, 0, -D[1,1]); "
    "negating its (1,2) and (3,3) entries reproduces the stated (0, 0, D[1,1])",
)
def test_printed_eta1_phi2():
    s = _printed("eta1")
    assert act(s.eta, s.printed_phi, s.params).equals(s.expected)


@c3
@pytest.mark.xfail(
    strict=True,
    reason="unattainable: the stated image (0, D[1,1], a3*D[1,2]) of A1 case I eta3 needs a3 = 0 for every "
    "automorphism of L01; a corrected automorphism gives (0, D[1,1], -a3*D[1,2]), in the same N03 family",
)
def test_stated_eta3_image():
    s = _printed("eta3")
    assert is_automorphism(s.lie, s.printed_phi, s.params)
    stated = parse_cocycle("params a3; theta = (0, D[1,1], a3*D[1,2]);")
    assert act(s.eta, s.printed_phi, s.params).equals(stated)


@c3
def test_eta3_stated_image_forces_a3_zero():
    # the general automorphism of L01 carries eta3 to (0, D11, a3 D12) only if a3 = 0
    s = _printed("eta3")
    names = ("p11", "p12", "p21", "p22", "p31", "p32")
    ps = tuple(ParameterDecl(n) for n in names)
    phi = parse_matrix("[[p11, p12, 0], [p21, p22, 0], [p31, p32, p11*p22 - p12*p21]]", s.params + ps)
    got = act(s.eta, phi, s.params + ps)
    stated = parse_cocycle("params a3; theta = (0, D[1,1], a3*D[1,2]);")
    eqs = [
        (F.b[i][j] - G.b[i][j]).num
        for F, G in zip(got.forms, stated.forms)
        for i in range(3)
        for j in range(3)
        if not (F.b[i][j] - G.b[i][j]).is_zero()
    ]
    det = Scalar.var("p11") * Scalar.var("p22") - Scalar.var("p12") * Scalar.var("p21")
    eqs.append((Scalar.var("y") * det * Scalar.var("a1") - 1).num)
    gb = groebner(eqs, list(names) + ["y", "a1", "a2", "a3"])
    assert "a3" in [str(g) for g in gb.basis]


# -- 4. orbit dimensions ------------------------------------------------------


@c4
@pytest.mark.parametrize("theorem,ident,value,family", ORBIT_DIMS, ids=[f"{t}-{i}" for t, i, _, _ in ORBIT_DIMS])
def test_orbit_dimension(theorem, ident, value, family):
    A = get(ident)
    if A.params:
        for b in entry(ident).samples[:3]:
            assert orbit_dimension(A, family=family, at=b) == value, b
        assert orbit_dimension(A, generic=True, family=family) == value
    else:
        assert orbit_dimension(A) == value


@c4
def test_g05_single_orbit_and_family():
    # one orbit of G05^a has dimension 7; the family over a sweeps out 8
    A = get("G05^a")
    assert orbit_dimension(A, generic=True) == 7
    assert orbit_dimension(A, generic=True, family=("a",)) == 8


# -- 5. degenerations ---------------------------------------------------------

DEGS = [g for g in GEO if g.kind == "degeneration"]


def _is_family(g):
    return any(g.witness.var in x.gens for _, x in g.witness.index_subst)


def _der(A):
    return derivations(A, generic=bool(A.params)).dimension


@c5
def test_witnesses():
    assert len(DEGS) == 13
    start = time.perf_counter()
    for g in DEGS:
        v = verify_degeneration(get(g.source_id), get(g.target_id), g.witness)
        assert v, (g.label, v.reason)
    assert time.perf_counter() - start < 10


@c5
@pytest.mark.xfail(
    strict=True,
    reason="erratum: the printed G07 -> G03^a basis has (1 + a)t on e3 and omits e3 from E3; "
    "(1 - a)t and -(1 - a)^2 t^3 e3 verify",
)
def test_printed_g07_witness():
    g = next(g for g in DEGS if g.printed_witness is not None)
    assert verify_degeneration(get(g.source_id), get(g.target_id), g.printed_witness)


@c5
@pytest.mark.parametrize("g", [g for g in DEGS if not _is_family(g)], ids=lambda g: g.label)
def test_der_inequality(g):
    src, tgt = get(g.source_id), get(g.target_id)
    index = g.witness.bindings
    for b in g.samples:
        if index and all(x.is_constant() for x in index.values()):
            s = apply_index(src, g.witness)
        elif index:
            s = src
        else:
            s = _bind(src, b)
        assert _der(s) < _der(_bind(tgt, b)), b


FAMILY_DEGS = [g for g in DEGS if _is_family(g)]


@c5
@pytest.mark.parametrize("g", FAMILY_DEGS, ids=lambda g: g.label)
def test_family_orbit_inequality(g):
    # the parametrized index sweeps the family, whose orbits fill one more dimension
    fam = tuple(k for k, x in g.witness.index_subst if g.witness.var in x.gens)
    assert orbit_dimension(get(g.source_id), generic=True, family=fam) > orbit_dimension(get(g.target_id))


@c5
@pytest.mark.xfail(
    strict=True,
    reason="unattainable: der_dim(G05^a) = 2 = der_dim(G04) = der_dim(G08), so the per-member inequality "
    "is false for the two parametrized-index rows; the family orbit comparison holds instead",
)
@pytest.mark.parametrize("g", FAMILY_DEGS, ids=lambda g: g.label)
def test_family_der_inequality_literal(g):
    assert _der(get(g.source_id)) < _der(get(g.target_id))


# -- 6. non-degenerations -----------------------------------------------------

NONDEGS = [g for g in GEO if g.kind == "nondegeneration"]


@c6
@pytest.mark.parametrize("g", NONDEGS, ids=lambda g: g.label)
def test_nondegeneration(g):
    start = time.perf_counter()
    src, tgt = get(g.source_id), geo_target(g)
    R = g.closed_set
    assert satisfies(src, R)
    assert is_borel_stable(R, 3)
    v = verify_nondegeneration(src, tgt, R)
    assert v.status == "verified", v.detail
    assert v.refutation.status == "refuted"
    assert v.refutation.certificates and all(c.verify() for c in v.refutation.certificates)
    assert time.perf_counter() - start < 60


@c6
@pytest.mark.xfail(
    strict=True,
    reason="erratum: the printed set for G11 -/-> G12 is not Borel-stable (e1 e3 = e1 leaves it under "
    "e1 -> e1 + e3); adding A1*A3 + A3*A1 <= A3 and c[2,3,3] = c[3,2,3] repairs it",
)
def test_printed_r1a_stability():
    g = next(g for g in NONDEGS if g.printed_closed_set is not None)
    assert is_borel_stable(g.printed_closed_set, 3)


# -- 7. no simple algebras ----------------------------------------------------


def _closed_under_products(A, basis):
    rows = [tuple(v) for v in basis]
    r = linalg.rank(rows)
    for u in basis:
        for i in range(A.dim):
            e = tuple(Scalar(int(k == i)) for k in range(A.dim))
            for w in (multiply(A, u, e), multiply(A, e, u)):
                if linalg.rank(rows + [w]) != r:
                    return False
    return True


@c7
@pytest.mark.parametrize("ident", sorted(e.id for e in ENTRIES.values() if e.kind != "lie"))
def test_proper_ideal(ident):
    e = ENTRIES[ident]
    samples = e.samples if e.algebra.params else ({},)
    if e.algebra.params:
        assert len(samples) == 5
    for b in samples:
        A = _bind(e.algebra, b)
        found = find_proper_ideal(A)
        assert found is not None, b
        basis = found[1]
        assert 0 < linalg.rank([tuple(v) for v in basis]) < 3
        assert _closed_under_products(A, basis)


# -- 8. isomorphism exceptions ------------------------------------------------


@c8
@pytest.mark.parametrize(
    "family,name,image,value",
    [(f, n, i, v) for f, n, i in ISO_EXCEPTIONS for v in ISO_SAMPLES],
    ids=lambda x: str(x),
)
def test_isomorphism_exception(family, name, image, value):
    assert value in ("2", "3", "-1", "5", "7")
    x = parse_scalar(value)
    y = substitute(parse_scalar(image), {name: x})
    base = entry(family).algebra
    A, B = _bind(base, {name: x}), _bind(base, {name: y})
    r = find_isomorphism(A, B, seed=1)
    assert r is not None
    assert change_basis(A, r.g) == B


# -- 9. property suites -------------------------------------------------------


@c9
@given(scalars(), scalars(), scalars())
@settings(max_examples=40)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == 1


@c9
@given(rational_matrices(), rational_matrices())
@settings(max_examples=30)
def test_group_action(g, h):
    A = get("N13")
    assert change_basis(change_basis(A, g), h) == change_basis(A, linalg.matmul(h, g))
    assert change_basis(A, linalg.identity(3)) == A


nonzero = st.sampled_from([1, -1, 2, -3, Fraction(1, 2)])
small = st.integers(-3, 3)


@c9
@given(nonzero, nonzero, small, small, small, small, small)
@settings(max_examples=40)
def test_act_equivariance(x, y, u, v, p, q, r):
    L = get("L03^2")
    phi = linalg.matrix([[1, 0, 0], [u, x, 0], [v, 0, y]])
    theta = parse_cocycle(f"theta = (0, {p}*D[1,1] + D[1,2], {q}*D[1,1] + {r}*D[1,3]);")
    assert is_automorphism(L, phi)
    assert in_basis(extend(L, theta), phi) == extend(L, act(theta, phi))


@c9
@given(rational_matrices())
@settings(max_examples=30)
def test_check_basis_invariance(g):
    for ident, sys_ in (("N13", delta_novikov(-1)), ("G11^3", delta_novikov(3)), ("G11^3", delta_novikov(2))):
        A = get(ident)
        assert check(change_basis(A, g), sys_).holds == check(A, sys_).holds


FUZZ_SETS = [
    R_G1_B,
    R_G2,
    R_G1_A_REPAIRED,
    "A2^2 <= A3;",
    "A1*A2 + A2*A1 <= A2;",
    "A1*A3 + A3*A1 <= A3; A2^2 <= A3;",
]


def _member(R, rng):
    c = _generic_member(R, 3)
    names = sorted({n for i in c for j in i for s in j for n in s.gens})
    vals = {n: Fraction(rng.randint(-2, 2)) for n in names}
    return Algebra(3, [[[s.substitute(vals) for s in j] for j in i] for i in c])


def _invertible(rng):
    while True:
        g = linalg.matrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        if not linalg.det(g).is_zero():
            return g


@c9
def test_refutation_soundness_fuzz():
    # every case is a hidden member of a stable set, so "refuted" would be unsound
    rng = random.Random(20240601)
    sets = [parse_closed_set(t, 3) for t in FUZZ_SETS]
    assert all(is_borel_stable(R, 3) for R in sets)
    false_refutations, nontrivial = [], 0
    for case in range(1000):
        R = sets[case % len(sets)]
        A0 = _member(R, rng)
        assert satisfies(A0, R)
        B = change_basis(A0, _invertible(rng))
        nontrivial += not satisfies(B, R)
        v = refute_membership(B, R, search_member=False)
        if v.status == "refuted":
            false_refutations.append(case)
    assert false_refutations == []
    assert nontrivial > 500
