from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from algvar.catalog import parse_algebra
from algvar.parsing import parse_scalar
from algvar.scalars import Poly, Scalar

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("ci")

VARS = ("a", "t", "d")


def alg(text):
    return parse_algebra(text)


def sc(text):
    return parse_scalar(text)


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def polys(draw, gens=VARS, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in gens)
        terms[e] = terms.get(e, 0) + draw(st.fractions(min_value=-9, max_value=9, max_denominator=4))
    return Poly.from_terms(terms, gens)


@st.composite
def scalars(draw, gens=VARS):
    num = draw(polys(gens))
    den = draw(polys(gens, max_terms=3, max_deg=2))
    if den.is_zero():
        den = Poly(1)
    return Scalar(num, den)


@st.composite
def rational_matrices(draw, n=3, lo=-3, hi=3, invertible=True):
    """Invertible ones are built as perm * L * D * U, so shrinking heads to the identity."""
    from algvar import linalg

    if not invertible:
        return linalg.matrix([[Fraction(draw(st.integers(lo, hi))) for _ in range(n)] for _ in range(n)])
    nonzero = st.sampled_from([1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 3)])
    L = [[Fraction(draw(st.integers(lo, hi))) if i > j else Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    U = [[Fraction(draw(st.integers(lo, hi))) if i < j else Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [[Fraction(draw(nonzero)) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    perm = draw(st.permutations(range(n)))
    Pm = [[Fraction(int(perm[i] == j)) for j in range(n)] for i in range(n)]
    m = linalg.matmul(linalg.matmul(linalg.matrix(Pm), linalg.matrix(L)), linalg.matmul(linalg.matrix(D), linalg.matrix(U)))
    return m


@pytest.fixture
def zero3():
    from algvar.algebra import Algebra

    return Algebra.zero(3)


# ---------------------------------------------------------------------------
# per-criterion summary for the acceptance suite

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    rec = _CRITERIA.setdefault(mark.args[0], {"passed": 0, "failed": [], "xfail": []})
    if hasattr(rep, "wasxfail") and rep.skipped:
        rec["xfail"].append(rep.wasxfail)
    elif rep.failed:
        rec["failed"].append(item.name)
    elif rep.passed:
        rec["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        rec = _CRITERIA[n]
        reasons = list(dict.fromkeys(rec["xfail"]))
        unattainable = [r for r in reasons if r.startswith("unattainable")]
        errata = [r for r in reasons if r.startswith("erratum")]
        if rec["failed"]:
            line = f"criterion {n}: FAIL ({', '.join(rec['failed'])})"
        elif unattainable:
            line = f"criterion {n}: FAIL as stated, {rec['passed']} checks pass; " + "; ".join(unattainable)
        else:
            line = f"criterion {n}: PASS ({rec['passed']} checks)"
        if errata and not rec["failed"]:
            line += "; " + "; ".join(errata)
        tr.write_line(line)
