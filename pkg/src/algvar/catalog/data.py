"""Machine-readable classification tables and proof artifacts.

Parameter names: ``a`` for a family parameter, ``d`` for delta, ``a1..a4``
for cocycle parameters, ``p11..p33`` for generic automorphism entries,
``r``/``s`` for adjoined radicals and ``t`` for degenerations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .. import linalg
from ..algebra import Algebra, in_basis
from ..extensions import CocycleTriple, SymBilinearForm, extend
from ..geometry import ClosedConditionSet, DegenerationWitness
from ..identities import IdentitySystem, delta_novikov, system
from ..parsing import parse_params, parse_scalar, tokenize
from ..scalars import ONE, ZERO, Scalar, as_scalar, merge_params, substitute
from .formats import parse_algebra, parse_closed_set, parse_cocycle, parse_matrix, parse_witness

D_PARAM = "d (d != 0, d - 1 != 0, d + 1 != 0)"

# ---------------------------------------------------------------------------
# entries


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    algebra: Algebra
    source_ref: str
    kind: str  # lie | assoc | anti | delta
    lie_id: str | None = None
    lie: Algebra | None = None
    cocycle: CocycleTriple | None = None
    rescaling: tuple | None = None  # table = in_basis(extend(lie, cocycle), rescaling)
    rescaling_note: str = ""
    samples: tuple = ()  # admissible sample bindings

    @property
    def base(self) -> str:
        return self.id.split("^")[0]

    @property
    def systems(self) -> tuple:
        if self.kind == "lie":
            return (system("lie"),)
        if self.kind == "assoc":
            return (system("commutative"), system("associative"), delta_novikov("symbolic"))
        if self.kind == "anti":
            return (delta_novikov(-1),)
        return (delta_novikov("symbolic"),)


_LIE = {
    "L01": "dim 3; symmetry: anticommutative; e1*e2 = e3;",
    "L02": "dim 3; symmetry: anticommutative; e1*e2 = e2; e1*e3 = e2 + e3;",
    "L03^a": "dim 3; params a; symmetry: anticommutative; e1*e2 = e2; e1*e3 = a*e3;",
}

_ASSOC = {
    "A01": "e1*e1 = e1; e2*e2 = e2;",
    "A02": "e1*e1 = e1; e1*e2 = e2;",
    "A03": "e1*e1 = e1;",
    "A04": "e1*e1 = e2;",
    "A05": "e1*e2 = e3;",
    "A06": "e1*e1 = e2; e1*e2 = e3;",
    "A07": "e1*e1 = e1; e2*e2 = e2; e3*e3 = e3;",
    "A08": "e1*e1 = e1; e2*e2 = e2; e2*e3 = e3;",
    "A09": "e1*e1 = e1; e1*e2 = e2; e1*e3 = e3;",
    "A10": "e1*e1 = e1; e1*e2 = e2; e1*e3 = e3; e2*e2 = e3;",
    "A11": "e1*e1 = e1; e2*e2 = e3;",
}

# id: (table, params, lie id, lie parameter, cocycle in the proof basis, footnote scale of e1)
_ANTI = {
    "N01": ("e1*e2 = e3; e2*e1 = -e3;", "", "L01", None, "(0, 0, 0)", None),
    "N02^a": ("e1*e1 = e3; e1*e2 = e3; e2*e1 = -e3; e2*e2 = a*e3;", "a", "L01", None, "(0, 0, D[1,1] + a*D[2,2])", None),
    "N03^a": ("e1*e1 = e2; e1*e2 = (a + 1)*e3; e2*e1 = (a - 1)*e3;", "a", "L01", None, "(0, D[1,1], a*D[1,2])", None),
    "N04": ("e1*e2 = e2; e1*e3 = e2 + e3;", "", "L02", None, "(0, D[1,2] + D[1,3], D[1,3])", "1/2"),
    "N05^a": ("e1*e2 = e2; e1*e3 = a*e3;", "a", "L03^a", "a", "(0, D[1,2], a*D[1,3])", "1/2"),
    "N06": ("e1*e1 = e1; e2*e1 = -e2; e1*e3 = e3; e3*e1 = e3;", "", "L03^a", "0", "(2*D[1,1], -D[1,2], 2*D[1,3])", "1/2"),
    "N07": ("e1*e1 = e1; e2*e1 = -e2; e3*e3 = e3;", "", "L03^a", "0", "(2*D[1,1], -D[1,2], D[3,3])", "1/2"),
    "N08": ("e1*e1 = e1; e2*e1 = -e2;", "", "L03^a", "0", "(2*D[1,1], -D[1,2], 0)", "1/2"),
    "N09": (
        "e1*e1 = 2*e1; e1*e2 = e3; e2*e1 = e3 - 2*e2; e1*e3 = 2*e3; e3*e1 = 2*e3;",
        "", "L03^a", "0", "(2*D[1,1], -D[1,2], D[1,2] + 2*D[1,3])", None,
    ),
    "N10": ("e1*e1 = e3; e1*e2 = 2*e2;", "", "L03^a", "0", "(0, D[1,2], D[1,1])", None),
    "N11": ("e1*e2 = e2; e3*e3 = e3;", "", "L03^a", "0", "(0, D[1,2], D[3,3])", "1/2"),
    "N12": ("e1*e2 = 2*e2; e2*e2 = e1;", "", "L03^a", "0", "(D[2,2], D[1,2], 0)", None),
    "N13": ("e1*e2 = 2*e2; e2*e2 = e1; e3*e3 = e3;", "", "L03^a", "0", "(D[2,2], D[1,2], D[3,3])", None),
    "N14": ("e1*e2 = e2; e2*e2 = e3;", "", "L03^a", "0", "(0, D[1,2], D[2,2])", "1/2"),
    "N15": ("e1*e1 = e3; e1*e2 = 2*e2; e2*e2 = e3;", "", "L03^a", "0", "(0, D[1,2], D[1,1] + D[2,2])", None),
    "N16": ("e1*e1 = e1; e2*e1 = -e2; e3*e1 = -e3;", "", "L03^a", "1", "(2*D[1,1], -D[1,2], -D[1,3])", "1/2"),
}

_DELTA = {
    "G01": ("e1*e2 = e3; e2*e1 = -e3;", "", "L01", None, "(0, 0, 0)", None),
    "G02^a": ("e1*e1 = e3; e1*e2 = e3; e2*e1 = -e3; e2*e2 = a*e3;", "a", "L01", None, "(0, 0, D[1,1] + a*D[2,2])", None),
    "G03^a": ("e1*e1 = e2; e1*e2 = (a + 1)*e3; e2*e1 = (a - 1)*e3;", "a", "L01", None, "(0, D[1,1], a*D[1,2])", None),
    "G04": ("e1*e2 = e2; e1*e3 = e2 + e3;", "", "L02", None, "(0, D[1,2] + D[1,3], D[1,3])", "1/2"),
    "G05^a": ("e1*e2 = e2; e1*e3 = a*e3;", "a", "L03^a", "a", "(0, D[1,2], a*D[1,3])", "1/2"),
    "G06^d": (
        "e1*e2 = e2; e1*e3 = (d + 1)*e3; e2*e2 = e3;",
        D_PARAM, "L03^a", "d + 1", "(0, D[1,2], D[2,2] + (d + 1)*D[1,3])", "1/2",
    ),
    "G07": ("e1*e2 = e2; e3*e3 = e3;", "", "L03^a", "0", "(0, D[1,2], D[3,3])", "1/2"),
    "G08": ("e1*e1 = e3; e1*e2 = 2*e2;", "", "L03^a", "0", "(0, D[1,2], D[1,1])", None),
    "G09^d": ("e1*e1 = d*e1; e2*e1 = e2;", D_PARAM, "L03^a", "0", "(-2*d*D[1,1], -D[1,2], 0)", "-1/2"),
    "G10^d": (
        "e1*e1 = d*e1; e2*e1 = e2; e1*e3 = d*e3; e3*e1 = d*e3;",
        D_PARAM, "L03^a", "0", "(-2*d*D[1,1], -D[1,2], -2*d*D[1,3])", "-1/2",
    ),
    "G11^d": ("e1*e1 = d*e1; e2*e1 = e2; e3*e3 = e3;", D_PARAM, "L03^a", "0", "(-2*d*D[1,1], -D[1,2], D[3,3])", "-1/2"),
    "G12^d": ("e1*e1 = d*e1; e2*e1 = e2; e3*e1 = e3;", D_PARAM, "L03^a", "1", "(-2*d*D[1,1], -D[1,2], -D[1,3])", "-1/2"),
}

A_SAMPLES = ("2", "3", "-1", "5", "1/2")
D_SAMPLES = ("2", "3", "-2", "5", "1/2")

_REFS = {
    "lie": "metabelian Lie algebras table",
    "assoc": "associative commutative algebras table",
    "anti": "anti-Novikov algebras table",
    "delta": "delta-Novikov algebras table (delta not in {0, 1, -1})",
}


def _cocycle(text, params=()):
    """Parse a cocycle with the given ParameterDecls in scope."""
    head = ("params " + ", ".join(p.render() for p in params) + "; ") if params else ""
    return parse_cocycle(f"{head}theta = {text};")


def _text(body, params=""):
    head = "dim 3;" + (f" params {params};" if params else "")
    return f"{head} {body}"


def lie(name: str, value=None) -> Algebra:
    """L01, L02 or L03^a, optionally specialised at ``value`` (a Scalar or text)."""
    if name.startswith("L03"):
        A = parse_algebra(_LIE["L03^a"])
        if value is None:
            return A
        v = parse_scalar(value) if isinstance(value, str) else as_scalar(value)
        return A.substitute({"a": v}, params=())
    return parse_algebra(_LIE[name])


def _lie_label(name, value):
    return name if value is None else f"L03^{value.replace(' ', '')}"


def _diag_rescale(scale):
    if scale is None:
        return None, ""
    f = parse_scalar(scale)
    m = ((f, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))
    return m, f"e1 := {scale}*e1 applied to the proof-basis algebra"


def _samples(params_text):
    if not params_text:
        return ({},)
    name = params_text.split()[0]
    values = D_SAMPLES if name == "d" else A_SAMPLES
    return tuple({name: parse_scalar(v)} for v in values)


def _build_entries():
    out = {}
    for name, text in _LIE.items():
        A = parse_algebra(text)
        out[name] = CatalogEntry(name, A, _REFS["lie"], "lie", samples=_samples("a" if A.params else ""))
    for name, body in _ASSOC.items():
        A = parse_algebra(_text("symmetry: commutative; " + body))
        out[name] = CatalogEntry(name, A, _REFS["assoc"], "assoc", samples=({},))
    for kind, table in (("anti", _ANTI), ("delta", _DELTA)):
        for name, (body, params, lie_name, lie_value, theta, scale) in table.items():
            A = parse_algebra(_text(body, params))
            L = lie(lie_name, lie_value)
            th = _cocycle(theta, A.params)
            F, note = _diag_rescale(scale)
            out[name] = CatalogEntry(
                name, A, _REFS[kind], kind, _lie_label(lie_name, lie_value), L, th, F, note, _samples(params)
            )
    return out


ENTRIES = _build_entries()


def entry(ident: str) -> CatalogEntry:
    if ident in ENTRIES:
        return ENTRIES[ident]
    base = ident.split("^")[0]
    for e in ENTRIES.values():
        if e.base == base:
            return e
    raise KeyError(f"unknown catalog id {ident!r}")


def get(ident: str) -> Algebra:
    """Algebra for an id such as ``G12^d``, ``G12^-1``, ``G05^t+1`` or ``A07``.

    A value after '^' is substituted for the family parameter; the family's
    admissibility constraints are dropped for specialised values.
    """
    if ident in ENTRIES:
        return ENTRIES[ident].algebra
    base, _, value = ident.partition("^")
    e = entry(base)
    if not value:
        return e.algebra
    if not e.algebra.params:
        raise KeyError(f"{base} has no parameter")
    name = e.algebra.params[0].name
    v = parse_scalar(value)
    kept = tuple(p for p in e.algebra.params if p.name != name)
    return e.algebra.substitute({name: v}, params=kept + _free_params(v))


def _free_params(v: Scalar):
    return tuple(parse_params(tokenize(g))[0] for g in v.gens)


def ids(kind=None) -> list:
    return [k for k, e in ENTRIES.items() if kind is None or e.kind == kind]


# ---------------------------------------------------------------------------
# cocycle families and proof steps


@dataclass(frozen=True)
class CocycleFamily:
    theorem: str
    case: str
    eta_id: str
    lie_id: str
    lie: Algebra
    delta: Scalar
    eta: CocycleTriple


@dataclass(frozen=True)
class ProofStep:
    theorem: str
    case: str
    label: str
    lie_id: str
    lie: Algebra
    eta_id: str
    eta: CocycleTriple
    phi: tuple
    expected: CocycleTriple
    delta: Scalar
    params: tuple = ()
    printed_phi: tuple | None = None  # the matrix as printed, when it needed a correction
    erratum: str = ""


@dataclass(frozen=True)
class AutShape:
    theorem: str
    lie_id: str
    lie: Algebra
    phi: tuple
    params: tuple


def _subst_cocycle(theta: CocycleTriple, bindings, params) -> CocycleTriple:
    if not bindings:
        return CocycleTriple(theta.forms, merge_params(theta.params, params))
    b = {k: parse_scalar(v) for k, v in bindings.items()}
    forms = tuple(SymBilinearForm(tuple(tuple(substitute(x, b) for x in row) for row in f.b)) for f in theta.forms)
    return CocycleTriple(forms, merge_params(theta.params, params))


_P = "p11, p12, p13, p21, p22, p23, p31, p32, p33"

# (theorem, case, lie, lie value, delta, eta id, eta, params)
_FAMILIES = [
    ("A1", "I", "L01", None, "-1", "eta1", "(0, 0, a1*D[1,1] + a2*D[2,2] + a3*D[1,2])", "a1, a2, a3"),
    ("A1", "I", "L01", None, "-1", "eta2", "(0, a1*D[1,1], a2*D[1,1] + a3*D[1,2])", "a1, a2, a3"),
    ("A1", "I", "L01", None, "-1", "eta3", "(a1*D[2,2], 0, a2*D[2,2] + a3*D[1,2])", "a1, a2, a3"),
    (
        "A1", "I", "L01", None, "-1", "eta4",
        "(a1*D[1,1] + a2^2/a1*D[2,2] + a2*D[1,2], -a1^2/a2*D[1,1] - a2*D[2,2] - a1*D[1,2],"
        " a3*D[1,1] + a4*D[2,2] + (a3*a2^2 + a4*a1^2)/(2*a1*a2)*D[1,2])",
        "a1 (a1 != 0), a2 (a2 != 0), a3, a4",
    ),
    ("A1", "II", "L02", None, "-1", "eta", "(0, a1*D[1,1] + D[1,2] + D[1,3], a2*D[1,1] + D[1,3])", "a1, a2"),
    ("A1", "III", "L03", "-1", "-1", "eta", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] - D[1,3])", "a1, a2"),
    ("A1", "IV", "L03", "0", "-1", "eta1", "(2*D[1,1], a1*D[1,1] - D[1,2], 2*D[1,3] + a2*D[3,3])", "a1, a2"),
    ("A1", "IV", "L03", "0", "-1", "eta2", "(2*D[1,1], a1*D[1,1] - D[1,2], a2*D[3,3])", "a1, a2"),
    (
        "A1", "IV", "L03", "0", "-1", "eta3",
        "(2*D[1,1], a1*D[1,1] - D[1,2], a2*D[1,1] + a3*D[1,3] + a3*(a3 - 2)/a2*D[3,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    ("A1", "IV", "L03", "0", "-1", "eta4", "(2*D[1,1], a1*D[1,1] - D[1,2], a2*D[1,1] + a3*D[1,2] + 2*D[1,3])", "a1, a2, a3"),
    (
        "A1", "IV", "L03", "0", "-1", "eta5",
        "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + a3^2/a2*D[3,3] + a3*D[1,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    ("A1", "IV", "L03", "0", "-1", "eta6", "(a1*D[2,2], D[1,2], a2*D[3,3])", "a1, a2"),
    ("A1", "IV", "L03", "0", "-1", "eta7", "(0, a1*D[1,1] + D[1,2], a2*D[3,3])", "a1, a2"),
    ("A1", "IV", "L03", "0", "-1", "eta8", "(0, D[1,2], a1*D[1,1] + a2*D[2,2])", "a1, a2"),
    ("A1", "IV", "L03", "0", "-1", "eta9", "(0, a1*D[1,1] + D[1,2], a2*D[1,1])", "a1, a2"),
    (
        "A1", "IV", "L03", "0", "-1", "eta10",
        "(0, 2*a3/a2*D[1,1] + D[1,2], a1*D[1,1] + a2*D[2,2] + a3*D[1,2])",
        "a1, a2 (a2 != 0), a3",
    ),
    (
        "A1", "IV", "L03", "0", "-1", "eta11",
        "(a1*D[2,2], D[1,2], -a2*a3/a1*D[1,1] + a3*D[2,2] - a1*a2/a3*D[3,3] + a2*D[1,3])",
        "a1 (a1 != 0), a2, a3 (a3 != 0)",
    ),
    (
        "A1", "IV", "L03", "0", "-1", "eta12",
        "((1 - a1)*D[1,1] + a2^2/(1 - a1)*D[2,2] + a2*D[1,2], (1 - a1^2)/a2*D[1,1] - a2*D[2,2] + a1*D[1,2], a3*D[3,3])",
        "a1 (a1 - 1 != 0), a2 (a2 != 0), a3",
    ),
    (
        "A1", "IV", "L03", "0", "-1", "eta13",
        "((1 - a1)*D[1,1] + a2^2/(1 - a1)*D[2,2] + a2*D[1,2], (1 - a1^2)/a2*D[1,1] - a2*D[2,2] + a1*D[1,2],"
        " (a3 - a1*a3 - a3*a4)/a2*D[1,1] + a2*a3/(1 - a1)*D[2,2] - a2*a4/a3*D[3,3] + a3*D[1,2] + a4*D[1,3])",
        "a1 (a1 - 1 != 0), a2 (a2 != 0), a3 (a3 != 0), a4",
    ),
    ("A1", "V", "L03", "1", "-1", "eta1", "(2*D[1,1], a1*D[1,1] - D[1,2], a2*D[1,1] - D[1,3])", "a1, a2"),
    ("A1", "V", "L03", "1", "-1", "eta2", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + D[1,3])", "a1, a2"),
    (
        "A1", "VI", "L03", "a", "-1", "eta", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + a*D[1,3])",
        "a (a != 0, a - 1 != 0, a + 1 != 0), a1, a2",
    ),
    # delta-Novikov: the first three cases reuse the anti-Novikov cocycles
    ("A2", "I", "L01", None, "d", "eta1", "(0, 0, a1*D[1,1] + a2*D[2,2] + a3*D[1,2])", "a1, a2, a3"),
    ("A2", "I", "L01", None, "d", "eta2", "(0, a1*D[1,1], a2*D[1,1] + a3*D[1,2])", "a1, a2, a3"),
    ("A2", "I", "L01", None, "d", "eta3", "(a1*D[2,2], 0, a2*D[2,2] + a3*D[1,2])", "a1, a2, a3"),
    (
        "A2", "I", "L01", None, "d", "eta4",
        "(a1*D[1,1] + a2^2/a1*D[2,2] + a2*D[1,2], -a1^2/a2*D[1,1] - a2*D[2,2] - a1*D[1,2],"
        " a3*D[1,1] + a4*D[2,2] + (a3*a2^2 + a4*a1^2)/(2*a1*a2)*D[1,2])",
        "a1 (a1 != 0), a2 (a2 != 0), a3, a4",
    ),
    ("A2", "II", "L02", None, "d", "eta", "(0, a1*D[1,1] + D[1,2] + D[1,3], a2*D[1,1] + D[1,3])", "a1, a2"),
    ("A2", "III", "L03", "-1", "d", "eta", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] - D[1,3])", "a1, a2"),
    ("A2", "IV", "L03", "-1", "-2", "eta1", "(0, D[1,2], a1*D[1,1] + a2*D[2,2] - D[1,3])", "a1, a2"),
    ("A2", "IV", "L03", "-1", "-2", "eta2", "(0, a1*D[1,1] + a2*D[3,3] + D[1,2], -D[1,3])", "a1, a2"),
    ("A2", "IV", "L03", "-1", "-2", "eta3", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] - D[1,3])", "a1, a2"),
    (
        "A2", "IV", "L03", "-1", "-2", "eta4",
        "(0, 2*a3/a2*D[1,1] + D[1,2], a1*D[1,1] + a2*D[2,2] + a3*D[1,2] - D[1,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    (
        "A2", "IV", "L03", "-1", "-2", "eta5",
        "(0, a1*D[1,1] + a2*D[3,3] + D[1,2] + a3*D[1,3], -2*a3/a2*D[1,1] - D[1,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    ("A2", "V", "L03", "0", "d", "eta1", "(0, a1*D[1,1] + D[1,2], a2*D[3,3])", "a1, a2"),
    (
        "A2", "V", "L03", "0", "d", "eta2",
        "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + a3^2/a2*D[3,3] + a3*D[1,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    (
        "A2", "V", "L03", "0", "d", "eta3",
        "(-2*d*D[1,1], a1*D[1,1] - D[1,2], a2*D[1,1] + a3*D[1,3] + a3*(a3 + 2*d)/a2*D[3,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    ("A2", "V", "L03", "0", "d", "eta4", "(-2*d*D[1,1], a1*D[1,1] - D[1,2], -2*d*D[1,3] + a2*D[3,3])", "a1, a2"),
    ("A2", "V", "L03", "0", "d", "eta5", "(-2*d*D[1,1], a1*D[1,1] - D[1,2], a2*D[3,3])", "a1, a2"),
    ("A2", "VI", "L03", "1", "d", "eta1", "(-2*d*D[1,1], a1*D[1,1] - D[1,2], a2*D[1,1] - D[1,3])", "a1, a2"),
    ("A2", "VI", "L03", "1", "d", "eta2", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + D[1,3])", "a1, a2"),
    (
        "A2", "VII", "L03", "d + 1", "d", "eta1",
        "(0, 2*a3/a2*D[1,1] + D[1,2], a1*D[1,1] + a2*D[2,2] + a3*D[1,2] + (d + 1)*D[1,3])",
        "a1, a2 (a2 != 0), a3",
    ),
    ("A2", "VII", "L03", "d + 1", "d", "eta2", "(0, D[1,2], a1*D[1,1] + a2*D[2,2] + (d + 1)*D[1,3])", "a1, a2"),
    ("A2", "VII", "L03", "d + 1", "d", "eta3", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + (d + 1)*D[1,3])", "a1, a2"),
    (
        "A2", "VIII", "L03", "a", "d", "eta", "(0, a1*D[1,1] + D[1,2], a2*D[1,1] + a*D[1,3])",
        "a (a != 0, a - 1 != 0, a + 1 != 0, a - d - 1 != 0, a*d + a - 1 != 0), a1, a2",
    ),
]

_BETA = (
    "(0, 0, (a1*p11^2 + 2*a3*p11*p21 + a2*p21^2)/(p11*p22 - p12*p21)*D[1,1]"
    " + (a1*p12^2 + 2*a3*p12*p22 + a2*p22^2)/(p11*p22 - p12*p21)*D[2,2]"
    " + (a1*p11*p12 + a3*p11*p22 + a3*p12*p21 + a2*p21*p22)/(p11*p22 - p12*p21)*D[1,2])"
)

# (theorem, case, eta id, label, bindings, extra params, phi, expected, printed phi, erratum)
_STEPS = [
    (
        "A1", "I", "eta1", "generic automorphism", {}, "p11, p12, p21, p22, p31, p32",
        "[[p11, p12, 0], [p21, p22, 0], [p31, p32, p11*p22 - p12*p21]]", _BETA, None, "",
    ),
    ("A1", "I", "eta1", "a3 = 0, phi1", {"a3": "0"}, "a1 (a1 != 0)", "[[1, 0, 0], [0, a1, 0], [0, 0, a1]]",
     "(0, 0, D[1,1] + a1*a2*D[2,2])", None, ""),
    (
        "A1", "I", "eta1", "a3 = 0, a1 = 0, phi2", {"a3": "0", "a1": "0"}, "a2 (a2 != 0)",
        "[[0, -a2, 0], [1, 0, 0], [0, 0, a2]]", "(0, 0, D[1,1])",
        "[[0, a2, 0], [1, 0, 0], [0, 0, -a2]]",
        "the printed matrix yields (0, 0, -D[1,1]); negating its (1,2) and (3,3) entries gives (0, 0, D[1,1])",
    ),
    ("A1", "I", "eta2", "phi", {}, "a1 (a1 != 0)", "[[1, 0, 0], [0, a1, 0], [0, a2, a1]]", "(0, D[1,1], a3*D[1,2])", None, ""),
    (
        "A1", "I", "eta3", "phi", {}, "a1 (a1 != 0)", "[[0, a1, 0], [1, 0, 0], [0, a2, -a1]]", "(0, D[1,1], -a3*D[1,2])",
        "[[0, a1, 0], [1, 0, 0], [0, a2, a1]]",
        "the printed matrix is not an automorphism of L01 (its (3,3) entry must be the minor -a1); "
        "with -a1 the image is (0, D[1,1], -a3*D[1,2]), still in the N03 family",
    ),
    (
        "A1", "I", "eta4", "phi", {}, "", "[[1, a1, 0], [0, -a1^2/a2, 0], [0, a3, -a1^2/a2]]",
        "(0, D[1,1], (a1^2*a4 - a2^2*a3)/(2*a1*a2)*D[1,2])", None, "",
    ),
    ("A1", "II", "eta", "phi", {}, "", "[[1, 0, 0], [(a2 - a1)/2, 1, 0], [-a2/2, 0, 1]]", "(0, D[1,2] + D[1,3], D[1,3])", None, ""),
    ("A1", "III", "eta", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [a2/2, 0, 1]]", "(0, D[1,2], -D[1,3])", None, ""),
    ("A1", "IV", "eta1", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [a1/4, 1, 0], [0, 0, 1]]", "(2*D[1,1], -D[1,2], 2*D[1,3])", None, ""),
    ("A1", "IV", "eta1", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [a1/4, 1, 0], [-2/a2, 0, 1/a2]]", "(2*D[1,1], -D[1,2], D[3,3])", None, ""),
    ("A1", "IV", "eta2", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [a1/4, 1, 0], [0, 0, 1/a2]]", "(2*D[1,1], -D[1,2], D[3,3])", None, ""),
    ("A1", "IV", "eta2", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [a1/4, 1, 0], [0, 0, 1]]", "(2*D[1,1], -D[1,2], 0)", None, ""),
    ("A1", "IV", "eta3", "a3 = 2", {"a3": "2"}, "", "[[1, 0, 0], [a1/4, 1, 0], [-a2/2, 0, 1]]", "(2*D[1,1], -D[1,2], 2*D[1,3])", None, ""),
    ("A1", "IV", "eta3", "a3 = 0", {"a3": "0"}, "", "[[1, 0, 0], [a1/4, 1, 0], [a2/2, 0, 1]]", "(2*D[1,1], -D[1,2], 0)", None, ""),
    (
        "A1", "IV", "eta3", "a3 not in {0, 2}", {}, "a3 (a3 != 0, a3 - 2 != 0)",
        "[[1, 0, 0], [a1/4, 1, 0], [-a2/(a3 - 2), 0, a2/(a3*(a3 - 2))]]", "(2*D[1,1], -D[1,2], D[3,3])", None, "",
    ),
    ("A1", "IV", "eta4", "a3 = 0", {"a3": "0"}, "", "[[1, 0, 0], [a1/4, 1, 0], [-a2/2, 0, 1]]", "(2*D[1,1], -D[1,2], 2*D[1,3])", None, ""),
    (
        "A1", "IV", "eta4", "a3 != 0", {}, "a3 (a3 != 0)", "[[1, 0, 0], [a1/4, 1, 0], [-a2/2 - a1*a3/4, 0, a3]]",
        "(2*D[1,1], -D[1,2], D[1,2] + 2*D[1,3])", None, "",
    ),
    ("A1", "IV", "eta5", "a3 = 0", {"a3": "0"}, "", "[[1, 0, 0], [-a1/2, 1, 0], [0, 0, a2]]", "(0, D[1,2], D[1,1])", None, ""),
    (
        "A1", "IV", "eta5", "a3 != 0", {}, "a3 (a3 != 0)", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/a3, 0, a2/a3^2]]",
        "(0, D[1,2], D[3,3])", None, "",
    ),
    ("A1", "IV", "eta6", "a2 = 0, r^2 = a1", {"a2": "0"}, "a1 (a1 != 0), r (r^2 = a1)", "[[1, 0, 0], [0, 1/r, 0], [0, 0, 1]]",
     "(D[2,2], D[1,2], 0)", None, ""),
    ("A1", "IV", "eta6", "a1 = 0", {"a1": "0"}, "a2 (a2 != 0)", "[[1, 0, 0], [0, 1, 0], [0, 0, 1/a2]]", "(0, D[1,2], D[3,3])", None, ""),
    (
        "A1", "IV", "eta6", "a1 a2 != 0, r^2 = a1", {}, "a1 (a1 != 0), a2 (a2 != 0), r (r^2 = a1)",
        "[[1, 0, 0], [0, 1/r, 0], [0, 0, 1/a2]]", "(D[2,2], D[1,2], D[3,3])", None, "",
    ),
    ("A1", "IV", "eta7", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [0, 0, 1]]", "(0, D[1,2], a2*D[3,3])", None, ""),
    ("A1", "IV", "eta8", "a2 = 0", {"a2": "0"}, "a1 (a1 != 0)", "[[1, 0, 0], [0, 1, 0], [0, 0, a1]]", "(0, D[1,2], D[1,1])", None, ""),
    ("A1", "IV", "eta8", "a1 = 0", {"a1": "0"}, "a2 (a2 != 0)", "[[1, 0, 0], [0, 1, 0], [0, 0, a2]]", "(0, D[1,2], D[2,2])", None, ""),
    (
        "A1", "IV", "eta8", "a1 = r^2 a2", {"a1": "r^2*a2"}, "a2 (a2 != 0), r (r != 0)",
        "[[1, 0, 0], [0, r, 0], [0, 0, r^2*a2]]", "(0, D[1,2], D[1,1] + D[2,2])", None, "",
    ),
    ("A1", "IV", "eta9", "phi", {}, "a2 (a2 != 0)", "[[1, 0, 0], [-a1/2, 1, 0], [0, 0, a2]]", "(0, D[1,2], D[1,1])", None, ""),
    (
        "A1", "IV", "eta10", "phi", {}, "", "[[1, 0, 0], [-a3/a2, 1, 0], [0, 0, a2]]",
        "(0, D[1,2], (a1*a2 - a3^2)/a2^2*D[1,1] + D[2,2])", None, "",
    ),
    (
        "A1", "IV", "eta11", "r^2 = a1", {}, "r (r^2 = a1)", "[[1, 0, 0], [0, 1/r, 0], [a3/a1, 0, 1]]",
        "(D[2,2], D[1,2], -a1*a2/a3*D[3,3])", None, "",
    ),
    (
        "A1", "IV", "eta12", "r^2 = 1 - a1", {}, "r (r^2 = 1 - a1)", "[[1, 0, 0], [(a1 - 1)/a2, r/a2, 0], [0, 0, 1]]",
        "(D[2,2], D[1,2], a3*D[3,3])", None, "",
    ),
    (
        "A1", "IV", "eta13", "r^2 = 1 - a1", {}, "r (r^2 = 1 - a1)", "[[1, 0, 0], [(a1 - 1)/a2, r/a2, 0], [a3/a2, 0, 1]]",
        "(D[2,2], D[1,2], -a2*a4/a3*D[3,3])", None, "",
    ),
    ("A1", "V", "eta1", "phi", {}, "", "[[1, 0, 0], [a1/4, 1, 0], [a2/4, 0, 1]]", "(2*D[1,1], -D[1,2], -D[1,3])", None, ""),
    ("A1", "V", "eta2", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/2, 0, 1]]", "(0, D[1,2], D[1,3])", None, ""),
    ("A1", "VI", "eta", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/(2*a), 0, 1]]", "(0, D[1,2], a*D[1,3])", None, ""),
    ("A2", "IV", "eta1", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [0, 1, 0], [a1/2, 0, 1]]", "(0, D[1,2], -D[1,3])", None, ""),
    ("A2", "IV", "eta1", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [0, 1, 0], [a1/2, 0, a2]]", "(0, D[1,2], D[2,2] - D[1,3])", None, ""),
    ("A2", "IV", "eta2", "a2 = 0", {"a2": "0"}, "", "[[-1, 0, 0], [a1/2, 0, 1], [0, 1, 0]]", "(0, D[1,2], -D[1,3])", None, ""),
    (
        "A2", "IV", "eta2", "a2 != 0", {}, "a2 (a2 != 0)", "[[-1, 0, 0], [a1/2, 0, a2], [0, 1, 0]]",
        "(0, D[1,2], D[2,2] - D[1,3])", None, "",
    ),
    ("A2", "IV", "eta3", "phi", {}, "", "[[-1, 0, 0], [a1/2, 0, 1], [-a2/2, 1, 0]]", "(0, D[1,2], -D[1,3])", None, ""),
    (
        "A2", "IV", "eta4", "phi", {}, "", "[[1, 0, 0], [-a3/a2, 1, 0], [-(a3^2 - a1*a2)/(2*a2), 0, a2]]",
        "(0, D[1,2], D[2,2] - D[1,3])", None, "",
    ),
    (
        "A2", "IV", "eta5", "phi", {}, "", "[[-1, 0, 0], [-(a3^2 - a1*a2)/(2*a2), 0, a2], [a3/a2, 1, 0]]",
        "(0, D[1,2], D[2,2] - D[1,3])", None, "",
    ),
    ("A2", "V", "eta1", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [-a1/2, 1, 0], [0, 0, 1]]", "(0, D[1,2], 0)", None, ""),
    ("A2", "V", "eta1", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [-a1/2, 1, 0], [0, 0, 1/a2]]", "(0, D[1,2], D[3,3])", None, ""),
    ("A2", "V", "eta2", "a3 = 0", {"a3": "0"}, "", "[[1, 0, 0], [-a1/2, 1, 0], [0, 0, a2]]", "(0, D[1,2], D[1,1])", None, ""),
    (
        "A2", "V", "eta2", "a3 != 0", {}, "a3 (a3 != 0)", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/a3, 0, a2/a3^2]]",
        "(0, D[1,2], D[3,3])", None, "",
    ),
    (
        "A2", "V", "eta3", "a3 = 0", {"a3": "0"}, "", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [-a2/(2*d), 0, 1]]",
        "(-2*d*D[1,1], -D[1,2], 0)", None, "",
    ),
    (
        "A2", "V", "eta3", "a3 = -2d", {"a3": "-2*d"}, "", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [a2/(2*d), 0, 1]]",
        "(-2*d*D[1,1], -D[1,2], -2*d*D[1,3])", None, "",
    ),
    (
        "A2", "V", "eta3", "a3 not in {0, -2d}", {}, "a3 (a3 != 0, a3 + 2*d != 0)",
        "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [-a2/(2*d + a3), 0, a2/(a3*(2*d + a3))]]",
        "(-2*d*D[1,1], -D[1,2], D[3,3])", None, "",
    ),
    (
        "A2", "V", "eta4", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [0, 0, 1]]",
        "(-2*d*D[1,1], -D[1,2], -2*d*D[1,3])", None, "",
    ),
    (
        "A2", "V", "eta4", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [2*d/a2, 0, 1/a2]]",
        "(-2*d*D[1,1], -D[1,2], D[3,3])", None, "",
    ),
    (
        "A2", "V", "eta5", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [0, 0, 1]]",
        "(-2*d*D[1,1], -D[1,2], 0)", None, "",
    ),
    (
        "A2", "V", "eta5", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [0, 0, 1/a2]]",
        "(-2*d*D[1,1], -D[1,2], D[3,3])", None, "",
    ),
    (
        "A2", "VI", "eta1", "phi", {}, "", "[[1, 0, 0], [a1/(2 - 2*d), 1, 0], [a2/(2 - 2*d), 0, 1]]",
        "(-2*d*D[1,1], -D[1,2], -D[1,3])", None, "",
    ),
    ("A2", "VI", "eta2", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/2, 0, 1]]", "(0, D[1,2], D[1,3])", None, ""),
    (
        "A2", "VII", "eta1", "phi", {}, "", "[[1, 0, 0], [-a3/a2, 1, 0], [(a3^2 - a1*a2)/(2*a2*(d + 1)), 0, a2]]",
        "(0, D[1,2], D[2,2] + (d + 1)*D[1,3])", None, "",
    ),
    (
        "A2", "VII", "eta2", "a2 = 0", {"a2": "0"}, "", "[[1, 0, 0], [0, 1, 0], [-a1/(2*(d + 1)), 0, 1]]",
        "(0, D[1,2], (d + 1)*D[1,3])", None, "",
    ),
    (
        "A2", "VII", "eta2", "a2 != 0", {}, "a2 (a2 != 0)", "[[1, 0, 0], [0, 1, 0], [-a1/(2*(d + 1)), 0, a2]]",
        "(0, D[1,2], D[2,2] + (d + 1)*D[1,3])", None, "",
    ),
    (
        "A2", "VII", "eta3", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/(2*(d + 1)), 0, 1]]",
        "(0, D[1,2], (d + 1)*D[1,3])", None, "",
    ),
    ("A2", "VIII", "eta", "phi", {}, "", "[[1, 0, 0], [-a1/2, 1, 0], [-a2/(2*a), 0, 1]]", "(0, D[1,2], a*D[1,3])", None, ""),
]

# (theorem, lie, lie value, shape, params)
_AUT = [
    ("A1", "L01", None, "[[p11, p12, 0], [p21, p22, 0], [p31, p32, p11*p22 - p12*p21]]", "p11, p12, p21, p22, p31, p32"),
    ("A1", "L02", None, "[[1, 0, 0], [p21, p22, p23], [p31, 0, p22]]", "p21, p22, p23, p31"),
    ("A1", "L03", "-1", "[[1, 0, 0], [p21, p22, 0], [p31, 0, p33]]", "p21, p22, p31, p33"),
    ("A1", "L03", "-1", "[[-1, 0, 0], [p21, 0, p23], [p31, p32, 0]]", "p21, p23, p31, p32"),
    ("A1", "L03", "0", "[[1, 0, 0], [p21, p22, 0], [p31, 0, p33]]", "p21, p22, p31, p33"),
    ("A1", "L03", "1", "[[1, 0, 0], [p21, p22, p23], [p31, p32, p33]]", "p21, p22, p23, p31, p32, p33"),
    ("A1", "L03", "a", "[[1, 0, 0], [p21, p22, 0], [p31, 0, p33]]", "a (a != 0, a - 1 != 0, a + 1 != 0), p21, p22, p31, p33"),
]


def _params(text):
    return tuple(parse_params(tokenize(text))) if text else ()


def _delta(text):
    return parse_scalar(text)


def _family_params(theorem, delta_text, params):
    extra = _params(params)
    if delta_text == "d":
        extra = merge_params(extra, _params(D_PARAM))
    return extra


def _build_families():
    fams = {}
    for theorem, case, lname, lval, delta, eta_id, eta, params in _FAMILIES:
        ps = _family_params(theorem, delta, params)
        th = _cocycle(eta, ps)
        L = lie(lname, lval)
        fams[(theorem, case, eta_id)] = CocycleFamily(theorem, case, eta_id, _lie_label(lname, lval), L, _delta(delta), th)
    return fams


FAMILIES = _build_families()


def _build_steps():
    steps = []
    for theorem, case, eta_id, label, bindings, params, phi, expected, printed, erratum in _STEPS:
        fam = FAMILIES[(theorem, case, eta_id)]
        extra = _params(params)
        eta = _subst_cocycle(fam.eta, bindings, extra)
        ps = eta.params
        m = parse_matrix(phi)
        exp = _cocycle(expected, ps)
        pm = parse_matrix(printed) if printed else None
        steps.append(ProofStep(theorem, case, label, fam.lie_id, fam.lie, eta_id, eta, m, exp, fam.delta, ps, pm, erratum))
    return tuple(steps)


STEPS = _build_steps()


def _build_aut():
    out = []
    for theorem, lname, lval, shape, params in _AUT:
        out.append(AutShape(theorem, _lie_label(lname, lval), lie(lname, lval), parse_matrix(shape), _params(params)))
    return tuple(out)


AUT_SHAPES = _build_aut()


# ---------------------------------------------------------------------------
# degenerations and non-degenerations


@dataclass(frozen=True)
class GeoEntry:
    theorem: str
    kind: str  # degeneration | nondegeneration
    source_id: str
    target_id: str
    witness: DegenerationWitness | None = None
    closed_set: ClosedConditionSet | None = None
    printed_witness: DegenerationWitness | None = None
    printed_closed_set: ClosedConditionSet | None = None
    note: str = ""
    samples: tuple = ({},)

    @property
    def label(self) -> str:
        arrow = "->" if self.kind == "degeneration" else "-/->"
        return f"{self.source_id} {arrow} {self.target_id}"


_D_SAMPLES3 = tuple({"d": parse_scalar(v)} for v in ("2", "3", "-2"))
_A_SAMPLES3 = tuple({"a": parse_scalar(v)} for v in ("2", "3", "-1"))

_G07_G03_PRINTED = (
    "params a; E1 = 2*t*e1 + e2 + (t + a*t)*e3; E2 = 2*t*e2 + (1 - a)^2*t^2*e3; E3 = -(1 - a)^2*t^3*e3;"
)

_GEO = [
    ("G0", "degeneration", "G02^a", "G01", "E1 = t*e1; E2 = e2; E3 = t*e3; index a = 0;", None, "", ({},)),
    (
        "G0", "degeneration", "G03^a", "G02^a",
        "params a (a != 0), s (s^2 = -a); E1 = t*e1 + 1/(s*t)*e2 - (t^4 - 1)/(s*t^3)*e3; E2 = -s*t*e1 + t*e3; E3 = e3;"
        " index a = s;",
        None, "", _A_SAMPLES3,
    ),
    (
        "G0", "degeneration", "G07", "G03^a",
        "params a (a - 1 != 0); E1 = 2*t*e1 + e2 + (1 - a)*t*e3; E2 = 2*t*e2 + (1 - a)^2*t^2*e3; E3 = -(1 - a)^2*t^3*e3;",
        _G07_G03_PRINTED,
        "the printed first vector has coefficient (1 + a)t on e3 and the third vector omits e3; "
        "(1 - a)t and -(1 - a)^2 t^3 e3 give the stated limit for a != 1",
        tuple({"a": parse_scalar(v)} for v in ("2", "3", "-1")),
    ),
    ("G0", "degeneration", "G05^a", "G04", "E1 = e1; E2 = t*e3; E3 = e2 + e3; index a = t + 1;", None, "", ({},)),
    ("G0", "degeneration", "G05^a", "G08", "E1 = 2*e1 + e3; E2 = t*e2 + t^2/(t - 1)*e3; E3 = 2*t*e3; index a = t;", None, "", ({},)),
    ("G1", "degeneration", "G11^d", "G09^d", "E1 = e1; E2 = e2; E3 = t*e3;", None, "", _D_SAMPLES3),
    ("G1", "degeneration", "G11^d", "G10^d", f"params {D_PARAM}; E1 = e1 + d*e3; E2 = e2; E3 = t*e3;", None, "", _D_SAMPLES3),
    ("G2", "degeneration", "N13", "G06^-1", "E1 = 1/2*e1 - 1/2*t^6*e3; E2 = t*e2; E3 = t^8*e3;", None, "", ({},)),
    ("G2", "degeneration", "N13", "G07", "E1 = 1/2*e1; E2 = t*e2; E3 = e3;", None, "", ({},)),
    ("G2", "degeneration", "N13", "G11^-1", "params r (r^2 = 2); E1 = -1/2*e1 + 1/r*e2; E2 = t*e2; E3 = e3;", None, "", ({},)),
    (
        "G2", "degeneration", "N13", "N09",
        "params r (r^2 = 2); E1 = e1 + r*e2 + 2*e3; E2 = t*(t - 1)/(2*r)*e2 + t^2/2*e3; E3 = t*e3;",
        None, "", ({},),
    ),
    ("G2", "degeneration", "N13", "N12", "E1 = e1; E2 = e2; E3 = t*e3;", None, "", ({},)),
    ("G2", "degeneration", "N13", "N15", "E1 = e1 - t^2*e3; E2 = t*e2; E3 = t^4*e3;", None, "", ({},)),
]

R_G1_A = "A2^2 <= A3; c[1,3,3] = c[3,1,3];"
R_G1_A_REPAIRED = "A2^2 <= A3; A1*A3 + A3*A1 <= A3; c[1,3,3] = c[3,1,3]; c[2,3,3] = c[3,2,3];"
R_G1_B = "A1^2 <= A2;"
R_G2 = "A1*A3 + A3*A1 <= A3; c[1,2,1] = c[2,1,1]; c[1,3,3] = c[3,1,3]; c[2,3,3] = c[3,2,3];"

_NONDEG = [
    (
        "G1", "G11^d", "G12^d", R_G1_A_REPAIRED, R_G1_A,
        "the printed set is not stable under lower-triangular basis changes (e1 e3 = e1 moves out of it under "
        "e1 -> e1 + e3); the repaired set adds A1*A3 + A3*A1 <= A3 and c[2,3,3] = c[3,2,3], still contains "
        "G11^d and still excludes G12^d",
    ),
    ("G1", "G06^d", "G12^d", R_G1_B, None, ""),
    ("G2", "N13", "G05^a", R_G2, None, "the target parameter needs a != 0, since G05^0 satisfies the set"),
    ("G2", "N13", "G12^-1", R_G2, None, ""),
]

# G05^a as a refutation target needs a != 0
_TARGET_OVERRIDES = {("G2", "G05^a"): "dim 3; params a (a != 0); e1*e2 = e2; e1*e3 = a*e3;"}


def _build_geo():
    out = []
    for theorem, kind, src, tgt, w, printed, note, samples in _GEO:
        pw = parse_witness(printed) if printed else None
        out.append(GeoEntry(theorem, kind, src, tgt, witness=parse_witness(w), printed_witness=pw, note=note, samples=samples))
    for theorem, src, tgt, R, printed, note in _NONDEG:
        pr = parse_closed_set(printed, 3) if printed else None
        out.append(GeoEntry(theorem, "nondegeneration", src, tgt, closed_set=parse_closed_set(R, 3), printed_closed_set=pr, note=note))
    return tuple(out)


GEO = _build_geo()


def geo_target(g: GeoEntry) -> Algebra:
    override = _TARGET_OVERRIDES.get((g.theorem, g.target_id))
    return parse_algebra(override) if override else get(g.target_id)


# orbit dimensions stated in the geometric proofs, as (theorem, id, value)
# (theorem, id, dim O, family parameters); delta is fixed inside a variety,
# while alpha of G05 runs over the family
ORBIT_DIMS = [
    ("G0", "A07", 9, ()), ("G0", "G05^a", 8, ("a",)), ("G0", "G07", 8, ()),
    ("G1", "A07", 9, ()), ("G1", "G05^a", 8, ("a",)), ("G1", "G07", 8, ()),
    ("G1", "G06^d", 8, ()), ("G1", "G11^d", 8, ()), ("G1", "G12^d", 5, ()),
    ("G2", "A07", 9, ()), ("G2", "N13", 9, ()), ("G2", "G05^a", 8, ("a",)), ("G2", "G12^-1", 5, ()),
]

# rigid components named in each geometric statement
COMPONENTS = {
    "G0": ("A07", "G05^a", "G07"),
    "G1": ("A07", "G05^a", "G06^d", "G07", "G11^d", "G12^d"),
    "G2": ("A07", "N13", "G05^a", "G12^-1"),
}

# isomorphism exceptions: family id, parameter, image of the parameter
ISO_EXCEPTIONS = [("G05^a", "a", "1/a"), ("N05^a", "a", "1/a"), ("L03^a", "a", "1/a")]
ISO_SAMPLES = ("2", "3", "-1", "5", "7")
