"""Degenerations via parametrized bases, and non-degenerations via
Borel-stable closed sets with Groebner infeasibility certificates."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .algebra import Algebra, flag_containment, in_basis
from .groebner import Budget, GroebnerBudgetExceeded, groebner, solve_rational, verify_certificate
from .invariants import derivations
from .scalars import (
    ONE,
    ZERO,
    ParameterDecl,
    Poly,
    Scalar,
    ScalarError,
    as_scalar,
    equal_mod,
    is_zero_mod,
    limit_at_zero,
    merge_params,
    reduce_mod,
    relations_of,
)

T = "t"


# ---------------------------------------------------------------------------
# degenerations


@dataclass(frozen=True)
class DegenerationWitness:
    """Rows of ``basis`` are the coordinates of E_1^t, ..., E_n^t."""

    basis: tuple
    index_subst: tuple = ()  # ((param, Scalar), ...)
    params: tuple = ()
    var: str = T

    def __post_init__(self):
        object.__setattr__(self, "basis", linalg.matrix(self.basis))
        subst = self.index_subst.items() if isinstance(self.index_subst, Mapping) else self.index_subst
        object.__setattr__(self, "index_subst", tuple((k, as_scalar(v)) for k, v in subst))
        object.__setattr__(self, "params", tuple(self.params))

    @property
    def bindings(self) -> dict:
        return dict(self.index_subst)


@dataclass(frozen=True)
class DegenerationVerdict:
    verified: bool
    reason: str = ""
    entry: tuple | None = None
    limit: Algebra | None = None

    def __bool__(self):
        return self.verified


def apply_index(source: Algebra, w: DegenerationWitness) -> Algebra:
    if not w.index_subst:
        return source
    names = source.param_names
    for k, _ in w.index_subst:
        if k not in names:
            raise ValueError(f"source has no parameter {k!r}")
    kept = tuple(p for p in source.params if p.name not in w.bindings)
    return source.substitute(w.bindings, params=kept)


def verify_degeneration(source: Algebra, target: Algebra, w: DegenerationWitness) -> DegenerationVerdict:
    if source.dim != target.dim or len(w.basis) != source.dim:
        raise ValueError("dimension mismatch")
    src = apply_index(source, w)
    params = merge_params(src.params, target.params, w.params)
    rels = relations_of(params)
    src = Algebra(src.dim, src.c, params)
    P = linalg.transpose(w.basis)
    try:
        moved = in_basis(src, P, rels)
    except ScalarError as exc:
        return DegenerationVerdict(False, str(exc))
    n = src.dim
    limit = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), x in moved.entries():
        if rels:
            x = reduce_mod(x, rels)
        try:
            v = limit_at_zero(x, w.var)
        except ScalarError:
            return DegenerationVerdict(False, f"no finite limit at entry ({i + 1},{j + 1},{k + 1})", (i + 1, j + 1, k + 1))
        limit[i][j][k] = v
        y = target.c[i][j][k]
        if not equal_mod(v, y, rels):
            return DegenerationVerdict(
                False, f"mismatch at entry ({i + 1},{j + 1},{k + 1}): limit {v}, expected {y}", (i + 1, j + 1, k + 1)
            )
    return DegenerationVerdict(True, "verified", None, Algebra(n, limit, params))


# ---------------------------------------------------------------------------
# closed sets


@dataclass(frozen=True)
class ClosedConditionSet:
    """Containments (p, q, r) meaning A_p A_q within A_r, and homogeneous linear
    equations given as {(i, j, k): coeff} (1-based) summing to zero."""

    containments: tuple = ()
    linear_eqs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "containments", tuple(tuple(c) for c in self.containments))
        eqs = []
        for eq in self.linear_eqs:
            items = eq.items() if isinstance(eq, Mapping) else eq
            eqs.append(tuple(sorted((tuple(k), Fraction(v)) for k, v in items if v)))
        object.__setattr__(self, "linear_eqs", tuple(eqs))

    def validate(self, n: int):
        for p, q, r in self.containments:
            for x in (p, q, r):
                if not 1 <= x <= n + 1:
                    raise ValueError(f"flag index {x} out of range for dimension {n}")
        for eq in self.linear_eqs:
            for (i, j, k), _ in eq:
                if not all(1 <= x <= n for x in (i, j, k)):
                    raise ValueError(f"c[{i},{j},{k}] out of range for dimension {n}")

    def conditions(self, c, n):
        """Expressions that must vanish, over a tensor c indexed 0-based."""
        out = []
        for p, q, r in self.containments:
            for i in range(p - 1, n):
                for j in range(q - 1, n):
                    for k in range(r - 1):
                        out.append(c[i][j][k])
        for eq in self.linear_eqs:
            total = ZERO
            for (i, j, k), v in eq:
                total = total + c[i - 1][j - 1][k - 1] * v
            out.append(total)
        return out


def satisfies(A: Algebra, R: ClosedConditionSet) -> bool:
    R.validate(A.dim)
    rels = A.relations
    return all(is_zero_mod(x, rels) for x in R.conditions(A.c, A.dim))


def _generic_member(R: ClosedConditionSet, n: int):
    """Most general tensor satisfying R, as polynomials in free variables."""
    names = [f"c{i + 1}{j + 1}{k + 1}" for i in range(n) for j in range(n) for k in range(n)]
    idx = {name: m for m, name in enumerate(names)}
    rows = []
    for p, q, r in R.containments:
        for i in range(p - 1, n):
            for j in range(q - 1, n):
                for k in range(r - 1):
                    row = [ZERO] * len(names)
                    row[idx[f"c{i + 1}{j + 1}{k + 1}"]] = ONE
                    rows.append(tuple(row))
    for eq in R.linear_eqs:
        row = [ZERO] * len(names)
        for (i, j, k), v in eq:
            m = idx[f"c{i}{j}{k}"]
            row[m] = row[m] + as_scalar(v)
        rows.append(tuple(row))
    if rows:
        basis, _ = linalg.nullspace(rows, ncols=len(names))
    else:
        basis = [tuple(ONE if a == b else ZERO for a in range(len(names))) for b in range(len(names))]
    coords = [ZERO] * len(names)
    for b, vec in enumerate(basis):
        s = Scalar.var(f"f{b}")
        for m, x in enumerate(vec):
            if not x.is_zero():
                coords[m] = coords[m] + s * x
    return [[[coords[(i * n + j) * n + k] for k in range(n)] for j in range(n)] for i in range(n)]


def is_borel_stable(R: ClosedConditionSet, n: int) -> bool:
    """Conjugate a generic member of R by a generic flag-preserving matrix.

    The flag is A_i = span(e_i, ..., e_n); the matrices preserving it are
    lower triangular in the column convention used by ``in_basis``.  The
    determinant is cleared by using the adjugate instead of the inverse.
    """
    R.validate(n)
    if not R.containments and not R.linear_eqs:
        return True
    c = _generic_member(R, n)
    P = [[Scalar.var(f"p{i + 1}{j + 1}") if i >= j else ZERO for j in range(n)] for i in range(n)]
    adj = linalg.adjugate(P)
    cols = linalg.transpose(P)
    A = Algebra(n, c)
    from .algebra import multiply

    moved = [[linalg.matvec(adj, multiply(A, cols[i], cols[j])) for j in range(n)] for i in range(n)]
    return all(x.is_zero() for x in R.conditions(moved, n))


# ---------------------------------------------------------------------------
# refutation


@dataclass
class CellCertificate:
    permutation: tuple
    variables: tuple
    polys: list
    cofactors: list

    def verify(self) -> bool:
        return verify_certificate(self.polys, self.cofactors)

    def to_json(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "variables": list(self.variables),
            "generators": [str(p) for p in self.polys],
            "cofactors": [str(h) for h in self.cofactors],
        }


@dataclass
class RefutationVerdict:
    status: str  # refuted | member | unknown
    certificates: list = field(default_factory=list)
    witness: tuple | None = None  # basis matrix P (columns = new basis vectors)
    detail: str = ""

    def __bool__(self):
        return self.status == "refuted"

    def to_json(self) -> dict:
        out = {"status": self.status, "detail": self.detail}
        if self.certificates:
            out["cells"] = [c.to_json() for c in self.certificates]
        if self.witness is not None:
            out["witness"] = [[str(x) for x in row] for row in self.witness]
        return out


def _param_equations(params, denominators):
    """Polynomials encoding parameter constraints, relations and nonzero denominators."""
    eqs, aux = [], []
    seen = set()
    k = 0
    for p in params:
        if p.relation is not None:
            eqs.append(p.relation.poly)
        for c in p.constraints:
            if c.is_constant() or c in seen:
                continue
            seen.add(c)
            z = f"z{k}"
            k += 1
            aux.append(z)
            eqs.append(Poly.var(z) * c - Poly(1))
    for d in denominators:
        if d.is_constant() or d in seen:
            continue
        seen.add(d)
        z = f"z{k}"
        k += 1
        aux.append(z)
        eqs.append(Poly.var(z) * d - Poly(1))
    return eqs, aux


def _numerators(exprs):
    polys, dens = [], []
    for x in exprs:
        if x.is_zero():
            continue
        polys.append(x.num)
        if not x.den.is_constant():
            dens.append(x.den)
    return polys, dens


def _perm_matrix(perm, n):
    """Column j of the matrix is e_{perm[j]}."""
    return [[ONE if perm[j] == i else ZERO for j in range(n)] for i in range(n)]


def _cell_system(B: Algebra, R: ClosedConditionSet, perm):
    n = B.dim
    uvars = [f"u{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
    U = [[ONE if i == j else (Scalar.var(f"u{i + 1}{j + 1}") if j > i else ZERO) for j in range(n)] for i in range(n)]
    W = _perm_matrix(perm, n)
    P = linalg.matmul(U, W)
    # U^-1 is polynomial (unipotent) and W^-1 = W^T
    Pinv = linalg.matmul(linalg.transpose(W), _unipotent_inverse(U))
    cols = linalg.transpose(P)
    from .algebra import multiply

    moved = [[linalg.matvec(Pinv, multiply(B, cols[i], cols[j])) for j in range(n)] for i in range(n)]
    rels = B.relations
    exprs = R.conditions(moved, n)
    if rels:
        exprs = [reduce_mod(x, rels) for x in exprs]
    return uvars, exprs, P


def _unipotent_inverse(U):
    n = len(U)
    N = [[U[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
    inv = linalg.identity(n)
    power = linalg.identity(n)
    sign = -1
    for _ in range(n - 1):
        power = linalg.matmul(power, N)
        inv = tuple(tuple(a + b * sign for a, b in zip(r, s)) for r, s in zip(inv, power))
        sign = -sign
    return inv


def _direct_system(B: Algebra, R: ClosedConditionSet):
    n = B.dim
    gvars = [f"g{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    P = [[Scalar.var(f"g{i + 1}{j + 1}") for j in range(n)] for i in range(n)]
    adj = linalg.adjugate(P)
    det = linalg.det(P)
    cols = linalg.transpose(P)
    from .algebra import multiply

    moved = [[linalg.matvec(adj, multiply(B, cols[i], cols[j])) for j in range(n)] for i in range(n)]
    exprs = R.conditions(moved, n)
    rels = B.relations
    if rels:
        exprs = [reduce_mod(x, rels) for x in exprs]
    return gvars, exprs, det


def refute_membership(
    B: Algebra,
    R: ClosedConditionSet,
    strategy: str = "cells",
    budget: Budget | None = None,
    seed: int = 0,
    search_member: bool = True,
) -> RefutationVerdict:
    """Decide whether some basis of B satisfies R.

    ``cells``: by B-stability of R it suffices to test P = u w with u upper
    unipotent and w a permutation matrix (one Bruhat cell per w), so no
    determinant variable is needed.  ``direct``: the 9 entries of g plus
    y*det(g) - 1.
    """
    R.validate(B.dim)
    if satisfies(B, R):
        return RefutationVerdict("member", witness=linalg.identity(B.dim), detail="structure already satisfies the conditions")
    pnames = list(B.param_names)
    rng = random.Random(seed)
    n = B.dim
    if strategy == "direct":
        gvars, exprs, det = _direct_system(B, R)
        polys, dens = _numerators(exprs)
        peqs, aux = _param_equations(B.params, dens)
        system = polys + peqs + [Poly.var("y") * det.num - Poly(1)]
        variables = gvars + ["y"] + pnames + aux
        return _decide([(None, variables, system, None)], B, R, budget, rng, search_member)
    if strategy != "cells":
        raise ValueError(f"unknown strategy {strategy!r}")
    cells = []
    for perm in itertools.permutations(range(n)):
        uvars, exprs, P = _cell_system(B, R, perm)
        polys, dens = _numerators(exprs)
        peqs, aux = _param_equations(B.params, dens)
        cells.append((perm, uvars + pnames + aux, polys + peqs, P))
    return _decide(cells, B, R, budget, rng, search_member)


def _decide(cells, B, R, budget, rng, search_member):
    certs = []
    open_cells = []
    for perm, variables, system, P in cells:
        try:
            res = groebner(system, variables, budget=_copy(budget))
        except GroebnerBudgetExceeded as exc:
            return RefutationVerdict("unknown", detail=f"budget exhausted: {exc}")
        if not res.is_unit:
            open_cells.append((perm, variables, system, P))
            if not search_member:
                return RefutationVerdict("unknown", detail="a cell is consistent")
            break
        certs.append((perm, variables, system))
    if not open_cells:
        out = []
        for perm, variables, system in certs:
            res = groebner(system, variables, budget=_copy(budget), track=True)
            cert = CellCertificate(tuple(perm) if perm is not None else (), tuple(variables), system, res.cofactors)
            if not cert.verify():
                return RefutationVerdict("unknown", detail="certificate failed to verify")
            out.append(cert)
        return RefutationVerdict("refuted", out, detail=f"{len(out)} cell(s) inconsistent")
    perm, variables, system, P = open_cells[0]
    try:
        sol = solve_rational(system, variables, rng, _copy(budget))
    except GroebnerBudgetExceeded:
        sol = None
    if sol is not None:
        if P is None:
            n = B.dim
            P = [[Scalar.var(f"g{i + 1}{j + 1}") for j in range(n)] for i in range(n)]
        vals = {k: v for k, v in sol.items()}
        if not B.param_names:
            Pn = [[x.substitute(vals) for x in row] for row in P]
            try:
                if satisfies(in_basis(B, Pn), R):
                    return RefutationVerdict("member", witness=linalg.matrix(Pn), detail="rational witness found")
            except ScalarError:
                pass
    return RefutationVerdict("unknown", detail="a cell is consistent but no verified witness was found")


def _copy(budget):
    if budget is None:
        return Budget()
    return Budget(budget.max_pairs, budget.max_degree, budget.max_terms)


# ---------------------------------------------------------------------------


@dataclass
class NondegenerationVerdict:
    status: str  # verified | member | failed | unknown
    source_satisfies: bool
    borel_stable: bool
    refutation: RefutationVerdict | None
    der_source: int | None = None
    der_target: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.status == "verified"

    @property
    def derivation_obstruction(self):
        """True when der_dim(source) >= der_dim(target) alone rules out the degeneration."""
        if self.der_source is None or self.der_target is None:
            return None
        return self.der_source >= self.der_target

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "source_satisfies": self.source_satisfies,
            "borel_stable": self.borel_stable,
            "refutation": self.refutation.to_json() if self.refutation else None,
            "der_source": self.der_source,
            "der_target": self.der_target,
            "detail": self.detail,
        }


def _der_dim(A):
    try:
        return derivations(A, generic=True).dimension
    except ArithmeticError:
        return None


def verify_nondegeneration(source: Algebra, B: Algebra, R: ClosedConditionSet, budget=None, seed=0) -> NondegenerationVerdict:
    src_ok = satisfies(source, R)
    stable = is_borel_stable(R, source.dim)
    ds, dt = _der_dim(source), _der_dim(B)
    if satisfies(B, R):
        ref = RefutationVerdict("member", witness=linalg.identity(B.dim), detail="target satisfies the conditions")
        return NondegenerationVerdict("member", src_ok, stable, ref, ds, dt, "not applicable: target lies in the closed set")
    if not src_ok:
        return NondegenerationVerdict("failed", src_ok, stable, None, ds, dt, "source does not satisfy the conditions")
    if not stable:
        return NondegenerationVerdict("failed", src_ok, stable, None, ds, dt, "conditions are not Borel-stable")
    ref = refute_membership(B, R, budget=budget, seed=seed)
    status = {"refuted": "verified", "member": "failed", "unknown": "unknown"}[ref.status]
    return NondegenerationVerdict(status, src_ok, stable, ref, ds, dt, ref.detail)
