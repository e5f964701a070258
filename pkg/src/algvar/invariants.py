"""Derivations, orbit dimensions, invariant profiles and ideal search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .algebra import Algebra, in_basis, multiply
from .linalg import CaseSplitError
from .scalars import ONE, ZERO, Poly, Scalar, as_scalar, derivative, is_zero_mod, provably_nonzero, substitute


@dataclass(frozen=True)
class DerivationResult:
    dimension: int
    basis: tuple  # n x n matrices, column j = D(e_j)
    excluded: tuple = ()  # pivot numerators assumed nonzero (generic mode)


def derivation_system(A: Algebra) -> list:
    """Rows of the linear system in the n^2 unknowns D[r][s] (index r*n + s)."""
    n, c = A.dim, A.c
    rows = []
    for i, j, k in itertools.product(range(n), repeat=3):
        row = [ZERO] * (n * n)
        # D(e_i e_j)_k = sum_m c_ij^m D[k][m]
        for m in range(n):
            x = c[i][j][m]
            if not x.is_zero():
                row[k * n + m] = row[k * n + m] + x
        # minus (D e_i) e_j = sum_m D[m][i] c_mj^k
        for m in range(n):
            x = c[m][j][k]
            if not x.is_zero():
                row[m * n + i] = row[m * n + i] - x
        # minus e_i (D e_j) = sum_m D[m][j] c_im^k
        for m in range(n):
            x = c[i][m][k]
            if not x.is_zero():
                row[m * n + j] = row[m * n + j] - x
        if any(not x.is_zero() for x in row):
            rows.append(tuple(row))
    return rows


def derivations(A: Algebra, generic=False) -> DerivationResult:
    n = A.dim
    rows = derivation_system(A)
    vecs, excluded = linalg.nullspace(rows, A.params, generic, ncols=n * n)
    basis = tuple(tuple(tuple(v[r * n + s] for s in range(n)) for r in range(n)) for v in vecs)
    excl = tuple(dict.fromkeys(p.monic() for p in excluded))
    return DerivationResult(len(basis), basis, excl)


def is_derivation(A: Algebra, D) -> bool:
    n = A.dim
    rels = A.relations
    cols = linalg.transpose(D)
    for i in range(n):
        for j in range(n):
            lhs = linalg.matvec(D, A.c[i][j])
            r1 = multiply(A, cols[i], _e(j, n))
            r2 = multiply(A, _e(i, n), cols[j])
            if any(not is_zero_mod(a - b - c, rels) for a, b, c in zip(lhs, r1, r2)):
                return False
    return True


def _e(i, n):
    return tuple(ONE if k == i else ZERO for k in range(n))


def orbit_dimension(A: Algebra, generic=False, family=(), at=None) -> int:
    """n^2 - dim Der, or with `family` the dimension of the union of orbits.

    For a family, the tangent map of (g, params) -> g.A is the orbit tangent
    D -> D.A together with d(mu)/d(param); its rank at a generic point (or at
    the specialization `at`) is the dimension of the union of orbits.
    """
    if not family:
        B = A.substitute(at, params=_kept(A, at)) if at else A
        return B.dim ** 2 - derivations(B, generic).dimension
    n = A.dim
    cols = []
    for i, j, k in itertools.product(range(n), repeat=3):
        row = [ZERO] * (n * n)
        for m in range(n):
            row[k * n + m] = row[k * n + m] + A.c[i][j][m]
            row[m * n + i] = row[m * n + i] - A.c[m][j][k]
            row[m * n + j] = row[m * n + j] - A.c[i][m][k]
        row += [derivative(A.c[i][j][k], p) for p in family]
        cols.append(row)
    if at:
        cols = [[substitute(x, at) for x in row] for row in cols]
        params = _kept(A, at)
    else:
        params = A.params
    return linalg.rank(cols, params, generic)


def _kept(A, at):
    return tuple(p for p in A.params if p.name not in (at or {}))


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class InvariantProfile:
    dim_square: int
    dim_annihilator: int
    der_dim: int
    trace_data: tuple
    extra: tuple = ()

    def as_dict(self) -> dict:
        d = {
            "dim_square": self.dim_square,
            "dim_annihilator": self.dim_annihilator,
            "der_dim": self.der_dim,
        }
        d.update(dict(self.trace_data))
        d.update(dict(self.extra))
        return d

    def differences(self, other: "InvariantProfile") -> list:
        a, b = self.as_dict(), other.as_dict()
        return [k for k in a if a[k] != b.get(k)]


def _left_op(A: Algebra, i: int):
    """Matrix of x -> e_i x (column j = e_i e_j)."""
    n = A.dim
    return tuple(tuple(A.c[i][j][k] for j in range(n)) for k in range(n))


def _right_op(A: Algebra, i: int):
    n = A.dim
    return tuple(tuple(A.c[j][i][k] for j in range(n)) for k in range(n))


def _trace(m) -> Scalar:
    total = ZERO
    for i in range(len(m)):
        total = total + m[i][i]
    return total


def annihilator(A: Algebra, generic=False) -> list:
    """Basis of {x : xA = Ax = 0}."""
    n = A.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(A.c[i][j][k] for i in range(n)))
            rows.append(tuple(A.c[j][i][k] for i in range(n)))
    rows = [r for r in rows if any(not x.is_zero() for x in r)]
    return linalg.nullspace(rows, A.params, generic, ncols=n)[0]


def _products_of_spans(A: Algebra, U, V) -> list:
    return [multiply(A, u, v) for u in U for v in V]


def _span_dim(A, vecs, generic):
    return len(linalg.span_basis(vecs, A.params, generic))


def _trace_form_rank(A: Algebra, ops, generic) -> int:
    n = A.dim
    gram = [[_trace(linalg.matmul(ops[i], ops[j])) for j in range(n)] for i in range(n)]
    return linalg.rank(gram, A.params, generic)


def spectral_ratio(A: Algebra):
    """p1(x)^2 / p2(x) for the generic left multiplication L_x, if free of x.

    p1 and p2 are the first two elementary symmetric functions of the
    eigenvalues of L_x.  Returns the Scalar, or a marker string.
    """
    n = A.dim
    xs = [Scalar.var(f"_x{i}") for i in range(n)]
    L = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        op = _left_op(A, i)
        for r in range(n):
            for s in range(n):
                if not op[r][s].is_zero():
                    L[r][s] = L[r][s] + xs[i] * op[r][s]
    p1 = _trace(L)
    p2 = ZERO
    for r in range(n):
        for s in range(r + 1, n):
            p2 = p2 + L[r][r] * L[s][s] - L[r][s] * L[s][r]
    if p2.is_zero():
        return "p1=0,p2=0" if p1.is_zero() else "p2=0"
    ratio = p1 * p1 / p2
    if any(g.startswith("_x") for g in ratio.gens):
        return "nonconstant"
    return ratio


def profile(A: Algebra, generic=False) -> InvariantProfile:
    n = A.dim
    everything = [_e(i, n) for i in range(n)]
    sq = linalg.span_basis([A.c[i][j] for i in range(n) for j in range(n)], A.params, generic)
    sq2 = _span_dim(A, _products_of_spans(A, sq, sq), generic) if sq else 0
    a_sq = _span_dim(A, _products_of_spans(A, everything, sq) + _products_of_spans(A, sq, everything), generic) if sq else 0
    ann = annihilator(A, generic)
    der = derivations(A, generic)
    lefts = [_left_op(A, i) for i in range(n)]
    rights = [_right_op(A, i) for i in range(n)]
    ltr = [_trace(m) for m in lefts]
    rtr = [_trace(m) for m in rights]
    trace_data = (
        ("left_trace_nonzero", any(not is_zero_mod(x, A.relations) for x in ltr)),
        ("right_trace_nonzero", any(not is_zero_mod(x, A.relations) for x in rtr)),
        ("left_trace_form_rank", _trace_form_rank(A, lefts, generic)),
        ("right_trace_form_rank", _trace_form_rank(A, rights, generic)),
    )
    comm = all((A.c[i][j][k] - A.c[j][i][k]).is_zero() for i in range(n) for j in range(n) for k in range(n))
    ratio = spectral_ratio(A)
    extra = (
        ("dim_square_square", sq2),
        ("dim_algebra_times_square", a_sq),
        ("commutative", comm),
        ("spectral_ratio", str(ratio)),
    )
    return InvariantProfile(len(sq), len(ann), der.dimension, trace_data, extra)


# ---------------------------------------------------------------------------
# ideals


def _closure_ok(A: Algebra, basis, generic) -> bool:
    """A*I + I*A within span(basis)."""
    n = A.dim
    k = len(basis)
    for v in basis:
        for i in range(n):
            for w in (multiply(A, _e(i, n), v), multiply(A, v, _e(i, n))):
                if all(x.is_zero() for x in w):
                    continue
                if linalg.rank(list(basis) + [w], A.params, generic) != k:
                    return False
    return True


def is_ideal(A: Algebra, basis, generic=False) -> bool:
    basis = linalg.span_basis(basis, A.params, generic)
    return bool(basis) and _closure_ok(A, basis, generic)


def _rational_eigenvalues(m) -> list:
    """Eigenvalues of a constant matrix that are rational numbers."""
    from fractions import Fraction

    from .groebner import rational_roots

    n = len(m)
    lam = Scalar.var("_lam")
    shifted = [[m[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
    cp = linalg.det(shifted)
    if not cp.is_polynomial():
        return []
    return [as_scalar(r) for r in rational_roots(cp.num, "_lam")]


def _candidate_subspaces(A: Algebra, generic):
    n = A.dim
    yield "A*A", linalg.span_basis([A.c[i][j] for i in range(n) for j in range(n)], A.params, generic)
    yield "annihilator", annihilator(A, generic)
    for i in range(n):
        for side, op in (("L", _left_op(A, i)), ("R", _right_op(A, i))):
            yield f"ker {side}(e{i + 1})", linalg.nullspace(op, A.params, generic, ncols=n)[0]
            yield f"im {side}(e{i + 1})", linalg.span_basis(linalg.transpose(op), A.params, generic)
            if all(x.is_constant() for row in op for x in row):
                for lam in _rational_eigenvalues(op):
                    shifted = [[op[r][s] - (lam if r == s else ZERO) for s in range(n)] for r in range(n)]
                    yield f"eigenspace {side}(e{i + 1}) for {lam}", linalg.nullspace(shifted, A.params, generic, ncols=n)[0]
    for size in range(1, n):
        for idx in itertools.combinations(range(n), size):
            name = "span{" + ", ".join(f"e{i + 1}" for i in idx) + "}"
            yield name, [_e(i, n) for i in idx]


def find_proper_ideal(A: Algebra, generic=False):
    """A verified ideal 0 != I != A, as (description, basis), or None."""
    n = A.dim
    if n < 2:
        return None
    seen = set()
    for name, basis in _candidate_subspaces(A, generic):
        if not 0 < len(basis) < n:
            continue
        key = tuple(basis)
        if key in seen:
            continue
        seen.add(key)
        if _closure_ok(A, basis, generic):
            return name, basis
    return None


def describe_subspace(basis) -> str:
    from .algebra import format_vector

    return "span{" + ", ".join(format_vector(v) for v in basis) + "}"


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass(frozen=True)
class IsomorphismResult:
    g: tuple  # change_basis(A, g) == B
    P: tuple  # columns are the new basis vectors, P = g^-1
    structure: str


def _perm_matrix_scalars(perm, n):
    """Column j is e_{perm[j]}."""
    return [[ONE if perm[j] == i else ZERO for j in range(n)] for i in range(n)]


def _candidate_shapes(n):
    """(name, variables, matrix builder) in increasing generality."""
    diag = [f"x{i}" for i in range(n)]
    upper = [f"u{i}{j}" for i in range(n) for j in range(i + 1, n)]
    full = [f"g{i}{j}" for i in range(n) for j in range(n)]
    yield "identity", None, [], lambda: linalg.identity(n)
    for perm in itertools.permutations(range(n)):
        W = _perm_matrix_scalars(perm, n)

        def pd(W=W):
            D = [[Scalar.var(diag[i]) if i == j else ZERO for j in range(n)] for i in range(n)]
            return linalg.matmul(W, D)

        yield "permutation*diagonal", perm, diag, pd
    for perm in itertools.permutations(range(n)):
        W = _perm_matrix_scalars(perm, n)

        def pdu(W=W):
            D = [[Scalar.var(diag[i]) if i == j else ZERO for j in range(n)] for i in range(n)]
            U = [[ONE if i == j else (Scalar.var(f"u{i}{j}") if j > i else ZERO) for j in range(n)] for i in range(n)]
            return linalg.matmul(linalg.matmul(W, D), U)

        yield "permutation*diagonal*unipotent", perm, diag + upper, pdu
    yield "general", None, full, lambda: [[Scalar.var(full[i * n + j]) for j in range(n)] for i in range(n)]


def _iso_equations(A: Algebra, B: Algebra, P) -> list:
    """Numerators of mu_A(Pe_i, Pe_j) - P c^B_ij."""
    n = A.dim
    cols = linalg.transpose(P)
    eqs = []
    for i in range(n):
        for j in range(n):
            lhs = multiply(A, cols[i], cols[j])
            rhs = linalg.matvec(P, B.c[i][j])
            for a, b in zip(lhs, rhs):
                d = a - b
                if not d.is_zero():
                    eqs.append(d.num)
    return eqs


def find_isomorphism(A: Algebra, B: Algebra, budget=None, seed=0, use_profiles=True):
    """Search for g with change_basis(A, g) == B.

    Returns an IsomorphismResult (always verified exactly) or None.  None is
    not a proof of non-isomorphism unless the profiles differ.
    """
    import random

    from .algebra import change_basis
    from .groebner import Budget, GroebnerBudgetExceeded, solve_rational

    if A.dim != B.dim:
        return None
    if A.params or B.params:
        raise ValueError("isomorphism search needs specialized parameters")
    if use_profiles and profile(A) != profile(B):
        return None
    n = A.dim
    if isinstance(budget, int):
        budget = Budget(max_pairs=budget)
    rng = random.Random(seed)
    for name, perm, variables, build in _candidate_shapes(n):
        P = build()
        eqs = _iso_equations(A, B, P)
        if not variables:
            if eqs:
                continue
            sol = {}
        else:
            det = linalg.det(P)
            y = "_ydet"
            eqs.append((Scalar.var(y) * det - ONE).num)
            try:
                sol = solve_rational(eqs, variables + [y], rng, budget)
            except GroebnerBudgetExceeded:
                continue
            if sol is None:
                continue
        Pn = [[x.substitute({k: v for k, v in sol.items()}) for x in row] for row in P]
        if linalg.det(Pn).is_zero():
            continue
        if in_basis(A, Pn) != B:
            continue
        g = linalg.inverse(Pn)
        assert change_basis(A, g) == B
        return IsomorphismResult(tuple(map(tuple, g)), tuple(map(tuple, Pn)), name)
    return None


@dataclass
class NonIsomorphismCertificate:
    """sum(cofactors[i] * polys[i]) == 1 where polys encode P^-1 A P = B, det(P) y = 1."""

    variables: tuple
    polys: list
    cofactors: list

    def verify(self) -> bool:
        from .groebner import verify_certificate

        return verify_certificate(self.polys, self.cofactors)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "generators": [str(p) for p in self.polys],
            "cofactors": [str(h) for h in self.cofactors],
        }


def non_isomorphism_certificate(A: Algebra, B: Algebra, budget=None):
    """An ideal-membership proof that no invertible P maps A onto B, or None."""
    from .groebner import Budget, GroebnerBudgetExceeded, groebner

    if A.params or B.params:
        raise ValueError("isomorphism search needs specialized parameters")
    if isinstance(budget, int):
        budget = Budget(max_pairs=budget)
    name, _, variables, build = list(_candidate_shapes(A.dim))[-1]
    P = build()
    eqs = _iso_equations(A, B, P)
    eqs.append((Scalar.var("_ydet") * linalg.det(P) - ONE).num)
    eqs = [p for p in eqs if not p.is_zero()]
    variables = tuple(variables) + ("_ydet",)
    try:
        gb = groebner(eqs, list(variables), "grevlex", budget=budget or Budget(max_pairs=5000), track=True)
    except GroebnerBudgetExceeded:
        return None
    if not gb.is_unit:
        return None
    cert = NonIsomorphismCertificate(variables, eqs, list(gb.cofactors))
    return cert if cert.verify() else None
