"""Dense exact linear algebra over Q(params).

Matrices are tuples of row tuples of :class:`Scalar`.  Row reduction is
fraction-free (Bareiss) and refuses to pivot on an entry that might vanish
at an admissible parameter value unless asked for the generic answer.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Scalar, ScalarError, as_scalar, is_zero_mod, poly_gcd, provably_nonzero, reduce_mod, relations_of


class CaseSplitError(ArithmeticError):
    """Raised when a rank depends on the parameter values."""

    def __init__(self, entry=None):
        self.entry = entry
        msg = "parameter case split needed"
        if entry is not None:
            msg += f" (pivot {entry} may vanish)"
        super().__init__(msg)


def matrix(rows) -> tuple:
    return tuple(tuple(as_scalar(x) for x in row) for row in rows)


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> tuple:
    return tuple((ZERO,) * c for _ in range(r))


def transpose(m) -> tuple:
    return tuple(zip(*m))


def matmul(a, b) -> tuple:
    bt = transpose(b)
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def matvec(m, v) -> tuple:
    return tuple(_dot(row, v) for row in m)


def _dot(u, v) -> Scalar:
    total = ZERO
    for x, y in zip(u, v):
        if not x.is_zero() and not y.is_zero():
            total = total + x * y
    return total


def det(m) -> Scalar:
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ZERO
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        term = m[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(m) -> tuple:
    n = len(m)
    if n == 1:
        return ((ONE,),)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(r[:j] + r[j + 1:] for k, r in enumerate(m) if k != i)
            d = det(minor)
            row.append(d if (i + j) % 2 == 0 else -d)
        cof.append(tuple(row))
    return transpose(cof)


def inverse(m, relations=()) -> tuple:
    d = det(m)
    if is_zero_mod(d, relations):
        raise ScalarError("matrix is not invertible")
    dinv = d.inverse()
    return tuple(tuple(x * dinv for x in row) for row in adjugate(m))


def _choose_pivot(rows, col, start, params, generic, excluded):
    rels = relations_of(params)
    candidates = []
    for r in range(start, len(rows)):
        x = rows[r][col]
        if x.is_zero():
            continue
        if rels:
            x = reduce_mod(x, rels)
            rows[r][col] = x
            if is_zero_mod(x, rels):
                rows[r][col] = ZERO
                continue
        candidates.append(r)
    if not candidates:
        return None
    for r in candidates:
        if rows[r][col].is_constant():
            return r
    for r in candidates:
        if provably_nonzero(rows[r][col], params):
            return r
    if not generic:
        raise CaseSplitError(rows[candidates[0]][col])
    best = min(candidates, key=lambda r: len(rows[r][col].num.terms))
    _exclude(excluded, rows[best][col].num)
    return best


def _exclude(excluded, p):
    """Record the part of p not already covered by earlier excluded factors."""
    for e in excluded:
        g = poly_gcd(p, e)
        while not g.is_constant():
            p = p.exact_div(g)
            g = poly_gcd(p, e)
    if not p.is_constant():
        excluded.append(p.monic())


def echelon(m, params=(), generic=False):
    """Fraction-free row echelon form.

    Returns (rows, pivot_columns, excluded) where ``excluded`` lists the
    numerators of pivots that were assumed nonzero (generic mode only).
    """
    rows = [list(r) for r in m]
    params = list(params)
    pivots, excluded = [], []
    ncols = len(rows[0]) if rows else 0
    prev = ONE
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        p = _choose_pivot(rows, c, r, params, generic, excluded)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for k in range(r + 1, len(rows)):
            a = rows[k][c]
            if a.is_zero():
                if prev != ONE or piv != ONE:
                    rows[k] = [(piv * x) / prev for x in rows[k]]
                continue
            rows[k] = [(piv * x - a * y) / prev for x, y in zip(rows[k], rows[r])]
            rows[k][c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots, excluded


def rank(m, params=(), generic=False) -> int:
    if not m:
        return 0
    return len(echelon(m, params, generic)[1])


def nullspace(m, params=(), generic=False, ncols=None):
    """Basis of {x : m x = 0} and the list of excluded pivot numerators."""
    if not m:
        n = ncols or 0
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)], []
    n = len(m[0])
    rows, pivots, excluded = echelon(m, params, generic)
    rows = rows[: len(pivots)]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for i in reversed(range(len(pivots))):
            pc = pivots[i]
            s = ZERO
            for c in range(pc + 1, n):
                if not rows[i][c].is_zero() and not x[c].is_zero():
                    s = s + rows[i][c] * x[c]
            x[pc] = -s / rows[i][pc]
        basis.append(tuple(x))
    return basis, excluded


def span_basis(vectors: Iterable[Sequence[Scalar]], params=(), generic=False) -> list:
    """A linearly independent subset spanning the same space."""
    vectors = [tuple(as_scalar(x) for x in v) for v in vectors]
    basis = []
    for v in vectors:
        if all(x.is_zero() for x in v):
            continue
        if rank(basis + [v], params, generic) > len(basis):
            basis.append(v)
    return basis


def in_span(v, basis, params=(), generic=False) -> bool:
    return rank(list(basis) + [tuple(v)], params, generic) == rank(list(basis), params, generic)
