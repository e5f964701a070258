"""Algebras given by structure constants and the GL action on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .scalars import ONE, ZERO, ParameterDecl, Scalar, ScalarError, as_scalar, equal_mod, is_zero_mod, merge_params, reduce_mod, relations_of

HALF = as_scalar(Fraction(1, 2))


class DimensionError(ValueError):
    pass


class Algebra:
    """An n-dimensional algebra, ``c[i][j][k]`` is the e_k coordinate of e_i*e_j (0-based)."""

    __slots__ = ("dim", "c", "params", "_hash")

    def __init__(self, dim: int, c=None, params: Iterable[ParameterDecl] = ()):
        if dim < 1:
            raise DimensionError("dimension must be at least 1")
        self.dim = dim
        if c is None:
            c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        if len(c) != dim or any(len(row) != dim or any(len(v) != dim for v in row) for row in c):
            raise DimensionError("structure tensor has the wrong shape")
        self.c = tuple(tuple(tuple(as_scalar(x) for x in v) for v in row) for row in c)
        self.params = tuple(params)
        self._hash = None

    @classmethod
    def from_products(cls, dim: int, products: Mapping, params=()) -> "Algebra":
        """Build from {(i, j): {k: coeff}} with 1-based indices."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in products.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise DimensionError(f"product index ({i},{j}) out of range")
            for k, v in vec.items():
                if not 1 <= k <= dim:
                    raise DimensionError(f"basis index e{k} out of range")
                c[i - 1][j - 1][k - 1] = as_scalar(v)
        return cls(dim, c, params)

    @classmethod
    def zero(cls, dim: int) -> "Algebra":
        return cls(dim)

    def product(self, i: int, j: int) -> tuple:
        """e_i * e_j for 0-based i, j."""
        return self.c[i][j]

    @property
    def relations(self):
        return relations_of(self.params)

    @property
    def param_names(self) -> tuple:
        return tuple(p.name for p in self.params)

    def entries(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    yield (i, j, k), self.c[i][j][k]

    def is_zero(self) -> bool:
        return all(x.is_zero() for _, x in self.entries())

    def map_entries(self, fn, params=None) -> "Algebra":
        n = self.dim
        c = [[[fn(self.c[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        return Algebra(n, c, self.params if params is None else params)

    def substitute(self, bindings: Mapping[str, object], params=None) -> "Algebra":
        """Specialize or reparametrize; ``params`` replaces the declarations."""
        if params is None:
            params = tuple(p for p in self.params if p.name not in bindings)
        return self.map_entries(lambda x: x.substitute(bindings), params)

    def reduce(self) -> "Algebra":
        rels = self.relations
        if not rels:
            return self
        return self.map_entries(lambda x: reduce_mod(x, rels))

    def equals(self, other: "Algebra", relations=()) -> bool:
        """Entrywise equality, optionally modulo radical relations."""
        if self.dim != other.dim:
            return False
        rels = tuple(relations) or relations_of(merge_params(self.params, other.params))
        for (i, j, k), x in self.entries():
            y = other.c[i][j][k]
            if x != y and not equal_mod(x, y, rels):
                return False
        return True

    def first_difference(self, other: "Algebra", relations=()):
        rels = tuple(relations) or relations_of(merge_params(self.params, other.params))
        for (i, j, k), x in self.entries():
            y = other.c[i][j][k]
            if x != y and not equal_mod(x, y, rels):
                return (i, j, k), x, y
        return None

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.c))
        return self._hash

    def __repr__(self):
        return f"Algebra(dim={self.dim}, {self.table()!r})"

    def table(self) -> str:
        lines = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                v = self.c[i][j]
                if any(not x.is_zero() for x in v):
                    lines.append(f"e{i + 1}*e{j + 1} = {format_vector(v)}")
        return "; ".join(lines) if lines else "0"


def format_vector(v, basis="e") -> str:
    parts = []
    for k, x in enumerate(v):
        if x.is_zero():
            continue
        name = f"{basis}{k + 1}"
        s = str(x)
        if s == "1":
            term = name
        elif s == "-1":
            term = f"-{name}"
        elif len(x.num.terms) > 1 and x.den.is_constant() and x.den.constant_value() == 1:
            term = f"({s})*{name}"
        else:
            term = f"{s}*{name}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _check_vec(A: Algebra, v) -> tuple:
    if len(v) != A.dim:
        raise DimensionError(f"vector of length {len(v)} in a {A.dim}-dimensional algebra")
    return tuple(as_scalar(x) for x in v)


def multiply(A: Algebra, x, y) -> tuple:
    x, y = _check_vec(A, x), _check_vec(A, y)
    n = A.dim
    out = [ZERO] * n
    for i in range(n):
        if x[i].is_zero():
            continue
        for j in range(n):
            if y[j].is_zero():
                continue
            s = x[i] * y[j]
            for k, ck in enumerate(A.c[i][j]):
                if not ck.is_zero():
                    out[k] = out[k] + s * ck
    return tuple(out)


def basis_vector(i: int, n: int) -> tuple:
    """0-based e_i."""
    return tuple(ONE if k == i else ZERO for k in range(n))


def in_basis(A: Algebra, P, relations=None) -> Algebra:
    """Structure constants of A in the basis formed by the columns of P."""
    P = linalg.matrix(P)
    n = A.dim
    if len(P) != n or any(len(r) != n for r in P):
        raise DimensionError("basis change has the wrong shape")
    rels = A.relations if relations is None else tuple(relations)
    d = linalg.det(P)
    if is_zero_mod(d, rels):
        raise ScalarError("basis change is not invertible")
    Pinv = linalg.inverse(P, rels)
    cols = linalg.transpose(P)
    c = [[linalg.matvec(Pinv, multiply(A, cols[i], cols[j])) for j in range(n)] for i in range(n)]
    out = Algebra(n, c, A.params)
    return out.reduce() if rels else out


def change_basis(A: Algebra, g) -> Algebra:
    """The transported structure g*mu(x, y) = g mu(g^-1 x, g^-1 y)."""
    g = linalg.matrix(g)
    rels = A.relations
    if is_zero_mod(linalg.det(g), rels):
        raise ScalarError("basis change is not invertible")
    return in_basis(A, linalg.inverse(g, rels))


def commutator_algebra(A: Algebra) -> Algebra:
    n = A.dim
    c = [[[(A.c[i][j][k] - A.c[j][i][k]) * HALF for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(n, c, A.params)


@dataclass(frozen=True)
class FlagSubspace:
    """A_i = span(e_i, ..., e_n); start = n + 1 is the zero subspace."""

    start: int

    def indices(self, n: int) -> range:
        if not 1 <= self.start <= n + 1:
            raise DimensionError(f"flag index {self.start} out of range for dimension {n}")
        return range(self.start - 1, n)


def _as_flag(U) -> FlagSubspace:
    return U if isinstance(U, FlagSubspace) else FlagSubspace(int(U))


def product_span(A: Algebra, U, V) -> list:
    """Products e_i*e_j and e_j*e_i for e_i in U, e_j in V (deduplicated, in order)."""
    U, V = _as_flag(U), _as_flag(V)
    seen, out = set(), []
    for i in U.indices(A.dim):
        for j in V.indices(A.dim):
            for a, b in ((i, j), (j, i)):
                if (a, b) not in seen:
                    seen.add((a, b))
                    out.append(A.c[a][b])
    return out


def one_sided_products(A: Algebra, p: int, q: int) -> list:
    """Spanning products of A_p A_q."""
    n = A.dim
    P, Q = FlagSubspace(p), FlagSubspace(q)
    return [A.c[i][j] for i in P.indices(n) for j in Q.indices(n)]


def in_flag(v, r: int, relations=()) -> bool:
    """v lies in A_r iff its first r-1 coordinates vanish."""
    return all(is_zero_mod(x, relations) for x in v[: r - 1])


def flag_containment(A: Algebra, p: int, q: int, r: int) -> bool:
    """Decide A_p A_q within A_r."""
    FlagSubspace(r).indices(A.dim)
    rels = A.relations
    return all(in_flag(v, r, rels) for v in one_sided_products(A, p, q))


def square_span(A: Algebra, generic=False) -> list:
    """A basis of A*A."""
    vecs = [A.c[i][j] for i in range(A.dim) for j in range(A.dim)]
    return linalg.span_basis(vecs, A.params, generic)
