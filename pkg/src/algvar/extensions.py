"""Symmetric cocycles on Lie algebras, extensions and the automorphism action."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg
from .algebra import Algebra, DimensionError, in_basis
from .identities import IdentitySystem, check, delta_novikov, is_lie
from .scalars import ONE, ZERO, ParameterDecl, Scalar, ScalarError, as_scalar, equal_mod, is_zero_mod, merge_params, reduce_mod, relations_of


class NotSymmetricError(ValueError):
    pass


@dataclass(frozen=True)
class SymBilinearForm:
    b: tuple

    def __post_init__(self):
        b = linalg.matrix(self.b)
        n = len(b)
        if any(len(r) != n for r in b):
            raise DimensionError("bilinear form must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if b[i][j] != b[j][i]:
                    raise NotSymmetricError(f"form is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.b)

    def __call__(self, x, y) -> Scalar:
        total = ZERO
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if not yj.is_zero() and not self.b[i][j].is_zero():
                    total = total + xi * yj * self.b[i][j]
        return total

    def __add__(self, other):
        return SymBilinearForm(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.b, other.b)))

    def scale(self, c) -> "SymBilinearForm":
        c = as_scalar(c)
        return SymBilinearForm(tuple(tuple(x * c for x in r) for r in self.b))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.b for x in r)

    def components(self) -> dict:
        """{(i, j): coeff} over the basis forms D[i,j], i <= j, 1-based."""
        out = {}
        for i in range(self.n):
            for j in range(i, self.n):
                if not self.b[i][j].is_zero():
                    out[(i + 1, j + 1)] = self.b[i][j]
        return out


def zero_form(n: int) -> SymBilinearForm:
    return SymBilinearForm(linalg.zeros(n, n))


def delta_form(i: int, j: int, n: int) -> SymBilinearForm:
    """Basis form D[i,j] (1-based): 1 at (i,j) and (j,i)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"D[{i},{j}] out of range for dimension {n}")
    m = [[ZERO] * n for _ in range(n)]
    m[i - 1][j - 1] = ONE
    m[j - 1][i - 1] = ONE
    return SymBilinearForm(tuple(tuple(r) for r in m))


@dataclass(frozen=True)
class CocycleTriple:
    forms: tuple
    params: tuple = ()

    def __post_init__(self):
        forms = tuple(f if isinstance(f, SymBilinearForm) else SymBilinearForm(f) for f in self.forms)
        if not forms:
            raise DimensionError("a cocycle needs at least one form")
        n = len(forms)
        if any(f.n != n for f in forms):
            raise DimensionError("each form must act on the same space as the number of forms")
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "params", tuple(self.params))

    @property
    def n(self) -> int:
        return len(self.forms)

    @classmethod
    def from_components(cls, comps: Sequence[dict], params=()) -> "CocycleTriple":
        """comps[k] maps (i, j) to the coefficient of D[i,j] in B_{k+1}."""
        n = len(comps)
        forms = []
        for comp in comps:
            f = zero_form(n)
            for (i, j), c in comp.items():
                f = f + delta_form(i, j, n).scale(c)
            forms.append(f)
        return cls(tuple(forms), params)

    @classmethod
    def zero(cls, n: int) -> "CocycleTriple":
        return cls(tuple(zero_form(n) for _ in range(n)))

    def equals(self, other: "CocycleTriple", relations=None) -> bool:
        if self.n != other.n:
            return False
        rels = relations_of(merge_params(self.params, other.params)) if relations is None else tuple(relations)
        for f, g in zip(self.forms, other.forms):
            for r, s in zip(f.b, g.b):
                for x, y in zip(r, s):
                    if x != y and not equal_mod(x, y, rels):
                        return False
        return True

    def __str__(self):
        return "(" + ", ".join(format_form(f) for f in self.forms) + ")"


def format_form(f: SymBilinearForm) -> str:
    parts = []
    for (i, j), c in f.components().items():
        s = str(c)
        name = f"D[{i},{j}]"
        if s == "1":
            parts.append(name)
        elif s == "-1":
            parts.append(f"-{name}")
        elif len(c.num.terms) > 1 and c.is_polynomial():
            parts.append(f"({s})*{name}")
        else:
            parts.append(f"{s}*{name}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _require_lie(L: Algebra):
    if not is_lie(L):
        raise ValueError("not a Lie algebra")


def extend(L: Algebra, theta: CocycleTriple) -> Algebra:
    """The product x*y = [x,y] + theta(x,y)."""
    _require_lie(L)
    n = L.dim
    if theta.n != n:
        raise DimensionError("cocycle dimension does not match the Lie algebra")
    c = [[[L.c[i][j][k] + theta.forms[k].b[i][j] for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(n, c, merge_params(L.params, theta.params))


def is_cocycle(L: Algebra, theta: CocycleTriple, delta) -> bool:
    sys = delta if isinstance(delta, IdentitySystem) else delta_novikov(delta)
    return check(extend(L, theta), sys).holds


def act(theta: CocycleTriple, phi, params=()) -> CocycleTriple:
    """theta*phi, with components B'_i = sum_j b_ij phi^T B_j phi and b = phi^-1."""
    phi = linalg.matrix(phi)
    n = theta.n
    if len(phi) != n:
        raise DimensionError("matrix size does not match the cocycle")
    all_params = merge_params(theta.params, params)
    rels = relations_of(all_params)
    if is_zero_mod(linalg.det(phi), rels):
        raise ScalarError("matrix is not invertible")
    b = linalg.inverse(phi, rels)
    phit = linalg.transpose(phi)
    conj = [linalg.matmul(linalg.matmul(phit, f.b), phi) for f in theta.forms]
    forms = []
    for i in range(n):
        m = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            if b[i][j].is_zero():
                continue
            for r in range(n):
                for s in range(n):
                    x = conj[j][r][s]
                    if not x.is_zero():
                        m[r][s] = m[r][s] + b[i][j] * x
        if rels:
            m = [[reduce_mod(x, rels) for x in row] for row in m]
        forms.append(SymBilinearForm(tuple(tuple(r) for r in m)))
    return CocycleTriple(tuple(forms), all_params)


def is_automorphism(L: Algebra, phi, params=()) -> bool:
    rels = relations_of(merge_params(L.params, params))
    phi = linalg.matrix(phi)
    if is_zero_mod(linalg.det(phi), rels):
        return False
    return in_basis(L, phi, rels).equals(L, rels)
