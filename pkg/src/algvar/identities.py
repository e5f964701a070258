"""Checking polynomial identities on basis tuples.

Every identity here is multilinear, so it holds on the algebra iff it holds
on all tuples of basis vectors.  A residual is zero only when its numerator
is the zero polynomial (modulo radical relations); constraints never kill a
residual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Algebra
from .scalars import ONE, ZERO, Scalar, as_scalar, is_zero_mod

SYSTEMS = (
    "delta_novikov",
    "commutative",
    "anticommutative",
    "associative",
    "jacobi",
    "lie",
    "metabelian_lie",
    "two_step_nilpotent",
)

# name used for a symbolic delta unless the caller picks another
DELTA = "d"


class NotLieError(ValueError):
    def __init__(self):
        super().__init__("not a Lie algebra")


@dataclass(frozen=True)
class IdentitySystem:
    name: str
    delta: Scalar | None = None

    def __post_init__(self):
        if self.name not in SYSTEMS:
            raise ValueError(f"unknown identity system {self.name!r}")
        if self.name == "delta_novikov" and self.delta is None:
            raise ValueError("delta_novikov needs a delta value")
        if self.delta is not None:
            object.__setattr__(self, "delta", as_scalar(self.delta))

    def __str__(self):
        if self.name == "delta_novikov":
            return f"delta_novikov({self.delta})"
        return self.name


def delta_novikov(delta="symbolic") -> IdentitySystem:
    if isinstance(delta, str) and delta == "symbolic":
        delta = Scalar.var(DELTA)
    return IdentitySystem("delta_novikov", as_scalar(delta))


def system(name: str) -> IdentitySystem:
    return IdentitySystem(name)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    identity: str = ""
    witness: tuple | None = None  # 1-based basis indices
    coordinate: int | None = None  # 1-based
    residual: Scalar | None = None
    failures: int = 0

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "holds"
        args = ", ".join(f"e{i}" for i in self.witness)
        return f"fails: {self.identity} at ({args}), e{self.coordinate} coefficient {self.residual}"


HOLDS = Verdict(True)


class _Expander:
    """Cached products for one algebra."""

    def __init__(self, A: Algebra):
        self.A = A
        self.n = A.dim
        self._right = {}

    def basis_prod(self, i, j):
        return self.A.c[i][j]

    def right(self, u, k):
        """u * e_k."""
        n, c = self.n, self.A.c
        out = [ZERO] * n
        for m, um in enumerate(u):
            if um.is_zero():
                continue
            for l, x in enumerate(c[m][k]):
                if not x.is_zero():
                    out[l] = out[l] + um * x
        return out

    def left(self, i, u):
        """e_i * u."""
        n, c = self.n, self.A.c
        out = [ZERO] * n
        for m, um in enumerate(u):
            if um.is_zero():
                continue
            for l, x in enumerate(c[i][m]):
                if not x.is_zero():
                    out[l] = out[l] + um * x
        return out

    def mul(self, u, v):
        n, c = self.n, self.A.c
        out = [ZERO] * n
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                s = ui * vj
                for l, x in enumerate(c[i][j]):
                    if not x.is_zero():
                        out[l] = out[l] + s * x
        return out

    # (xy)z for basis vectors, cached since most identities reuse it
    def lr(self, i, j, k):
        key = (i, j, k)
        if key not in self._right:
            self._right[key] = self.right(self.A.c[i][j], k)
        return self._right[key]

    def rl(self, i, j, k):
        """x(yz)."""
        return self.left(i, self.A.c[j][k])


def _combo(*terms):
    """Sum of coefficient * vector pairs."""
    n = len(terms[0][1])
    out = [ZERO] * n
    for coeff, vec in terms:
        if coeff.is_zero():
            continue
        for l, x in enumerate(vec):
            if not x.is_zero():
                out[l] = out[l] + (x if coeff == ONE else coeff * x)
    return out


_NEG = -ONE


def _residuals(sys: IdentitySystem, ex: _Expander):
    """Yield (label, witness, residual vector) in lexicographic tuple order."""
    n = ex.n
    name = sys.name
    if name in ("commutative", "anticommutative"):
        sign = _NEG if name == "commutative" else ONE
        for i, j in itertools.product(range(n), repeat=2):
            yield name, (i, j), _combo((ONE, ex.basis_prod(i, j)), (sign, ex.basis_prod(j, i)))
        return
    if name == "lie":
        yield from _residuals(IdentitySystem("anticommutative"), ex)
        yield from _residuals(IdentitySystem("jacobi"), ex)
        return
    if name == "metabelian_lie":
        yield from _residuals(IdentitySystem("lie"), ex)
        for t in itertools.product(range(n), repeat=4):
            i, j, k, l = t
            yield "metabelian", t, ex.mul(ex.basis_prod(i, j), ex.basis_prod(k, l))
        return
    for i, j, k in itertools.product(range(n), repeat=3):
        if name == "associative":
            yield name, (i, j, k), _combo((ONE, ex.lr(i, j, k)), (_NEG, ex.rl(i, j, k)))
        elif name == "jacobi":
            yield name, (i, j, k), _combo((ONE, ex.lr(i, j, k)), (ONE, ex.lr(j, k, i)), (ONE, ex.lr(k, i, j)))
        elif name == "two_step_nilpotent":
            yield "(xy)z = 0", (i, j, k), ex.lr(i, j, k)
            yield "x(yz) = 0", (i, j, k), ex.rl(i, j, k)
        elif name == "delta_novikov":
            d = sys.delta
            yield "delta(xy)z - x(yz) = delta(yx)z - y(xz)", (i, j, k), _combo(
                (d, ex.lr(i, j, k)), (_NEG, ex.rl(i, j, k)), (-d, ex.lr(j, i, k)), (ONE, ex.rl(j, i, k))
            )
            yield "(xy)z = (xz)y", (i, j, k), _combo((ONE, ex.lr(i, j, k)), (_NEG, ex.lr(i, k, j)))


def check(A: Algebra, sys: IdentitySystem, relations=None, count_all=False) -> Verdict:
    """Expand ``sys`` on every basis tuple; report the first nonzero residual."""
    rels = A.relations if relations is None else tuple(relations)
    first, failures = None, 0
    for label, witness, vec in _residuals(sys, _Expander(A)):
        for l, x in enumerate(vec):
            if not is_zero_mod(x, rels):
                failures += 1
                if first is None:
                    first = (label, tuple(w + 1 for w in witness), l + 1, x)
                break
        if first is not None and not count_all:
            break
    if first is None:
        return HOLDS
    label, witness, coord, res = first
    return Verdict(False, label, witness, coord, res, failures)


def check_all(A: Algebra, systems) -> dict:
    return {str(s): check(A, s) for s in systems}


def is_lie(A: Algebra) -> bool:
    return check(A, IdentitySystem("lie")).holds


def is_metabelian(A: Algebra) -> bool:
    """[[A,A],[A,A]] = 0, using the products e_i*e_j as a spanning set of [A,A]."""
    if not is_lie(A):
        raise NotLieError()
    ex = _Expander(A)
    rels = A.relations
    n = A.dim
    span = [A.c[i][j] for i in range(n) for j in range(i + 1, n)]
    span = [v for v in span if any(not x.is_zero() for x in v)]
    for u in span:
        for v in span:
            if any(not is_zero_mod(x, rels) for x in ex.mul(u, v)):
                return False
    return True
