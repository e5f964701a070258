"""A small Buchberger engine over Q with optional cofactor tracking.

Polynomials are handled internally as dicts {exponent tuple: Fraction} over
a fixed variable list.  Public entry points accept and return
:class:`algvar.scalars.Poly`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .scalars import Poly, poly_gcd


class GroebnerBudgetExceeded(RuntimeError):
    pass


@dataclass
class Budget:
    max_pairs: int = 20000
    max_degree: int = 40
    max_terms: int = 20000

    def __post_init__(self):
        self.pairs = 0


def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex(e):
    return e


ORDERS = {"grevlex": _grevlex, "lex": _lex}


class _Ring:
    def __init__(self, variables, order):
        self.vars = tuple(variables)
        self.n = len(self.vars)
        self.key = ORDERS[order]
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.zero_exp = (0,) * self.n

    def convert(self, p: Poly) -> dict:
        pos = []
        for g in p.gens:
            if g not in self.index:
                raise ValueError(f"variable {g} is not in the ring")
            pos.append(self.index[g])
        out = {}
        for e, c in p.terms.items():
            ee = [0] * self.n
            for k, x in zip(pos, e):
                ee[k] = x
            out[tuple(ee)] = Fraction(c)
        return out

    def back(self, d: dict) -> Poly:
        return Poly.from_terms(d, self.vars)

    def lead(self, p: dict):
        return max(p, key=self.key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _sub_mul(p: dict, c: Fraction, shift, q: dict):
    """p -= c * x^shift * q, in place."""
    for e, v in q.items():
        m = tuple(x + y for x, y in zip(e, shift))
        nv = p.get(m, 0) - c * v
        if nv:
            p[m] = nv
        else:
            p.pop(m, None)


class _Elem:
    __slots__ = ("p", "lm", "lc", "cof")

    def __init__(self, p, lm, cof):
        self.p, self.lm, self.cof = p, lm, cof
        self.lc = p[lm]


def _normalize(ring, p, cof):
    lm = ring.lead(p)
    lc = p[lm]
    if lc != 1:
        inv = 1 / lc
        p = {e: v * inv for e, v in p.items()}
        if cof is not None:
            cof = [{e: v * inv for e, v in h.items()} for h in cof]
    return _Elem(p, lm, cof)


def _reduce(ring, p: dict, cof, basis, budget, full=True):
    """Normal form of p modulo basis elements (list of _Elem)."""
    p = dict(p)
    cof = None if cof is None else [dict(h) for h in cof]
    rem = {}
    while p:
        m = ring.lead(p)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                shift = tuple(x - y for x, y in zip(m, g.lm))
                coeff = c / g.lc
                _sub_mul(p, coeff, shift, g.p)
                if cof is not None:
                    for h, hg in zip(cof, g.cof):
                        _sub_mul(h, coeff, shift, hg)
                break
        else:
            if not full:
                rem.update(p)
                break
            rem[m] = c
            del p[m]
        if len(p) > budget.max_terms:
            raise GroebnerBudgetExceeded("term budget exhausted")
    return rem, cof


def _spoly(ring, f: _Elem, g: _Elem):
    L = _lcm(f.lm, g.lm)
    sf = tuple(x - y for x, y in zip(L, f.lm))
    sg = tuple(x - y for x, y in zip(L, g.lm))
    p = {}
    _sub_mul(p, Fraction(-1) / f.lc, sf, f.p)
    _sub_mul(p, Fraction(1) / g.lc, sg, g.p)
    cof = None
    if f.cof is not None:
        cof = [dict() for _ in f.cof]
        for h, hf, hg in zip(cof, f.cof, g.cof):
            _sub_mul(h, Fraction(-1) / f.lc, sf, hf)
            _sub_mul(h, Fraction(1) / g.lc, sg, hg)
    return p, cof


@dataclass
class GroebnerResult:
    basis: list
    variables: tuple
    order: str
    is_unit: bool
    cofactors: list | None = None  # sum(h_i * f_i) = 1 when is_unit and tracked
    pairs: int = 0


def groebner(polys, variables, order="grevlex", budget: Budget | None = None, track=False) -> GroebnerResult:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    budget = budget or Budget()
    budget.pairs = 0
    ring = _Ring(variables, order)
    inputs = [ring.convert(p) for p in polys]
    m = len(inputs)
    elems: list[_Elem] = []
    pairs: set = set()
    G: list[int] = []

    def unit_result(e: _Elem):
        cof = None
        if e.cof is not None:
            inv = 1 / e.p[e.lm]
            cof = [ring.back({k: v * inv for k, v in h.items()}) for h in e.cof]
        return GroebnerResult([Poly(1)], ring.vars, order, True, cof, budget.pairs)

    def add(p, cof):
        nonlocal G, pairs
        e = _normalize(ring, p, cof)
        if max(map(sum, e.p)) > budget.max_degree:
            raise GroebnerBudgetExceeded("degree budget exhausted")
        elems.append(e)
        h = len(elems) - 1
        G, pairs = _update(elems, G, pairs, h)
        return e

    for idx, p in enumerate(inputs):
        if not p:
            continue
        cof = None
        if track:
            cof = [dict() for _ in range(m)]
            cof[idx] = {ring.zero_exp: Fraction(1)}
        current = [elems[i] for i in G]
        r, rc = _reduce(ring, p, cof, current, budget)
        if not r:
            continue
        e = add(r, rc)
        if e.lm == ring.zero_exp:
            return unit_result(e)

    while pairs:
        pair = min(pairs, key=lambda ij: (ring.key(_lcm(elems[ij[0]].lm, elems[ij[1]].lm)), ij))
        pairs.discard(pair)
        budget.pairs += 1
        if budget.pairs > budget.max_pairs:
            raise GroebnerBudgetExceeded("pair budget exhausted")
        s, sc = _spoly(ring, elems[pair[0]], elems[pair[1]])
        if not s:
            continue
        r, rc = _reduce(ring, s, sc, [elems[i] for i in G], budget)
        if not r:
            continue
        e = add(r, rc)
        if e.lm == ring.zero_exp:
            return unit_result(e)

    # interreduce
    final = [elems[i] for i in G]
    final.sort(key=lambda e: ring.key(e.lm))
    reduced = []
    for i, e in enumerate(final):
        others = final[:i] + final[i + 1:]
        r, _ = _reduce(ring, e.p, None, [o for o in others], budget)
        if r:
            reduced.append(_normalize(ring, r, None))
    reduced.sort(key=lambda e: ring.key(e.lm), reverse=True)
    return GroebnerResult([ring.back(e.p) for e in reduced], ring.vars, order, False, None, budget.pairs)


def _update(elems, G, B, h):
    lh = elems[h].lm
    C = [(g, h) for g in G]
    D = []
    while C:
        g, _ = C.pop()
        lg = elems[g].lm
        L = _lcm(lg, lh)
        if _coprime(lg, lh) or not any(_divides(_lcm(elems[g1].lm, lh), L) for g1, _ in C + D):
            D.append((g, h))
    E = {(g, h) for g, h in D if not _coprime(elems[g].lm, lh)}
    newB = set()
    for g1, g2 in B:
        L = _lcm(elems[g1].lm, elems[g2].lm)
        if _divides(lh, L) and _lcm(elems[g1].lm, lh) != L and _lcm(elems[g2].lm, lh) != L:
            continue
        newB.add((g1, g2))
    newB |= E
    newG = [g for g in G if not _divides(lh, elems[g].lm)]
    newG.append(h)
    return newG, newB


def verify_certificate(polys, cofactors) -> bool:
    """Check sum(h_i * f_i) == 1 by direct expansion."""
    if cofactors is None or len(cofactors) != len(polys):
        return False
    total = Poly(0)
    for h, f in zip(cofactors, polys):
        if not h.is_zero():
            total = total + h * f
    return total == Poly(1)


def normal_form(p: Poly, basis, variables, order="grevlex") -> Poly:
    ring = _Ring(variables, order)
    elems = [_normalize(ring, ring.convert(g), None) for g in basis if not g.is_zero()]
    r, _ = _reduce(ring, ring.convert(p), None, elems, Budget())
    return ring.back(r)


# ---------------------------------------------------------------------------
# rational solutions


def _divisors(n: int, limit=10 ** 7):
    n = abs(n)
    if n == 0:
        return [0]
    small, large = [], []
    r = isqrt(n)
    if r > limit:
        return None
    for d in range(1, r + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Poly, var: str) -> list:
    """Distinct rational roots of a univariate polynomial, sorted."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    if set(p.gens) - {var}:
        raise ValueError("polynomial is not univariate")
    coeffs = {e[0] if e else 0: Fraction(c) for e, c in p.terms.items()}
    roots = set()
    if min(coeffs) > 0:
        roots.add(Fraction(0))
        k = min(coeffs)
        coeffs = {d - k: c for d, c in coeffs.items()}
    if max(coeffs) == 0:
        return sorted(roots)
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = {d: int(c * den) for d, c in coeffs.items()}
    a0, an = ints.get(0, 0), ints[max(ints)]
    ps, qs = _divisors(a0), _divisors(an)
    if ps is None or qs is None:
        return sorted(roots)
    deg = max(ints)
    for q in qs:
        for pp in ps:
            for sign in (1, -1):
                x = Fraction(sign * pp, q)
                if x in roots:
                    continue
                val = sum(c * x ** d for d, c in ints.items())
                if val == 0:
                    roots.add(x)
                    if len(roots) >= deg + 1:
                        return sorted(roots)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _substitute(p: Poly, var: str, value: Fraction) -> Poly:
    return p.evaluate({var: value})


def solve_rational(polys, variables, rng: random.Random | None = None, budget: Budget | None = None, tries=3, free_range=3):
    """Search for a rational point of V(polys) by lex elimination and back substitution.

    Variables absent from every univariate eliminant are set to small random
    integers.  Returns {var: Fraction} or None when nothing was found.
    """
    rng = rng or random.Random(0)
    variables = list(variables)
    polys = [p for p in polys if not p.is_zero()]
    if any(p.is_constant() for p in polys):
        return None
    if not variables:
        return {} if not polys else None
    used = set()
    for p in polys:
        used.update(p.gens)
    # variables that appear nowhere are free
    free = [v for v in variables if v not in used]
    if free:
        v = free[0]
        rest = [w for w in variables if w != v]
        sol = solve_rational(polys, rest, rng, budget, tries, free_range)
        if sol is None:
            return None
        sol[v] = Fraction(rng.randint(-free_range, free_range))
        return sol
    gb = groebner(polys, variables, "lex", budget=_fresh(budget))
    if gb.is_unit:
        return None
    last = variables[-1]
    uni = [g for g in gb.basis if set(g.gens) <= {last}]
    if uni:
        g = uni[0]
        for other in uni[1:]:
            g = poly_gcd(g, other)
        candidates = rational_roots(g, last)
        if not candidates:
            return None
    else:
        candidates = []
        seen = set()
        while len(candidates) < tries:
            x = Fraction(rng.randint(-free_range, free_range))
            if x not in seen or len(seen) > 2 * free_range:
                candidates.append(x)
                seen.add(x)
    for x in candidates:
        sub = [_substitute(p, last, x) for p in gb.basis]
        sol = solve_rational(sub, variables[:-1], rng, budget, tries, free_range)
        if sol is not None:
            sol[last] = x
            return sol
    return None


def _fresh(budget):
    if budget is None:
        return Budget()
    return Budget(budget.max_pairs, budget.max_degree, budget.max_terms)
