"""Exact arithmetic in Q(p1, ..., pm).

A :class:`Poly` is a sparse map from exponent vectors to rational
coefficients.  Generator names are kept sorted and only generators that
actually occur are stored, so two polynomials are equal exactly when their
term maps are equal.  A :class:`Scalar` is a reduced fraction of two Polys
whose denominator is monic under graded reverse lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


class ScalarError(ArithmeticError):
    pass


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _union(g1, g2):
    if g1 == g2:
        return g1
    return tuple(sorted(set(g1) | set(g2)))


def _embed(terms, gens, target):
    if gens == target:
        return terms
    pos = [target.index(g) for g in gens]
    width = len(target)
    out = {}
    for e, c in terms.items():
        ne = [0] * width
        for i, x in zip(pos, e):
            ne[i] = x
        out[tuple(ne)] = c
    return out


def _make(terms, gens):
    """Build a Poly from raw terms, dropping zeros and unused generators."""
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        return Poly._zero
    used = [i for i in range(len(gens)) if any(e[i] for e in terms)]
    if len(used) == len(gens):
        return Poly._raw(terms, gens)
    ngens = tuple(gens[i] for i in used)
    return Poly._raw({tuple(e[i] for i in used): c for e, c in terms.items()}, ngens)


class Poly:
    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, value=0):
        value = Fraction(value)
        self.gens = ()
        self.terms = {(): value} if value else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms, gens):
        p = object.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({(1,): Fraction(1)}, (name,))

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, object], gens: Iterable[str]) -> "Poly":
        gens = tuple(gens)
        order = sorted(range(len(gens)), key=lambda i: gens[i])
        sgens = tuple(gens[i] for i in order)
        if len(set(sgens)) != len(sgens):
            raise ValueError("duplicate generator names")
        out = {}
        for e, c in terms.items():
            if len(e) != len(gens) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e!r}")
            key = tuple(e[i] for i in order)
            out[key] = out.get(key, 0) + Fraction(c)
        return _make(out, sgens)

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.gens

    def constant_value(self) -> Fraction:
        if self.gens:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.gens:
            return 0
        i = self.gens.index(var)
        return max(e[i] for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the grevlex-leading term."""
        e = max(self.terms, key=_grevlex_key)
        return e, self.terms[e]

    def lc(self) -> Fraction:
        return self.leading()[1]

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # -- ring operations ------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        gens = _union(self.gens, other.gens)
        out = dict(_embed(self.terms, self.gens, gens))
        for e, c in _embed(other.terms, other.gens, gens).items():
            out[e] = out.get(e, 0) + c
        return _make(out, gens)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly._zero
        return Poly._raw({e: v * c for e, v in self.terms.items()}, self.gens)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly._zero
        if not other.gens:
            return self.scale(other.terms[()])
        if not self.gens:
            return other.scale(self.terms[()])
        gens = _union(self.gens, other.gens)
        a = _embed(self.terms, self.gens, gens)
        b = _embed(other.terms, other.gens, gens)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _make(out, gens)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    @staticmethod
    def one():
        return Poly._one

    # -- division -------------------------------------------------------
    def divmod(self, other: "Poly"):
        """Multivariate division by a single polynomial (grevlex)."""
        if other.is_zero():
            raise ScalarError("division by zero polynomial")
        if not other.gens:
            return self.scale(1 / other.terms[()]), Poly._zero
        gens = _union(self.gens, other.gens)
        rest = dict(_embed(self.terms, self.gens, gens))
        div = _embed(other.terms, other.gens, gens)
        le = max(div, key=_grevlex_key)
        lc = div[le]
        quot, rem = {}, {}
        while rest:
            e = max(rest, key=_grevlex_key)
            c = rest[e]
            if all(x >= y for x, y in zip(e, le)):
                shift = tuple(x - y for x, y in zip(e, le))
                q = c / lc
                quot[shift] = quot.get(shift, 0) + q
                for de, dc in div.items():
                    k = tuple(x + y for x, y in zip(de, shift))
                    v = rest.get(k, 0) - q * dc
                    if v:
                        rest[k] = v
                    else:
                        rest.pop(k, None)
            else:
                rem[e] = c
                del rest[e]
        return _make(quot, gens), _make(rem, gens)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r.terms:
            raise ScalarError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        """True if self divides other."""
        return not other.divmod(self)[1].terms

    # -- helpers --------------------------------------------------------
    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.lc())

    def evaluate(self, values: Mapping[str, Fraction]) -> "Poly":
        """Substitute rational values for some generators."""
        if not any(g in values for g in self.gens):
            return self
        keep = [i for i, g in enumerate(self.gens) if g not in values]
        sub = [(i, Fraction(values[g])) for i, g in enumerate(self.gens) if g in values]
        gens = tuple(self.gens[i] for i in keep)
        out = {}
        for e, c in self.terms.items():
            v = c
            for i, x in sub:
                if e[i]:
                    v *= x ** e[i]
            if v:
                k = tuple(e[i] for i in keep)
                out[k] = out.get(k, 0) + v
        return _make(out, gens)

    def as_univariate(self, var: str) -> dict:
        """Coefficients of self viewed as a polynomial in var."""
        if var not in self.gens:
            return {0: self} if self.terms else {}
        i = self.gens.index(var)
        rest = self.gens[:i] + self.gens[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: _make(t, rest) for d, t in buckets.items()}

    @staticmethod
    def from_univariate(coeffs: Mapping[int, "Poly"], var: str) -> "Poly":
        x = Poly.var(var)
        out = Poly._zero
        for d, c in coeffs.items():
            out = out + c * x ** d
        return out

    def min_degree(self, var: str) -> int:
        if var not in self.gens:
            return 0
        i = self.gens.index(var)
        return min(e[i] for e in self.terms)

    def content_gcd(self):
        """gcd of the monomials dividing every term (as an exponent map)."""
        return {g: self.min_degree(g) for g in self.gens}

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return _format_poly(self)


Poly._zero = Poly._raw({}, ())
Poly._one = Poly._raw({(): Fraction(1)}, ())


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_grevlex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            g if x == 1 else f"{g}^{x}" for g, x in zip(p.gens, e) if x
        )
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# gcd by recursive content / primitive part


def _monomial_gcd(p: Poly, q: Poly) -> Poly:
    exps = {}
    for g in set(p.gens) & set(q.gens):
        k = min(p.min_degree(g), q.min_degree(g))
        if k:
            exps[g] = k
    out = Poly.one()
    for g, k in exps.items():
        out = out * Poly.var(g) ** k
    return out


def _multi_gcd(polys) -> Poly:
    g = Poly._zero
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            return Poly.one()
    return g


def _ugcd_degree(a: list, b: list) -> int:
    """Degree of gcd of two univariate polynomials (coefficient lists, low first)."""

    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(list(a)), trim(list(b))
    while b:
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] / b[-1]
            k = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + k] -= f * c
            r.pop()
            trim(r)
            if not r:
                break
        a, b = b, r
    return len(a) - 1


_PROBES = (3, -5, 7, 2, -11, 13, 17, -19)


def _image_degrees(p: Poly, q: Poly) -> dict:
    """Upper bounds for deg_x gcd(p, q), one per shared variable.

    If a common divisor g had degree k in x, then with the other variables
    specialized where lc_x(p) and lc_x(q) are nonzero, g's image keeps degree
    k and divides both images; so the image gcd degree bounds k.
    """
    out = {}
    for x in (v for v in p.gens if v in q.gens):
        others = sorted((set(p.gens) | set(q.gens)) - {x})
        up, uq = p.as_univariate(x), q.as_univariate(x)
        dp, dq = max(up), max(uq)
        bound = min(dp, dq)
        for shift in range(3):
            pt = {v: Fraction(_PROBES[(i + shift) % len(_PROBES)]) for i, v in enumerate(others)}
            if up[dp].evaluate(pt).is_zero() or uq[dq].evaluate(pt).is_zero():
                continue
            ap = [Fraction(0)] * (dp + 1)
            aq = [Fraction(0)] * (dq + 1)
            for k, c in up.items():
                ap[k] = c.evaluate(pt).constant_value()
            for k, c in uq.items():
                aq[k] = c.evaluate(pt).constant_value()
            bound = min(bound, _ugcd_degree(ap, aq))
            if bound == 0:
                break
        out[x] = bound
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor, normalized to be monic (grevlex)."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return Poly.one()
    if len(p.terms) == 1 or len(q.terms) == 1:
        return _monomial_gcd(p, q)
    if p == q:
        return p.monic()
    bounds = _image_degrees(p, q)
    if all(k == 0 for k in bounds.values()):
        return Poly.one()
    gens = _union(p.gens, q.gens)
    # a variable the gcd cannot contain: the gcd divides both contents in it
    for x in gens:
        if x not in q.gens:
            return poly_gcd(_multi_gcd(p.as_univariate(x).values()), q)
        if x not in p.gens:
            return poly_gcd(p, _multi_gcd(q.as_univariate(x).values()))
        if bounds[x] == 0:
            return poly_gcd(_multi_gcd(p.as_univariate(x).values()), _multi_gcd(q.as_univariate(x).values()))
    small, big = (p, q) if len(p.terms) <= len(q.terms) else (q, p)
    if small.divides(big):
        return small.monic()
    x = min(gens, key=lambda v: (max(p.degree(v), q.degree(v)), v))
    if len(gens) == 1:
        return _univariate_gcd(p, q, x)
    up, uq = p.as_univariate(x), q.as_univariate(x)
    cp, cq = _multi_gcd(up.values()), _multi_gcd(uq.values())
    cont = poly_gcd(cp, cq)
    p, q = p.exact_div(cp), q.exact_div(cq)
    if len(_union(p.gens, q.gens)) == 1:
        g = _univariate_gcd(p, q, x)
    else:
        g = _interpolated_gcd(p, q, x, bounds[x])
    return (cont * g).monic()


def _univariate_gcd(p: Poly, q: Poly, x: str) -> Poly:
    def coeffs(u):
        d = u.as_univariate(x)
        out = [Fraction(0)] * (max(d) + 1)
        for k, c in d.items():
            out[k] = c.constant_value()
        return out

    a, b = coeffs(p), coeffs(q)
    while any(b):
        while b and b[-1] == 0:
            b.pop()
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] / b[-1]
            k = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + k] -= f * c
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return Poly.from_univariate({k: Poly(c) for k, c in enumerate(a) if c}, x).monic()


def _lc_in(p: Poly, x: str) -> Poly:
    u = p.as_univariate(x)
    return u[max(u)]


def _interpolated_gcd(p: Poly, q: Poly, x: str, dx: int) -> Poly:
    """gcd of two polynomials primitive in x, by evaluating one other variable.

    Images at good points are scaled so their leading coefficient in x is
    gamma = gcd(lc_x p, lc_x q) evaluated there, then Newton-interpolated;
    a stable candidate is accepted only after trial division.
    """
    y = max(v for v in _union(p.gens, q.gens) if v != x)
    lp, lq = _lc_in(p, x), _lc_in(q, x)
    gamma = poly_gcd(lp, lq)
    limit = gamma.degree(y) + min(p.degree(y), q.degree(y)) + 1
    yv = Poly.var(y)
    H, nodes, deg = None, [], dx
    v = 0
    while True:
        v += 1
        pt = {y: Fraction(v)}
        gv = gamma.evaluate(pt)
        if lp.evaluate(pt).is_zero() or lq.evaluate(pt).is_zero() or gv.is_zero():
            continue
        img = poly_gcd(p.evaluate(pt), q.evaluate(pt))
        d = img.degree(x) if x in img.gens else 0
        if d > deg:
            continue  # unlucky point
        if d < deg:
            deg, H, nodes = d, None, []  # earlier points were unlucky
        if d == 0:
            return Poly.one()
        lc = _lc_in(img, x)
        scale, rem = gv.divmod(lc)
        if rem.terms:
            continue
        img = img * scale
        if H is None:
            H, nodes = img, [Fraction(v)]
        else:
            at = H.evaluate(pt)
            basis = Poly.one()
            denom = Fraction(1)
            for w in nodes:
                basis = basis * (yv - Poly(w))
                denom *= Fraction(v) - w
            prev = H
            H = H + (img - at) * basis.scale(1 / denom)
            nodes.append(Fraction(v))
            if H == prev or len(nodes) > limit:
                cand = H.exact_div(_multi_gcd(H.as_univariate(x).values()))
                if cand.divides(p) and cand.divides(q):
                    return cand.monic()
                if len(nodes) > 2 * limit + 4:
                    raise ScalarError("gcd interpolation did not converge")


# ---------------------------------------------------------------------------
# Scalars


def _coerce_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


class Scalar:
    """Element of Q(params) held as a reduced fraction."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if isinstance(num, Scalar) and den is None:
            self.num, self.den, self._hash = num.num, num.den, num._hash
            return
        if isinstance(num, str):
            from .parsing import parse_scalar  # local import to avoid a cycle

            s = parse_scalar(num)
            self.num, self.den, self._hash = s.num, s.den, None
            return
        s = normalize(_coerce_poly(num), Poly.one() if den is None else _coerce_poly(den))
        self.num, self.den, self._hash = s.num, s.den, None

    @classmethod
    def _raw(cls, num, den):
        s = object.__new__(cls)
        s.num, s.den, s._hash = num, den, None
        return s

    @classmethod
    def var(cls, name: str) -> "Scalar":
        return cls._raw(Poly.var(name), Poly.one())

    # -- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.constant_value() / self.den.constant_value()

    @property
    def gens(self) -> tuple:
        return _union(self.num.gens, self.den.gens)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        one = Poly.one()
        if self.den == one and other.den == one:
            return Scalar._raw(self.num + other.num, one)
        if self.den == other.den:
            return normalize(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g == one:
            return normalize(self.num * other.den + other.num * self.den, self.den * other.den)
        d1, d2 = self.den.exact_div(g), other.den.exact_div(g)
        return normalize(self.num * d2 + other.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        one = Poly.one()
        if self.den == one and other.den == one:
            return Scalar._raw(self.num * other.num, one)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num, other.den) if g1 == one else (self.num.exact_div(g1), other.den.exact_div(g1))
        n2, d1 = (other.num, self.den) if g2 == one else (other.num.exact_div(g2), self.den.exact_div(g2))
        return _canonical(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ScalarError("division by zero polynomial")
        return _canonical(self.den, self.num)

    def __truediv__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return _canonical(self.num ** k, self.den ** k)

    # -- parameter operations ---------------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Scalar":
        return substitute(self, bindings)

    def limit_at_zero(self, var: str) -> "Scalar":
        return limit_at_zero(self, var)

    def evaluate(self, values: Mapping[str, Fraction]) -> "Scalar":
        den = self.den.evaluate(values)
        if den.is_zero():
            raise ScalarError("singular substitution")
        return normalize(self.num.evaluate(values), den)

    def reduce(self, relations) -> "Scalar":
        return reduce_mod(self, relations)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.den == Poly.one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.terms) > 1 or len(self.den.gens) > 1 or "^" in den or "*" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"


def _canonical(num: Poly, den: Poly) -> Scalar:
    """Make an already-coprime fraction canonical (monic denominator)."""
    if den.is_zero():
        raise ScalarError("division by zero polynomial")
    if num.is_zero():
        return ZERO
    lc = den.lc()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return Scalar._raw(num, den)


def normalize(num: Poly, den: Poly) -> Scalar:
    """Reduced, sign-normalized representative of num/den."""
    if den.is_zero():
        raise ScalarError("division by zero polynomial")
    if num.is_zero():
        return ZERO
    g = poly_gcd(num, den)
    if g != Poly.one():
        num, den = num.exact_div(g), den.exact_div(g)
    return _canonical(num, den)


ZERO = Scalar._raw(Poly._zero, Poly._one)
ONE = Scalar._raw(Poly._one, Poly._one)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x.denominator == 1:
            return Scalar._raw(Poly(x), Poly.one()) if x else ZERO
        return Scalar._raw(Poly(x), Poly.one())
    if isinstance(x, Poly):
        return Scalar._raw(x, Poly.one())
    if isinstance(x, str):
        return Scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def _maybe_scalar(x):
    try:
        return as_scalar(x)
    except TypeError:
        return None


def substitute(s: Scalar, bindings: Mapping[str, object]) -> Scalar:
    """Replace parameters by Scalars and renormalize."""
    bindings = {k: as_scalar(v) for k, v in bindings.items() if k in s.gens}
    if not bindings:
        return s
    num = _subst_poly(s.num, bindings)
    den = _subst_poly(s.den, bindings)
    if den.is_zero():
        raise ScalarError("singular substitution")
    return num / den


def _subst_poly(p: Poly, bindings: Mapping[str, Scalar]) -> Scalar:
    powers: dict = {}

    def power(g, k):
        key = (g, k)
        if key not in powers:
            base = bindings[g] if g in bindings else Scalar.var(g)
            powers[key] = base ** k
        return powers[key]

    # group terms by the exponents of the substituted generators
    sub_idx = [i for i, g in enumerate(p.gens) if g in bindings]
    keep_idx = [i for i, g in enumerate(p.gens) if g not in bindings]
    keep_gens = tuple(p.gens[i] for i in keep_idx)
    groups: dict = {}
    for e, c in p.terms.items():
        groups.setdefault(tuple(e[i] for i in sub_idx), {})[tuple(e[i] for i in keep_idx)] = c
    total = ZERO
    for se, rest in groups.items():
        term = Scalar._raw(_make(rest, keep_gens), Poly.one())
        for i, k in zip(sub_idx, se):
            if k:
                term = term * power(p.gens[i], k)
        total = total + term
    return total


def limit_at_zero(s: Scalar, var: str) -> Scalar:
    """Value at var = 0 of a rational function regular there."""
    if var not in s.den.gens and var not in s.num.gens:
        return s
    if s.den.min_degree(var) > 0:
        raise ScalarError("no finite limit")
    return normalize(s.num.evaluate({var: 0}), s.den.evaluate({var: 0}))


# ---------------------------------------------------------------------------
# parameters, constraints and algebraic relations


@dataclass(frozen=True)
class Relation:
    """Monic algebraic relation var^degree = value used to adjoin radicals."""

    var: str
    degree: int
    value: Poly

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("relation degree must be positive")
        if self.value.degree(self.var) >= self.degree:
            raise ValueError("relation value must have lower degree in its variable")

    @property
    def poly(self) -> Poly:
        return Poly.var(self.var) ** self.degree - self.value

    def reduce_poly(self, p: Poly) -> Poly:
        if self.var not in p.gens or p.degree(self.var) < self.degree:
            return p
        coeffs = p.as_univariate(self.var)
        while coeffs and max(coeffs) >= self.degree:
            top = max(coeffs)
            c = coeffs.pop(top)
            extra = (c * self.value).as_univariate(self.var)
            for d, v in extra.items():
                k = d + top - self.degree
                nv = coeffs.get(k, Poly._zero) + v
                if nv.is_zero():
                    coeffs.pop(k, None)
                else:
                    coeffs[k] = nv
        return Poly.from_univariate(coeffs, self.var)

    def __str__(self):
        return f"{self.var}^{self.degree} = {self.value}"


def reduce_poly(p: Poly, relations: Iterable[Relation]) -> Poly:
    rels = list(relations)
    for _ in range(len(rels) + 1):
        before = p
        for rel in rels:
            p = rel.reduce_poly(p)
        if p == before:
            break
    return p


def reduce_mod(s: Scalar, relations: Iterable[Relation]) -> Scalar:
    """Reduce numerator and denominator modulo the relations.

    The result is not canonical in the quotient ring; use :func:`is_zero_mod`
    or :func:`equal_mod` to compare.
    """
    relations = [r for r in relations if r.var in s.gens]
    if not relations:
        return s
    num = reduce_poly(s.num, relations)
    den = reduce_poly(s.den, relations)
    if den.is_zero():
        raise ScalarError("denominator vanishes modulo the parameter relations")
    return normalize(num, den)


def is_zero_mod(s: Scalar, relations: Iterable[Relation] = ()) -> bool:
    if s.is_zero():
        return True
    relations = [r for r in relations if r.var in s.num.gens]
    if not relations:
        return False
    return reduce_poly(s.num, relations).is_zero()


def equal_mod(x, y, relations: Iterable[Relation] = ()) -> bool:
    return is_zero_mod(as_scalar(x) - as_scalar(y), relations)


@dataclass(frozen=True)
class ParameterDecl:
    """A symbolic parameter with nonvanishing constraints.

    ``relation`` optionally pins the parameter as a radical, e.g. r^2 = a.
    """

    name: str
    constraints: tuple = ()
    relation: Relation | None = None

    def __post_init__(self):
        for c in self.constraints:
            if not isinstance(c, Poly) or c.is_zero():
                raise ValueError(f"constraint on {self.name} must be a nonzero polynomial")
        if self.relation is not None and self.relation.var != self.name:
            raise ValueError("relation must define its own parameter")

    def render(self) -> str:
        conds = [f"{c} != 0" for c in self.constraints]
        if self.relation is not None:
            conds.append(str(self.relation))
        return self.name if not conds else f"{self.name} ({', '.join(conds)})"


def merge_params(*groups) -> tuple:
    """Union of parameter declarations, merging constraints by name."""
    merged: dict[str, ParameterDecl] = {}
    for group in groups:
        for decl in group:
            old = merged.get(decl.name)
            if old is None:
                merged[decl.name] = decl
                continue
            cons = old.constraints + tuple(c for c in decl.constraints if c not in old.constraints)
            rel = old.relation or decl.relation
            if old.relation and decl.relation and old.relation != decl.relation:
                raise ValueError(f"conflicting relations for {decl.name}")
            merged[decl.name] = ParameterDecl(decl.name, cons, rel)
    return tuple(merged[k] for k in sorted(merged))


def relations_of(params: Iterable[ParameterDecl]) -> tuple:
    return tuple(p.relation for p in params if p.relation is not None)


def constraint_polys(params: Iterable[ParameterDecl]) -> list:
    out = []
    for p in params:
        out.extend(p.constraints)
    return out


def provably_nonzero(s: Scalar, params: Iterable[ParameterDecl] = ()) -> bool:
    """True if s cannot vanish at any admissible parameter value.

    The numerator must factor into a nonzero constant times powers of the
    declared constraint polynomials.
    """
    params = list(params)
    rels = relations_of(params)
    num = reduce_poly(s.num, rels) if rels else s.num
    if num.is_zero():
        return False
    if num.is_constant():
        return True
    cons = constraint_polys(params)
    # a radical is nonzero when its defining value is
    for p in params:
        if p.relation is not None and _factors_into(p.relation.value, cons):
            cons.append(Poly.var(p.name))
    return _factors_into(num, cons)


def _factors_into(num: Poly, cons) -> bool:
    if num.is_zero():
        return False
    changed = True
    while changed and not num.is_constant():
        changed = False
        for c in cons:
            if c.is_constant():
                continue
            q, r = num.divmod(c)
            if r.is_zero():
                num, changed = q, True
                if num.is_constant():
                    break
    return num.is_constant()


def _poly_derivative(p: Poly, var: str) -> Poly:
    if var not in p.gens:
        return Poly(0)
    i = p.gens.index(var)
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
    return Poly.from_terms(out, p.gens)


def derivative(s, var: str) -> Scalar:
    """Partial derivative of a rational function (quotient rule)."""
    s = as_scalar(s)
    if var not in s.gens:
        return Scalar(0)
    num = _poly_derivative(s.num, var) * s.den - s.num * _poly_derivative(s.den, var)
    return normalize(num, s.den * s.den)
