"""Text formats for algebras, cocycles, degeneration witnesses and closed sets.

All formats are ';'-terminated statement lists with '#' comments::

    dim 3;
    params a (a != 0);
    symmetry: commutative;        # optional, fills in e_j*e_i from e_i*e_j
    e1*e2 = e2; e1*e3 = a*e3;

    params a1, a2;
    theta = (0, a1*D[1,1] + D[1,2], a2*D[1,1]);   # or B1 = [[...]]; B2 = ...

    params a (a != 0), s (s^2 = -a);
    E1 = t*e1 + 1/(s*t)*e2; E2 = -s*t*e1 + t*e3; E3 = e3;
    index a = s;

    A1*A3 + A3*A1 <= A3; A2^2 <= A3; c[1,2,1] = c[2,1,1];
"""

from __future__ import annotations

import re
from fractions import Fraction

from .. import linalg
from ..algebra import Algebra, format_vector
from ..extensions import CocycleTriple, NotSymmetricError, SymBilinearForm, format_form
from ..geometry import ClosedConditionSet, DegenerationWitness
from ..parsing import ExprParser, Linear, ParseError, Token, parse_params, split_statements, tokenize
from ..scalars import ONE, ZERO, Scalar, merge_params

_BASIS = re.compile(r"e(\d+)$")
_ROW = re.compile(r"E(\d+)$")
_FORM = re.compile(r"B(\d+)$")
_FLAG = re.compile(r"A(\d+)$")


def _tok_err(msg, tok):
    return ParseError(msg, tok.line, tok.col)


class _Resolver:
    """Name lookup: declared parameters, basis vectors, D[i,j], c[i,j,k]."""

    def __init__(self, params=(), basis=False, forms=False, consts=False, free=()):
        self.names = {p.name for p in params} | set(free)
        self.basis, self.forms, self.consts = basis, forms, consts

    def __call__(self, tok: Token, p: ExprParser):
        name = tok.text
        m = _BASIS.match(name)
        if self.basis and m:
            return Linear("e", {int(m.group(1)): ONE})
        if self.forms and name == "D" and p.peek().text == "[":
            p.next()
            i = p.int_index()
            p.expect(",")
            j = p.int_index()
            p.expect("]")
            return Linear("D", {(min(i, j), max(i, j)): ONE})
        if self.consts and name == "c" and p.peek().text == "[":
            p.next()
            idx = [p.int_index()]
            for _ in range(2):
                p.expect(",")
                idx.append(p.int_index())
            p.expect("]")
            return Linear("c", {tuple(idx): ONE})
        if name in self.names:
            return Scalar.var(name)
        raise _tok_err(f"undeclared parameter {name!r}", tok)


def _expr(tokens, resolver):
    return ExprParser(tokens, resolver).parse_full()


def _head(stmt):
    return stmt[0].text if stmt else ""


def _dim_stmt(stmt) -> int:
    if len(stmt) != 2 or stmt[1].kind != "num":
        raise _tok_err("expected 'dim <n>'", stmt[0])
    n = int(stmt[1].text)
    if n < 1:
        raise _tok_err("dimension must be at least 1", stmt[1])
    return n


def _split_at(stmt, text):
    for i, tok in enumerate(stmt):
        if tok.text == text:
            return stmt[:i], stmt[i + 1 :], tok
    return None


def _vector(value, n, tok) -> tuple:
    """Coordinates of a parsed e-combination (or the scalar 0)."""
    if isinstance(value, Scalar):
        if value.is_zero():
            return tuple([ZERO] * n)
        raise _tok_err("expected a combination of basis vectors", tok)
    if value.kind != "e":
        raise _tok_err("expected a combination of basis vectors", tok)
    out = [ZERO] * n
    for k, v in value.coeffs.items():
        if not 1 <= k <= n:
            raise _tok_err(f"basis vector e{k} out of range for dimension {n}", tok)
        out[k - 1] = v
    return tuple(out)


# ---------------------------------------------------------------------------
# detection


def detect_kind(text: str) -> str:
    stmts = split_statements(tokenize(text))
    for s in stmts:
        h = _head(s)
        if h == "index" or _ROW.match(h):
            return "witness"
        if h == "theta" or _FORM.match(h):
            return "cocycle"
        if _FLAG.match(h) or h == "c" or any(t.text == "<=" for t in s):
            return "closed_set"
        if _BASIS.match(h) or h == "symmetry":
            return "algebra"
    return "algebra"


def parse(text: str):
    """Parse any of the four formats, picking the kind from the statements used."""
    kind = detect_kind(text)
    return {
        "algebra": parse_algebra,
        "cocycle": parse_cocycle,
        "witness": parse_witness,
        "closed_set": parse_closed_set,
    }[kind](text)


# ---------------------------------------------------------------------------
# algebras


def parse_algebra(text: str) -> Algebra:
    stmts = split_statements(tokenize(text))
    dim, params, symmetry = None, [], None
    products = {}
    for s in stmts:
        h = _head(s)
        if h == "dim":
            if dim is not None:
                raise _tok_err("duplicate 'dim'", s[0])
            dim = _dim_stmt(s)
        elif h == "params":
            params = merge_params(params, parse_params(s[1:]))
        elif h == "symmetry":
            if len(s) != 3 or s[1].text != ":" or s[2].text not in ("commutative", "anticommutative"):
                raise _tok_err("expected 'symmetry: commutative' or 'symmetry: anticommutative'", s[0])
            symmetry = s[2].text
        elif _BASIS.match(h):
            if dim is None:
                raise _tok_err("'dim' must come before the products", s[0])
            parts = _split_at(s, "=")
            if parts is None:
                raise _tok_err("expected 'ei*ej = ...'", s[0])
            lhs, rhs, eq = parts
            if len(lhs) != 3 or lhs[1].text != "*" or not _BASIS.match(lhs[2].text):
                raise _tok_err("left side must be a product of two basis vectors", s[0])
            i, j = int(_BASIS.match(lhs[0].text).group(1)), int(_BASIS.match(lhs[2].text).group(1))
            for k, tok in ((i, lhs[0]), (j, lhs[2])):
                if not 1 <= k <= dim:
                    raise _tok_err(f"basis vector e{k} out of range for dimension {dim}", tok)
            if (i, j) in products:
                raise _tok_err(f"duplicate product e{i}*e{j}", s[0])
            if not rhs:
                raise _tok_err("missing right-hand side", eq)
            value = _expr(rhs, _Resolver(params, basis=True))
            products[(i, j)] = (_vector(value, dim, rhs[0]), s[0])
        else:
            raise _tok_err(f"unexpected statement {h!r}", s[0])
    if dim is None:
        raise ParseError("missing 'dim' statement", 1, 1)
    c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), (v, _) in products.items():
        c[i - 1][j - 1] = list(v)
    if symmetry is not None:
        sign = ONE if symmetry == "commutative" else -ONE
        for (i, j), (v, tok) in products.items():
            mirrored = tuple(x * sign for x in v)
            if i == j:
                if symmetry == "anticommutative" and any(not x.is_zero() for x in v):
                    raise _tok_err(f"e{i}*e{i} must vanish in an anticommutative algebra", tok)
                continue
            other = products.get((j, i))
            if other is not None and other[0] != mirrored:
                raise _tok_err(f"e{j}*e{i} contradicts the {symmetry} symmetry", other[1])
            c[j - 1][i - 1] = list(mirrored)
    return Algebra(dim, c, tuple(params))


def _params_line(params) -> str:
    return "params " + ", ".join(p.render() for p in params) + ";"


def render_algebra(A: Algebra) -> str:
    lines = [f"dim {A.dim};"]
    if A.params:
        lines.append(_params_line(A.params))
    n = A.dim
    for i in range(n):
        for j in range(n):
            v = A.c[i][j]
            if any(not x.is_zero() for x in v):
                lines.append(f"e{i + 1}*e{j + 1} = {format_vector(v)};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# cocycles


def _form_from_linear(value, n, tok) -> SymBilinearForm:
    if isinstance(value, Scalar):
        if value.is_zero():
            return SymBilinearForm(linalg.zeros(n, n))
        raise _tok_err("expected a combination of D[i,j]", tok)
    if value.kind != "D":
        raise _tok_err("expected a combination of D[i,j]", tok)
    m = [[ZERO] * n for _ in range(n)]
    for (i, j), v in value.coeffs.items():
        if not (1 <= i <= n and 1 <= j <= n):
            raise _tok_err(f"D[{i},{j}] out of range for dimension {n}", tok)
        m[i - 1][j - 1] = v
        m[j - 1][i - 1] = v
    return SymBilinearForm(tuple(tuple(r) for r in m))


def _split_top(tokens, sep=","):
    """Split a token list on top-level separators (outside brackets)."""
    parts, cur, depth = [], [], 0
    for tok in tokens:
        if tok.text in ("(", "["):
            depth += 1
        elif tok.text in (")", "]"):
            depth -= 1
        if tok.text == sep and depth == 0:
            parts.append(cur)
            cur = []
        else:
            cur.append(tok)
    parts.append(cur)
    return parts


def _matrix_tokens(tokens, resolver, where) -> tuple:
    if len(tokens) < 2 or tokens[0].text != "[" or tokens[-1].text != "]":
        raise _tok_err("expected a matrix [[...], ...]", tokens[0] if tokens else where)
    rows = []
    for part in _split_top(tokens[1:-1]):
        if len(part) < 2 or part[0].text != "[" or part[-1].text != "]":
            raise _tok_err("expected a matrix row [...]", part[0] if part else where)
        row = []
        for cell in _split_top(part[1:-1]):
            if not cell:
                raise _tok_err("empty matrix entry", part[0])
            v = _expr(cell, resolver)
            if not isinstance(v, Scalar):
                raise _tok_err("matrix entries must be scalars", cell[0])
            row.append(v)
        rows.append(tuple(row))
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise _tok_err("matrix rows have different lengths", tokens[0])
    return tuple(rows)


def parse_matrix(text: str, params=(), free=None) -> tuple:
    """Parse ``[[1, 0], [a, 1]]``; names must be declared unless ``free`` is True."""
    toks = tokenize(text)[:-1]
    if free is None:
        free = not params
    resolver = None if free else _Resolver(params)
    if not toks:
        raise ParseError("empty matrix", 1, 1)
    return _matrix_tokens(toks, resolver, toks[0])


def render_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m) + "]"


def parse_cocycle(text: str) -> CocycleTriple:
    stmts = split_statements(tokenize(text))
    dim, params = None, []
    theta, forms = None, {}
    for s in stmts:
        h = _head(s)
        if h == "dim":
            dim = _dim_stmt(s)
        elif h == "params":
            params = merge_params(params, parse_params(s[1:]))
        elif h == "theta":
            if len(s) < 3 or s[1].text != "=" or s[2].text != "(" or s[-1].text != ")":
                raise _tok_err("expected 'theta = (B1, ..., Bn)'", s[0])
            comps = _split_top(s[3:-1])
            n = dim or len(comps)
            if len(comps) != n:
                raise _tok_err(f"theta needs {n} components", s[0])
            theta = []
            for comp in comps:
                if not comp:
                    raise _tok_err("empty component", s[2])
                theta.append(_form_from_linear(_expr(comp, _Resolver(params, forms=True)), n, comp[0]))
        elif _FORM.match(h):
            if len(s) < 3 or s[1].text != "=":
                raise _tok_err("expected 'Bk = [[...]]'", s[0])
            k = int(_FORM.match(h).group(1))
            m = _matrix_tokens(s[2:], _Resolver(params), s[1])
            try:
                forms[k] = SymBilinearForm(m)
            except NotSymmetricError as exc:
                raise _tok_err(f"non-symmetric form B{k}: {exc}", s[0]) from None
        else:
            raise _tok_err(f"unexpected statement {h!r}", s[0])
    if theta is not None and forms:
        raise ParseError("give either 'theta = (...)' or B1..Bn matrices, not both", 1, 1)
    if theta is None:
        if not forms:
            raise ParseError("missing 'theta' statement", 1, 1)
        n = dim or len(forms)
        if sorted(forms) != list(range(1, n + 1)):
            raise ParseError(f"expected forms B1..B{n}", 1, 1)
        theta = [forms[k] for k in range(1, n + 1)]
        if any(f.n != n for f in theta):
            raise ParseError(f"forms must be {n}x{n}", 1, 1)
    return CocycleTriple(tuple(theta), tuple(params))


def render_cocycle(theta: CocycleTriple) -> str:
    lines = []
    if theta.params:
        lines.append(_params_line(theta.params))
    lines.append("theta = " + str(theta) + ";")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# witnesses


def parse_witness(text: str, var: str = "t") -> DegenerationWitness:
    stmts = split_statements(tokenize(text))
    params, rows, index = [], {}, []
    dim = None
    for s in stmts:
        h = _head(s)
        if h == "dim":
            dim = _dim_stmt(s)
        elif h == "params":
            params = merge_params(params, parse_params(s[1:]))
        elif _ROW.match(h):
            if len(s) < 3 or s[1].text != "=":
                raise _tok_err("expected 'Ek = ...'", s[0])
            k = int(_ROW.match(h).group(1))
            if k in rows:
                raise _tok_err(f"duplicate row E{k}", s[0])
            rows[k] = (_expr(s[2:], _Resolver(params, basis=True, free=(var,))), s[2])
        elif h == "index":
            if len(s) < 4 or s[1].kind != "name" or s[2].text != "=":
                raise _tok_err("expected 'index <param> = <expr>'", s[0])
            v = _expr(s[3:], _Resolver(params, free=(var,)))
            if not isinstance(v, Scalar):
                raise _tok_err("index value must be a scalar", s[3])
            index.append((s[1].text, v))
        else:
            raise _tok_err(f"unexpected statement {h!r}", s[0])
    if not rows:
        raise ParseError("a witness needs rows E1..En", 1, 1)
    n = dim or len(rows)
    if sorted(rows) != list(range(1, n + 1)):
        raise ParseError(f"expected rows E1..E{n}", 1, 1)
    basis = tuple(_vector(rows[k][0], n, rows[k][1]) for k in range(1, n + 1))
    if linalg.det(basis).is_zero():
        raise ParseError("witness basis is singular", 1, 1)
    return DegenerationWitness(basis, tuple(index), tuple(params), var)


def render_witness(w: DegenerationWitness) -> str:
    lines = []
    if w.params:
        lines.append(_params_line(w.params))
    for k, row in enumerate(w.basis):
        lines.append(f"E{k + 1} = {format_vector(row)};")
    for name, v in w.index_subst:
        lines.append(f"index {name} = {v};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# closed condition sets


def _flag_index(tok) -> int:
    m = _FLAG.match(tok.text)
    if not m:
        raise _tok_err("expected a flag subspace Ak", tok)
    return int(m.group(1))


def _containment(stmt) -> list:
    parts = _split_at(stmt, "<=")
    lhs, rhs, op = parts
    if len(rhs) != 1:
        raise _tok_err("right side must be a single flag subspace Ak", rhs[0] if rhs else op)
    r = _flag_index(rhs[0])
    out = []
    for term in _split_top(lhs, "+"):
        if len(term) == 3 and term[1].text == "*":
            out.append((_flag_index(term[0]), _flag_index(term[2]), r))
        elif len(term) == 3 and term[1].text == "^" and term[2].text == "2":
            p = _flag_index(term[0])
            out.append((p, p, r))
        else:
            raise _tok_err("expected 'Ap*Aq' or 'Ap^2'", term[0] if term else op)
    return out


def parse_closed_set(text: str, dim=None) -> ClosedConditionSet:
    stmts = split_statements(tokenize(text))
    containments, eqs = [], []
    for s in stmts:
        h = _head(s)
        if h == "dim":
            dim = _dim_stmt(s)
        elif any(t.text == "<=" for t in s):
            containments.extend(_containment(s))
        elif h == "c":
            parts = _split_at(s, "=")
            if parts is None:
                raise _tok_err("expected a linear equation in c[i,j,k]", s[0])
            lhs, rhs, eq = parts
            res = _Resolver(consts=True)
            a, b = _expr(lhs, res), _expr(rhs, res)
            total = _as_c(a, s[0]) + _as_c(b, eq).scale(-ONE)
            coeffs = {}
            for k, v in total.coeffs.items():
                if not v.is_constant():
                    raise _tok_err("coefficients must be rational numbers", s[0])
                coeffs[k] = v.to_fraction()
            if not coeffs:
                raise _tok_err("equation is trivial", eq)
            eqs.append(coeffs)
        else:
            raise _tok_err(f"unexpected statement {h!r}", s[0])
    R = ClosedConditionSet(tuple(containments), tuple(eqs))
    if dim is not None:
        try:
            R.validate(dim)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return R


def _as_c(v, tok) -> Linear:
    if isinstance(v, Scalar):
        if v.is_zero():
            return Linear("c", {})
        raise _tok_err("expected a combination of c[i,j,k]", tok)
    if v.kind != "c":
        raise _tok_err("expected a combination of c[i,j,k]", tok)
    return v


def _format_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_closed_set(R: ClosedConditionSet) -> str:
    lines = []
    by_target = {}
    for p, q, r in R.containments:
        by_target.setdefault(r, []).append((p, q))
    for r, terms in by_target.items():
        lhs = " + ".join(f"A{p}^2" if p == q else f"A{p}*A{q}" for p, q in terms)
        lines.append(f"{lhs} <= A{r};")
    for eq in R.linear_eqs:
        parts = []
        for (i, j, k), v in eq:
            name = f"c[{i},{j},{k}]"
            if v == 1:
                parts.append(name)
            elif v == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{_format_frac(v)}*{name}")
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        lines.append(f"{s} = 0;")
    return "\n".join(lines) + "\n"


def render(obj) -> str:
    if isinstance(obj, Algebra):
        return render_algebra(obj)
    if isinstance(obj, CocycleTriple):
        return render_cocycle(obj)
    if isinstance(obj, DegenerationWitness):
        return render_witness(obj)
    if isinstance(obj, ClosedConditionSet):
        return render_closed_set(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
