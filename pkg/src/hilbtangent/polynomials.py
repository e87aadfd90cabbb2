"""Sparse multivariate polynomials over an exact coefficient ring.

A Polynomial stores a dict mapping exponent tuples to nonzero ring elements.
Values are immutable by convention: no method mutates self, and all arithmetic
returns fresh objects, so instances can be shared freely across threads.
"""

from __future__ import annotations

import re

from .errors import (
    AmbientMismatchError,
    ParseError,
    SingularMatrixError,
    UnassignedParameterError,
    UnknownParameterError,
)
from .monomials import grevlex_key, mono_mul, one_monomial
from .rings import QQ, DualNumbers, Ring, UnivariatePolynomials, rational


class Ambient:
    """A polynomial ring: ordered variable names (largest first) + coefficients."""

    def __init__(self, names, ring: Ring = QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")
        self.ring = ring
        self.n = len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Ambient)
            and other.names == self.names
            and other.ring == self.ring
        )

    def __hash__(self):
        return hash((self.names, self.ring))

    def __repr__(self):
        return f"{self.ring}[{', '.join(self.names)}]"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.ring.one())

    def constant(self, c) -> "Polynomial":
        if self.ring.is_zero(c):
            return self.zero()
        return Polynomial(self, {one_monomial(self.n): c})

    def variable(self, name: str) -> "Polynomial":
        i = self.names.index(name)
        expo = tuple(1 if j == i else 0 for j in range(self.n))
        return Polynomial(self, {expo: self.ring.one()})

    def monomial(self, expo, c=None) -> "Polynomial":
        c = self.ring.one() if c is None else c
        if self.ring.is_zero(c):
            return self.zero()
        return Polynomial(self, {tuple(expo): c})

    def poly(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def monomial_str(self, expo) -> str:
        parts = []
        for name, e in zip(self.names, expo):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms: dict, *, _normalized=False):
        self.ambient = ambient
        if _normalized:
            self.terms = terms
        else:
            ring = ambient.ring
            self.terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, expo):
        return self.terms.get(tuple(expo), self.ambient.ring.zero())

    def constant_coefficient(self):
        return self.terms.get(one_monomial(self.ambient.n), self.ambient.ring.zero())

    def monomials_desc(self) -> list:
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def num_terms(self) -> int:
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ambient == self.ambient
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms.items())))

    def _check(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other)!r}")
        if other.ambient != self.ambient:
            raise AmbientMismatchError(f"{self.ambient} vs {other.ambient}")
        return other

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        ring = self.ambient.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = ring.add(out[m], c)
                if ring.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial(self.ambient, out, _normalized=True)

    def __neg__(self):
        ring = self.ambient.ring
        return Polynomial(
            self.ambient, {m: ring.neg(c) for m, c in self.terms.items()}, _normalized=True
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        ring = self.ambient.ring
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                p = ring.mul(c1, c2)
                if ring.is_zero(p):
                    continue
                m = mono_mul(m1, m2)
                if m in out:
                    s = ring.add(out[m], p)
                    if ring.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                else:
                    out[m] = p
        return Polynomial(self.ambient, out, _normalized=True)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ambient.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        ring = self.ambient.ring
        if ring.is_zero(c):
            return self.ambient.zero()
        out = {}
        for m, v in self.terms.items():
            p = ring.mul(c, v)
            if not ring.is_zero(p):
                out[m] = p
        return Polynomial(self.ambient, out, _normalized=True)

    def mul_term(self, expo, c) -> "Polynomial":
        """Multiply by the single term c * x^expo."""
        ring = self.ambient.ring
        if ring.is_zero(c):
            return self.ambient.zero()
        expo = tuple(expo)
        out = {}
        for m, v in self.terms.items():
            p = ring.mul(c, v)
            if not ring.is_zero(p):
                out[mono_mul(m, expo)] = p
        return Polynomial(self.ambient, out, _normalized=True)

    # -- substitution ------------------------------------------------------

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i] (all in a common target ambient)."""
        target = images[0].ambient
        ring = target.ring
        out = target.zero()
        pow_cache = [dict() for _ in images]

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        for m, c in self.terms.items():
            piece = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    piece = piece * power(i, e)
            out = out + piece
        return out

    def map_coefficients(self, func, new_ring: Ring, new_ambient: Ambient | None = None):
        amb = new_ambient or Ambient(self.ambient.names, new_ring)
        out = {}
        for m, c in self.terms.items():
            v = func(c)
            if not new_ring.is_zero(v):
                out[m] = v
        return Polynomial(amb, out, _normalized=True)

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return self.canonical_str()

    def canonical_str(self) -> str:
        """Deterministic text form: terms sorted degrevlex-descending."""
        if not self.terms:
            return "0"
        ring = self.ambient.ring
        pieces = []
        for m in self.monomials_desc():
            c = self.terms[m]
            mono = self.ambient.monomial_str(m)
            if ring == QQ:
                neg = c < 0
                mag = -c if neg else c
                mags = str(mag)
                if mono == "1":
                    body = mags
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mags}*{mono}"
                pieces.append(("-" if neg else "+", body))
            else:
                cs = ring.to_str(c)
                if "+" in cs or " " in cs:
                    cs = f"({cs})"
                if mono == "1":
                    body = cs
                elif c == ring.one():
                    body = mono
                else:
                    body = f"{cs}*{mono}"
                pieces.append(("+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


# -- coordinate changes ------------------------------------------------------


def apply_linear_change(p: Polynomial, matrix) -> Polynomial:
    """Substitute variable i by sum_j matrix[i][j] * x_j.

    The matrix must be square and invertible over the coefficient field.
    """
    amb = p.ambient
    ring = amb.ring
    n = amb.n
    rows = [[_coerce(ring, v) for v in row] for row in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SingularMatrixError(f"matrix must be {n}x{n}")
    if _det_is_zero(ring, [row[:] for row in rows]):
        raise SingularMatrixError("matrix is singular")
    images = []
    for i in range(n):
        terms = {}
        for j in range(n):
            if not ring.is_zero(rows[i][j]):
                terms[tuple(1 if k == j else 0 for k in range(n))] = rows[i][j]
        images.append(Polynomial(amb, terms, _normalized=True))
    return p.substitute(images)


def translate(p: Polynomial, point) -> Polynomial:
    """Substitute x_i -> x_i + point[i]."""
    amb = p.ambient
    ring = amb.ring
    images = []
    for i in range(amb.n):
        img = amb.variable(amb.names[i]) + amb.constant(_coerce(ring, point[i]))
        images.append(img)
    return p.substitute(images)


def specialize(p: Polynomial, assignment: dict) -> Polynomial:
    """Exact substitution of parameter values.

    Keys may be ambient variable names (substituted by constants) or the
    coefficient-ring parameter (t for k[t]), which drops the ring to its base.
    A k[t] polynomial must have its parameter assigned.
    """
    amb = p.ambient
    ring = amb.ring
    coef_params = set(ring.param_elements)
    for key in assignment:
        if key not in amb.names and key not in coef_params:
            raise UnknownParameterError(f"unknown parameter {key!r}")

    if isinstance(ring, UnivariatePolynomials):
        if ring.var not in assignment:
            raise UnassignedParameterError(f"no value for parameter {ring.var!r}")
        value = _coerce(ring.base, assignment[ring.var])
        base_amb = Ambient(amb.names, ring.base)
        p = p.map_coefficients(lambda c: ring.evaluate(c, value), ring.base, base_amb)
        amb, ring = base_amb, ring.base

    var_assign = {k: v for k, v in assignment.items() if k in amb.names}
    if var_assign:
        images = []
        for name in amb.names:
            if name in var_assign:
                images.append(amb.constant(_coerce(ring, var_assign[name])))
            else:
                images.append(amb.variable(name))
        p = p.substitute(images)
    return p


def _coerce(ring: Ring, value):
    """Accept ints, rationals and ready-made ring elements."""
    if isinstance(value, int):
        return ring.from_int(value)
    if ring is QQ or ring == QQ:
        return rational(value)
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return ring.from_rational(int(num), int(den) if den else 1)
    try:
        num, den = value.numerator, value.denominator
    except AttributeError:
        return value
    return ring.from_rational(int(num), int(den))


def _det_is_zero(ring: Ring, rows) -> bool:
    """Gaussian elimination over a field (destroys rows)."""
    n = len(rows)
    for col in range(n):
        piv = next((r for r in range(col, n) if not ring.is_zero(rows[r][col])), None)
        if piv is None:
            return True
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = ring.inv(rows[col][col])
        for r in range(col + 1, n):
            factor = ring.mul(rows[r][col], inv)
            if ring.is_zero(factor):
                continue
            rows[r] = [
                ring.sub(rows[r][k], ring.mul(factor, rows[col][k])) for k in range(n)
            ]
    return False


# -- parser ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.lastgroup == "number":
            out.append(("num", int(m.group("number"))))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    out.append(("end", None))
    return out


class _Parser:
    """Recursive-descent parser for the polynomial text grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := '-'* atom ('^' int)?
    atom   := rational | name | '(' expr ')'

    '*' may be omitted between factors; rationals are written a/b.
    """

    def __init__(self, tokens, ambient: Ambient):
        self.tokens = tokens
        self.i = 0
        self.ambient = ambient

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input at token {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.advance()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.advance()
                p = p * self.factor()
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Polynomial:
        sign = 1
        while self.peek() == ("op", "-"):
            self.advance()
            sign = -sign
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.advance()
            kind, val = self.advance()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            p = p**val
        if sign < 0:
            p = -p
        return p

    def atom(self) -> Polynomial:
        kind, val = self.advance()
        amb = self.ambient
        if kind == "num":
            if self.peek() == ("op", "/"):
                self.advance()
                kind2, den = self.advance()
                if kind2 != "num" or den == 0:
                    raise ParseError("bad rational literal")
                return amb.constant(amb.ring.from_rational(val, den))
            return amb.constant(amb.ring.from_int(val))
        if kind == "name":
            if val in amb.names:
                return amb.variable(val)
            if val in amb.ring.param_elements:
                return amb.constant(amb.ring.param_elements[val])
            raise ParseError(f"unknown name {val!r} in {amb}")
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.advance() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return p
        raise ParseError(f"unexpected token {(kind, val)!r}")


def parse_polynomial(text: str, ambient: Ambient) -> Polynomial:
    return _Parser(_tokenize(text), ambient).parse()
