"""Sparse multivariate polynomials over exact fields.

Monomials are exponent tuples.  A :class:`PolyRing` fixes the number of
variables, the coefficient field and the monomial order; polynomials from
different rings never mix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegreeError, FieldError, ParseError, RingMismatchError
from .fields import Field, PrimeField, require_odd_characteristic

Monomial = tuple


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree d in n variables, lex-descending."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class PolyRing:
    nvars: int
    field: Field
    order: MonomialOrder = GREVLEX
    names: tuple = dc_field(default=(), compare=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.nvars)))
        if len(self.names) != self.nvars:
            raise ValueError("one name per variable")

    def __repr__(self) -> str:
        return f"{self.field.name}[{','.join(self.names)}]<{self.order.kind}>"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.nvars, self.field, order, self.names)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.nvars, field, self.order, self.names)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {} if self.field.is_zero(c) else {(0,) * self.nvars: c})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {} if self.field.is_zero(c) else {tuple(m): c})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if not f.is_zero(c):
                out[tuple(m)] = c
        return Polynomial(self, out)

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        return self.from_dict({tuple(int(i == j) for j in range(self.nvars)): c for i, c in enumerate(coeffs)})

    def parse(self, text: str, origin: tuple[int, int] = (1, 1)) -> "Polynomial":
        return _Parser(text, self, origin).parse()


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lm is None:
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.ring.field.zero)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def min_degree(self) -> int:
        return min(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            if self.ring.field != other.ring.field:
                raise RingMismatchError(f"mixed fields {self.ring.field} and {other.ring.field}")
            raise RingMismatchError(f"mixed polynomial rings {self.ring} and {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = f.add(out[m], c)
                if f.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        f = self.ring.field
        out: dict = {}
        if isinstance(f, PrimeField):
            p = f.p
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = (out.get(m, 0) + c1 * c2) % p
            return Polynomial(self.ring, {m: c for m, c in out.items() if c})
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = f.mul(c1, c2)
                out[m] = f.add(out[m], prod) if m in out else prod
        return Polynomial(self.ring, {m: c for m, c in out.items() if not f.is_zero(c)})

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if f.is_zero(c):
            return self.ring.zero
        return Polynomial(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {mono_mul(m, mono): f.mul(v, c) for m, v in self.terms.items()})

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- calculus and substitution --------------------------------------
    def derivative(self, i: int) -> "Polynomial":
        f = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                v = f.mul(c, f(m[i]))
                if not f.is_zero(v):
                    out[tuple(e)] = v
        return Polynomial(self.ring, out)

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``x_i -> images[i]`` (images may live in another ring)."""
        target = images[0].ring
        result = target.zero
        powers: dict = {}
        for m, c in self.terms.items():
            term = target.const(c if target.field == self.ring.field else target.field(c))
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Same terms in a ring with the same variable count (coefficients coerced)."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable counts differ")
        return ring.from_dict({m: ring.field(c) for m, c in self.terms.items()})

    def evaluate(self, point: Sequence):
        f = self.ring.field
        acc = f.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = f.mul(v, f.pow(x, e))
            acc = f.add(acc, v)
        return acc

    # -- printing --------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        f = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            cs = f.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if any(ch in cs for ch in "+t") and not cs.isdigit() and "/" not in cs:
                cs = f"({cs})"
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.names[i])
                elif e > 1:
                    factors.append(f"{self.ring.names[i]}^{e}")
            if cs != "1" or not factors:
                factors.insert(0, cs)
            body = "*".join(factors)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------


def hessian(f: Polynomial) -> np.ndarray:
    """Matrix of second partial derivatives of a quadratic form."""
    ring = f.ring
    require_odd_characteristic(ring.field, "Hessian matrices")
    if f and (not f.is_homogeneous() or f.degree() != 2):
        raise DegreeError("hessian needs a homogeneous quadratic form")
    F = ring.field
    n = ring.nvars
    H = F.zeros((n, n))
    for m, c in f.terms.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            H[i, i] = F.add(c, c)
        else:
            H[i, j] = c
            H[j, i] = c
    return H


def quadric_from_symmetric(ring: PolyRing, H: np.ndarray) -> Polynomial:
    """Inverse of :func:`hessian`."""
    F = ring.field
    two_inv = F.inv(F(2))
    terms = {}
    n = ring.nvars
    for i in range(n):
        for j in range(i, n):
            c = F.mul(H[i, j], two_inv) if i == j else H[i, j]
            if not F.is_zero(c):
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = c
    return Polynomial(ring, terms)


def initial_form(h: Polynomial) -> Polynomial:
    """Nonzero homogeneous component of lowest degree."""
    if h.is_zero():
        raise DegreeError("the zero polynomial has no initial form")
    return h.homogeneous_component(h.min_degree())


def linear_coefficients(f: Polynomial) -> list:
    """Coefficient vector of a linear form."""
    if f and (not f.is_homogeneous() or f.degree() != 1):
        raise DegreeError("expected a linear form")
    n = f.ring.nvars
    return [f.coefficient(tuple(int(i == j) for j in range(n))) for i in range(n)]


def polys_to_matrix(polys: Sequence[Polynomial], monomials: Sequence[Monomial], field: Field) -> np.ndarray:
    """Rows = coefficient vectors of ``polys`` on ``monomials``."""
    index = {m: i for i, m in enumerate(monomials)}
    M = field.zeros((len(polys), len(monomials)))
    for r, p in enumerate(polys):
        for m, c in p.terms.items():
            M[r, index[m]] = c
    return M


# ---------------------------------------------------------------------------
# text grammar


class _Parser:
    def __init__(self, text: str, ring: PolyRing, origin: tuple[int, int]):
        self.text = text
        self.ring = ring
        self.pos = 0
        self.origin = origin
        self.names = {name: i for i, name in enumerate(ring.names)}

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        pos = self.pos if pos is None else pos
        before = self.text[:pos]
        line = self.origin[0] + before.count("\n")
        col = (pos - before.rfind("\n")) if "\n" in before else self.origin[1] + pos
        return ParseError(msg, line, col)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Polynomial:
        if not self.text.strip():
            raise self.error("empty polynomial")
        result = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return result

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.unary()
        nxt = self.peek()
        if nxt and (nxt.isalnum() or nxt == "("):
            raise self.error("missing '*' between factors")
        return acc

    def unary(self) -> Polynomial:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.unary()
        if c == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise self.error("exponent must be a non-negative integer")
            base = base ** int(self.text[start : self.pos])
        return base

    def number(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def atom(self) -> Polynomial:
        c = self.peek()
        if not c:
            raise self.error("unexpected end of input")
        if c.isdigit():
            start = self.pos
            num = self.number()
            if self.peek() == "/":
                self.pos += 1
                self.skip()
                if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                    raise self.error("denominator must be an integer")
                den = self.number()
                if den == 0:
                    raise self.error("zero denominator", start)
                try:
                    return self.ring.const(Fraction(num, den))
                except FieldError as exc:
                    raise self.error(str(exc), start) from None
            return self.ring.const(num)
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.names:
                raise self.error(f"unknown variable {name!r}", start)
            return self.ring.gen(self.names[name])
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        raise self.error(f"unexpected {c!r}")


def parse_polys(texts: Iterable[str], ring: PolyRing) -> list[Polynomial]:
    return [ring.parse(t) for t in texts]
