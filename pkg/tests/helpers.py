"""Shared oracles and hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from qcitools.fields import QQ
from qcitools.polynomials import PolyRing


def to_sympy(f, symbols=None):
    """A qcitools polynomial as a sympy expression (rational coefficients)."""
    ring = f.ring
    syms = symbols or sympy.symbols(list(ring.names))
    F = ring.field
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        if isinstance(c, Fraction):
            coeff = sympy.Rational(c.numerator, c.denominator)
        else:
            coeff = sympy.Integer(int(F.to_str(c)))
        term = coeff
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return expr


def sympy_terms(expr, symbols, p=None) -> dict:
    """Monomial -> coefficient dictionary (reduced mod p when given)."""
    poly = sympy.Poly(expr, *symbols)
    out = {}
    for m, c in poly.terms():
        if p is None:
            if c != 0:
                out[tuple(m)] = Fraction(int(c.p), int(c.q))
        else:
            v = int(c.p) * pow(int(c.q), -1, p) % p
            if v:
                out[tuple(m)] = v
    return out


@st.composite
def polynomials(draw, ring: PolyRing, max_terms: int = 5, max_deg: int = 3, homogeneous_degree: int | None = None):
    """Random polynomial over ``ring`` with small integer coefficients."""
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        if homogeneous_degree is None:
            m = tuple(draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n)))
            if sum(m) > max_deg:
                continue
        else:
            cuts = sorted(draw(st.lists(st.integers(0, homogeneous_degree), min_size=n - 1, max_size=n - 1)))
            bounds = [0] + cuts + [homogeneous_degree]
            m = tuple(bounds[i + 1] - bounds[i] for i in range(n))
        terms[m] = draw(st.integers(-9, 9))
    return ring.from_dict({m: ring.field(c) for m, c in terms.items()})


def qq_ring(n: int) -> PolyRing:
    return PolyRing(n, QQ)
