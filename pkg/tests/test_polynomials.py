from __future__ import annotations

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.polys.orderings import grevlex as sympy_grevlex

from helpers import polynomials, qq_ring, sympy_terms, to_sympy
from qcitools.errors import DegreeError, FieldError, ParseError, RingMismatchError
from qcitools.fields import GF, QQ
from qcitools.linalg import rank
from qcitools.polynomials import LEX, PolyRing, hessian, monomials_of_degree, quadric_from_symmetric

P3 = qq_ring(3)
X = sympy.symbols("x1 x2 x3")


def same(f, expr) -> bool:
    return f.terms == sympy_terms(expr, X)


@given(polynomials(P3), polynomials(P3))
def test_ring_operations_match_sympy(f, g):
    F, G = to_sympy(f, X), to_sympy(g, X)
    assert same(f + g, F + G)
    assert same(f - g, F - G)
    assert same(f * g, sympy.expand(F * G))


@given(polynomials(P3, max_terms=3, max_deg=2), st.integers(0, 4))
def test_power_matches_sympy(f, e):
    assert same(f**e, sympy.expand(to_sympy(f, X) ** e))


@given(polynomials(P3), polynomials(P3), polynomials(P3))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + (-f) == P3.zero


@given(polynomials(P3))
def test_str_parse_round_trip(f):
    assert P3.parse(str(f)) == f


@given(polynomials(P3))
def test_derivative_matches_sympy(f):
    for i in range(3):
        assert same(f.derivative(i), sympy.diff(to_sympy(f, X), X[i]))


@given(polynomials(P3), polynomials(P3), polynomials(P3), polynomials(P3))
def test_compose_matches_sympy(f, a, b, c):
    got = f.compose([a, b, c])
    want = sympy.expand(to_sympy(f, X).subs(dict(zip(X, [to_sympy(t, X) for t in (a, b, c)])), simultaneous=True))
    assert same(got, want)


@given(st.integers(1, 4), st.integers(0, 4))
def test_grevlex_matches_sympy(n, d):
    ring = PolyRing(n, QQ)
    mons = [m for k in range(d + 1) for m in monomials_of_degree(n, k)]
    assert sorted(mons, key=ring.order.key) == sorted(mons, key=sympy_grevlex)


def test_leading_monomial_grevlex_and_lex():
    P = PolyRing(3, QQ)
    f = P.parse("x1*x3^2 + x2^3 + x1^2*x2")
    # grevlex ties on degree are broken by the smallest exponent of the last variable
    assert f.leading_monomial() == (2, 1, 0)
    assert f.change_ring(P.with_order(LEX)).leading_monomial() == (2, 1, 0)
    g = P.parse("x2^2 + x1*x3")
    assert g.leading_monomial() == (0, 2, 0)
    assert g.change_ring(P.with_order(LEX)).leading_monomial() == (1, 0, 1)


def test_coefficients_reduce_mod_p():
    P = PolyRing(2, GF(7))
    assert P.parse("8*x1 + 14*x2") == P.parse("x1")
    assert P.parse("1/2*x1") == P.parse("4*x1")
    assert str(P.parse("4*x1")) == "-3*x1"
    with pytest.raises((ParseError, FieldError)):
        P.parse("1/7*x1")


@pytest.mark.parametrize(
    "text,column",
    [("x1 + * x2", 6), ("x1 + x9", 6), ("x1^ + x2", 5), ("(x1 + x2", 9), ("2 x1", 3), ("", 1)],
)
def test_parse_errors_report_position(text, column):
    with pytest.raises(ParseError) as err:
        P3.parse(text)
    assert err.value.line == 1
    assert err.value.column == column


def test_mixing_rings_is_an_error():
    with pytest.raises(RingMismatchError):
        PolyRing(2, GF(5)).gen(0) + PolyRing(2, GF(7)).gen(0)


def test_hessian_and_inverse():
    P = PolyRing(3, GF(101))
    f = P.parse("x1^2 + 3*x1*x2 - x3^2")
    H = hessian(f)
    assert H.tolist() == [[2, 3, 0], [3, 0, 0], [0, 0, 99]]
    assert quadric_from_symmetric(P, H) == f
    with pytest.raises(DegreeError):
        hessian(P.parse("x1^3"))
    with pytest.raises(FieldError):
        hessian(PolyRing(2, GF(2)).parse("x1*x2"))


@given(polynomials(PolyRing(3, GF(101)), homogeneous_degree=2))
def test_hessian_matches_sympy(f):
    if f.is_zero():
        return
    S = sympy.hessian(to_sympy(f, X), X)
    assert hessian(f).tolist() == [[int(v) % 101 for v in row] for row in S.tolist()]


def test_evaluate():
    P = PolyRing(2, GF(11))
    assert P.parse("x1^2 + 3*x2").evaluate([4, 5]) == (16 + 15) % 11


@given(
    polynomials(PolyRing(3, GF(101)), homogeneous_degree=2),
    st.lists(st.integers(0, 100), min_size=9, max_size=9),
)
def test_hessian_rank_invariant_under_linear_change(f, entries):
    F = GF(101)
    T = F.array([entries[0:3], entries[3:6], entries[6:9]])
    if rank(T, F) < 3 or f.is_zero():
        return
    P = f.ring
    images = [P.linear_form(list(T[i])) for i in range(3)]
    g = f.compose(images)
    assert rank(hessian(g), F) == rank(hessian(f), F)
