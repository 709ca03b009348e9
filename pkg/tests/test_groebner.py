from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import polynomials, sympy_terms, to_sympy
from qcitools.corpus import B_RELATIONS, B_STANDARD_2, B_STANDARD_3
from qcitools.errors import NotHomogeneousError
from qcitools.fields import GF, QQ
from qcitools.groebner import (
    GeneratorStatus,
    buchberger,
    count_minimal_generators,
    eliminant,
    ideal_containment,
    is_irrelevant_primary,
    minimal_generator_test,
)
from qcitools.polynomials import PolyRing, monomials_of_degree

X3 = sympy.symbols("x1 x2 x3")


def sympy_basis(gens, symbols, p=None):
    exprs = [to_sympy(g, symbols) for g in gens]
    kw = {"modulus": p} if p else {}
    G = sympy.groebner(exprs, *symbols, order="grevlex", **kw)
    out = []
    for g in G.exprs:
        terms = sympy_terms(g, symbols, p)
        out.append(terms)
    return out


def normalized(terms: dict, p=None) -> frozenset:
    """Monic version of a coefficient dictionary, as a hashable set."""
    lead = max(terms, key=lambda m: (sum(m), tuple(-e for e in reversed(m))))
    c = terms[lead]
    if p is None:
        return frozenset((m, v / c) for m, v in terms.items())
    inv = pow(int(c), -1, p)
    return frozenset((m, int(v) * inv % p) for m, v in terms.items())


def ours(gb, p=None):
    out = set()
    for g in gb.generators:
        terms = {m: (int(c) % p if p else c) for m, c in g.terms.items()}
        out.add(normalized(terms, p))
    return out


ideal_gens = st.lists(polynomials(PolyRing(3, QQ), max_terms=4, homogeneous_degree=2), min_size=1, max_size=3)


@settings(max_examples=40)
@given(ideal_gens)
def test_reduced_basis_matches_sympy_over_qq(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = buchberger(gens)
    want = {normalized(t) for t in sympy_basis(gens, X3)}
    assert ours(gb) == want


@settings(max_examples=40)
@given(st.lists(polynomials(PolyRing(3, GF(101)), max_terms=4, homogeneous_degree=2), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy_mod_p(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = buchberger(gens)
    want = {normalized(t, 101) for t in sympy_basis(gens, X3, 101)}
    assert ours(gb, 101) == want


@settings(max_examples=40)
@given(ideal_gens, polynomials(PolyRing(3, QQ)))
def test_normal_form_matches_sympy(gens, f):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = buchberger(gens)
    G = sympy.groebner([to_sympy(g, X3) for g in gens], *X3, order="grevlex")
    _, rem = G.reduce(to_sympy(f, X3))
    assert gb.normal_form(f).terms == sympy_terms(rem, X3)
    assert gb.contains(f) == (rem == 0)


def test_relations_of_B_are_their_own_basis():
    for F in (QQ, GF(5), GF(101)):
        P = PolyRing(5, F)
        gens = [P.parse(t) for t in B_RELATIONS]
        gb = buchberger(gens)
        assert sorted(str(g) for g in gb.generators) == sorted(str(g.monic()) for g in gens)


def test_standard_monomials_of_B():
    P = PolyRing(5, QQ)
    gb = buchberger([P.parse(t) for t in B_RELATIONS])
    as_text = lambda ms: sorted(str(P.monomial(m)) for m in ms)  # noqa: E731
    assert as_text(gb.standard_monomials(2)) == sorted(B_STANDARD_2)
    assert as_text(gb.standard_monomials(3)) == sorted(B_STANDARD_3)
    assert gb.standard_monomials(4) == []
    assert gb.hilbert_function() == [1, 5, 7, 3]


def brute_force_N(gens, n):
    """Least d with every degree-d monomial in the ideal, via sympy, or None."""
    symbols = sympy.symbols(" ".join(f"x{i + 1}" for i in range(n)))
    symbols = symbols if isinstance(symbols, tuple) else (symbols,)
    G = sympy.groebner([to_sympy(g, symbols) for g in gens], *symbols, order="grevlex")
    for d in range(0, 12):
        mons = monomials_of_degree(n, d)
        if all(G.contains(sympy.Mul(*[s**e for s, e in zip(symbols, m)])) for m in mons):
            return d
    return None


@settings(max_examples=40)
@given(st.lists(polynomials(PolyRing(2, QQ), max_terms=3, homogeneous_degree=2), min_size=1, max_size=3))
def test_irrelevant_primary_matches_brute_force(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    ok, N = is_irrelevant_primary(gens)
    want = brute_force_N(gens, 2)
    assert ok == (want is not None)
    assert N == want


def test_irrelevant_primary_examples():
    P = PolyRing(3, GF(101))
    assert is_irrelevant_primary([P.parse(t) for t in ("x1^2", "x2^2", "x3^2")]) == (True, 4)
    assert is_irrelevant_primary([P.parse(t) for t in ("x1^2", "x2^2")]) == (False, None)
    with pytest.raises(NotHomogeneousError):
        is_irrelevant_primary([P.parse("x1^2 + x2")])


def test_minimal_generator_test():
    P = PolyRing(3, QQ)
    gens = [P.parse(t) for t in ("x1^2", "x1*x2")]
    assert minimal_generator_test(P.parse("x1^2 + x1*x2"), gens) == GeneratorStatus.MINIMAL_GENERATOR
    assert minimal_generator_test(P.parse("x1^3"), gens) == GeneratorStatus.IN_M_TIMES_IDEAL
    assert minimal_generator_test(P.parse("x2^2"), gens) == GeneratorStatus.NOT_IN_IDEAL


def test_count_minimal_generators():
    P = PolyRing(5, QQ)
    gens = [P.parse(t) for t in B_RELATIONS]
    assert count_minimal_generators(gens) == 8
    padded = gens + [gens[0] * P.gen(0), gens[1] + gens[2]]
    assert count_minimal_generators(padded) == 8


def test_ideal_containment():
    P = PolyRing(2, QQ)
    big = [P.parse("x1"), P.parse("x2^2")]
    small = [P.parse("x1*x2"), P.parse("x2^3")]
    assert ideal_containment(small, big)
    assert not ideal_containment(big, small)


def test_eliminant_of_zero_dimensional_ideal():
    P = PolyRing(2, GF(101))
    # points (1, 2), (3, 4), (3, 5)
    gens = [P.parse(t) for t in ("(x1 - 1)*(x1 - 3)", "(x1 - 3)*(x2 - 2)", "(x1 - 1)*(x2 - 4)*(x2 - 5)")]
    gb = buchberger(gens)
    elim = eliminant(gb, 1)
    F = GF(101)
    roots = sorted(v for v in range(101) if sum(F.mul(c, pow(v, i, 101)) for i, c in enumerate(elim)) % 101 == 0)
    assert roots == [2, 4, 5]
    assert elim[-1] == 1
