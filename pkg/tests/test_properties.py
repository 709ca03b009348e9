"""Randomized invariants of the polynomial, Groebner, quotient and Koszul layers.

Runnable on its own: ``pytest tests/test_properties.py``.  Every test draws
100 small instances (at most 4 variables, defining ideals of degree at most 3).
"""

from __future__ import annotations

import numpy as np
from hypothesis import given, settings, strategies as st

from qcitools.fields import GF
from qcitools.groebner import buchberger, is_irrelevant_primary
from qcitools.koszul import build_koszul, homology_report
from qcitools.linalg import rank
from qcitools.polynomials import PolyRing, divides, monomials_of_degree
from qcitools.quotient import GradedQuotientRing, colon_ideal, is_exact_zero_divisor

P_CHAR = 101
F = GF(P_CHAR)
EXAMPLES = 100


@st.composite
def forms(draw, ring, degree, max_terms=4):
    mons = monomials_of_degree(ring.nvars, degree)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    return ring.from_dict({m: draw(st.integers(1, P_CHAR - 1)) for m in chosen})


@st.composite
def artinian_rings(draw):
    n = draw(st.integers(1, 4))
    P = PolyRing(n, F)
    gens = [P.gen(i) ** draw(st.integers(2, 3)) for i in range(n)]
    for _ in range(draw(st.integers(0, 2))):
        gens.append(draw(forms(P, draw(st.integers(2, 3)))))
    return GradedQuotientRing(gens)


@st.composite
def ring_elements(draw, R, homogeneous_degree=None):
    if homogeneous_degree is None:
        vec = draw(st.lists(st.integers(0, P_CHAR - 1), min_size=R.dim, max_size=R.dim))
    else:
        vec = [0] * R.dim
        for i in R.degree_indices(homogeneous_degree):
            vec[i] = draw(st.integers(0, P_CHAR - 1))
    return R.from_vector(F.array(vec))


@st.composite
def polynomials(draw):
    n = draw(st.integers(1, 4))
    P = PolyRing(n, F)
    out = P.zero
    for d in range(draw(st.integers(0, 3)) + 1):
        if draw(st.booleans()):
            out = out + draw(forms(P, d, 3))
    return out


many = settings(max_examples=EXAMPLES, deadline=None)


# -- polynomials -----------------------------------------------------------


@many
@given(st.data())
def test_polynomial_ring_axioms(data):
    f = data.draw(polynomials())
    P = f.ring
    g = data.draw(forms(P, data.draw(st.integers(0, 3))))
    h = data.draw(forms(P, data.draw(st.integers(0, 3))))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert P.parse(str(f)) == f
    if not f.is_zero() and not g.is_zero():
        assert (f * g).degree() == f.degree() + g.degree()


# -- groebner --------------------------------------------------------------


@many
@given(artinian_rings())
def test_groebner_basis_is_reduced_and_generates(R):
    gb = R.gb
    for g in R.defining_gens:
        assert gb.normal_form(g).is_zero()
    for g in gb.generators:
        assert g.leading_coefficient() == F.one
        others = [h.leading_monomial() for h in gb.generators if h is not g]
        assert not any(divides(lm, m) for lm in others for m in g.terms)
    assert buchberger(list(gb.generators)).as_strings() == gb.as_strings()
    ok, N = is_irrelevant_primary(R.defining_gens)
    assert ok and N == len(R.hilbert)


@many
@given(artinian_rings(), st.data())
def test_normal_form_is_linear_and_idempotent(R, data):
    P = R.poly_ring
    f = data.draw(forms(P, data.draw(st.integers(1, 4))))
    g = data.draw(forms(P, f.degree()))
    nf = R.gb.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f + g) == nf(f) + nf(g)
    assert all(R.gb.is_standard(m) for m in nf(f).terms)


# -- quotient --------------------------------------------------------------


@many
@given(artinian_rings(), st.data())
def test_quotient_ring_structure(R, data):
    assert sum(R.hilbert) == R.dim
    x, y, z = (data.draw(ring_elements(R)) for _ in range(3))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert R.socle() == colon_ideal(R.zero_ideal(), R.maximal_ideal())
    assert R.power_of_maximal(R.loewy_length()).dim == 0


@many
@given(artinian_rings(), st.data())
def test_annihilator_rank_nullity_and_exact_pairs(R, data):
    if R.dim < 2:
        return
    d = data.draw(st.integers(1, R.top_degree))
    x = data.draw(ring_elements(R, d))
    if x.is_zero():
        return
    ann = R.annihilator(x)
    assert ann.dim + R.ideal([x]).dim == R.dim
    assert ann.dim == R.dim - rank(x.mult_matrix(), F)
    y = is_exact_zero_divisor(x)
    if y is not None:
        assert (x * y).is_zero()
        back = is_exact_zero_divisor(y)
        assert back is not None and R.ideal([back]) == R.ideal([x])


# -- koszul ----------------------------------------------------------------


@many
@given(artinian_rings(), st.data())
def test_koszul_complex_invariants(R, data):
    k = data.draw(st.integers(1, min(2, R.nvars)))
    coeffs = data.draw(st.lists(st.integers(0, P_CHAR - 1), min_size=k * R.nvars, max_size=k * R.nvars))
    f = [R.element(R.poly_ring.linear_form(coeffs[i * R.nvars : (i + 1) * R.nvars])) for i in range(k)]
    I = R.ideal(f)
    if I.nu() != k:
        return
    K = build_koszul(R, f)
    assert K.check_d_squared()
    rep = homology_report(K, h1_generators=False)
    assert rep.euler_characteristic() == 0
    assert rep.total("h", 0) == R.dim - I.dim
    assert rep.total("h", k) == colon_ideal(R.zero_ideal(), I).dim
    assert np.all(np.array(rep.totals("h")) >= 0)
