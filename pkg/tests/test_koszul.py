from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qcitools.corpus import B_DELTA, B_IDEAL, B_THETA, EXAMPLES, ring_B
from qcitools.errors import NonMinimalError, UnsupportedError
from qcitools.fields import GF, QQ
from qcitools.koszul import (
    QciRefutation,
    build_koszul,
    ezd_search,
    grade,
    homology_report,
    is_certified,
    qci_check,
    symbolic_obstruction,
    two_generated_criterion,
    two_generated_exactness,
)
from qcitools.quotient import build_quotient_from_text, colon_ideal, is_exact_zero_divisor


def test_homology_of_B_over_qq_and_p(BQQ, B101):
    for R in (BQQ, B101):
        rep = homology_report(build_koszul(R, B_IDEAL))
        assert (rep.total("z", 1), rep.total("b", 1), rep.total("h", 1), rep.total("h", 2)) == (20, 12, 8, 4)
        assert rep.totals("h") == [4, 8, 4]
        assert rep.euler_characteristic() == 0
        assert rep.h1_degrees == [2, 2]


def test_per_degree_cycles_of_B(B101):
    rep = homology_report(build_koszul(B101, B_IDEAL))
    # internal degree of the basis vector v_i is deg f_i = 1
    assert rep.per_degree("z", 1) == {2: 3, 3: 11, 4: 6}


@pytest.mark.parametrize("ex", EXAMPLES, ids=lambda e: e.name)
def test_extreme_homology_matches_quotient_and_annihilator(ex):
    R = ex.ring(GF(101))
    I = R.ideal(list(ex.ideal))
    rep = homology_report(build_koszul(R, list(ex.ideal)))
    n = len(ex.ideal)
    assert rep.total("h", 0) == R.dim - I.dim
    assert rep.total("h", n) == colon_ideal(R.zero_ideal(), I).dim
    for p in range(n + 1):
        # rank-nullity in each spot of the complex
        assert rep.total("z", p) + (rep.total("b", p - 1) if p else 0) == comb(n, p) * R.dim


def test_non_minimal_generators_rejected(B101):
    with pytest.raises(NonMinimalError):
        build_koszul(B101, ["x1 + x2 + x4", "2*x1 + 2*x2 + 2*x4"])


def test_certificate_for_B(B101):
    cert = qci_check(B101, B_IDEAL)
    assert is_certified(cert)
    R = B101
    assert R.ideal([cert.delta]) == R.ideal([R.element(B_DELTA)])
    I = R.ideal(B_IDEAL)
    assert R.annihilator(cert.delta) == I
    assert colon_ideal(R.zero_ideal(), I) == R.ideal([cert.delta])
    assert R.power_of_maximal(2).contains(cert.delta)
    assert not R.power_of_maximal(3).contains(cert.delta)
    assert cert.grade == 0


def test_delta_independent_of_generating_set(B101):
    f1, f2 = B_IDEAL
    a = qci_check(B101, [f1, f2]).delta
    b = qci_check(B101, [f1, f"{f1} + {f2}"]).delta
    assert B101.ideal([a]) == B101.ideal([b])


def test_two_generated_criterion_on_B(B101, BQQ):
    for R in (B101, BQQ):
        assert two_generated_criterion(R, *B_IDEAL, *B_THETA)
        assert two_generated_criterion(R, *B_IDEAL, *B_THETA) == is_certified(qci_check(R, B_IDEAL))


def test_two_generated_criterion_on_complete_intersection():
    R = build_quotient_from_text(["x1^2", "x2^2"], 2, GF(101))
    assert two_generated_criterion(R, "x1", "x2", "x1", "0", "0", "x2")
    assert is_certified(qci_check(R, ["x1", "x2"]))
    spots = two_generated_exactness(R, "x1", "x2", "x1", "x2", "x2", "x1")
    assert not all(spots.values())


def test_refutation_for_non_exact_principal_ideal():
    R = build_quotient_from_text(["x1^2", "x1*x2", "x2^3"], 2, GF(101))
    res = qci_check(R, ["x1"])
    assert isinstance(res, QciRefutation)
    assert not is_certified(res)


@pytest.mark.parametrize("ex", [e for e in EXAMPLES if e.principal_exact], ids=lambda e: e.name)
def test_principal_qci_equals_exact_zero_divisor(ex):
    R = ex.ring(GF(101))
    x = R.element(ex.ideal[0])
    assert is_certified(qci_check(R, [x])) == (is_exact_zero_divisor(x) is not None)


def test_grade_zero_in_artinian_rings(B101):
    assert grade(B101, B101.ideal(B_IDEAL)) == 0
    assert grade(B101, B101.maximal_ideal()) == 0


def test_ezd_enumeration_matches_brute_force():
    R = build_quotient_from_text(["x1^2", "x2^2", "x3^2"], 3, GF(3))
    res = ezd_search(R, deg_bound=1)
    brute = set()
    for c in itertools.product(range(3), repeat=3):
        if not any(c) or next(v for v in c if v) != 1:
            continue
        x = R.element(R.poly_ring.linear_form(list(c)))
        if is_exact_zero_divisor(x) is not None:
            brute.add(tuple(int(v) for v in x.vec))
    found = {tuple(int(v) for v in x.vec) for x, _ in res.pairs}
    assert found == brute
    assert res.candidates[1] == 13


def test_no_exact_zero_divisor_inside_I_over_F5():
    R = ring_B(GF(5))
    res = ezd_search(R, R.ideal(B_IDEAL), deg_bound=2)
    assert res.pairs == []
    assert res.candidates[1] == 6


def test_symbolic_obstruction(BQQ):
    obs = symbolic_obstruction(BQQ, BQQ.ideal(B_IDEAL))
    assert obs.certified
    R = build_quotient_from_text(["x1^2", "x2^2"], 2, QQ)
    assert not symbolic_obstruction(R, R.ideal(["x1 + x2"])).certified


def test_enumeration_needs_prime_field(BQQ):
    with pytest.raises(UnsupportedError):
        ezd_search(BQQ, deg_bound=1)


@settings(max_examples=25)
@given(st.lists(st.integers(0, 100), min_size=10, max_size=10))
def test_d_squared_and_euler_on_random_linear_forms(coeffs):
    R = ring_B(GF(101))
    P = R.poly_ring
    f = [P.linear_form(coeffs[:5]), P.linear_form(coeffs[5:])]
    if R.ideal(f).nu() != 2:
        return
    K = build_koszul(R, f)
    assert K.check_d_squared()
    assert homology_report(K, h1_generators=False).euler_characteristic() == 0
