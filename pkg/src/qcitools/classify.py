"""Structural checks on q.c.i. ideals: generator bounds, Tate betti pattern, minimality."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import UnsupportedError
from .groebner import count_minimal_generators, ideal_containment, minimal_generator_test, GeneratorStatus
from .homotopy import deviations, minimal_resolution, resolve_residue_field, tate_betti
from .koszul import QciCertificate, ezd_search, is_certified, qci_check
from .quotient import GradedQuotientRing, RingIdeal, loewy_length


def is_ci_ring(R: GradedQuotientRing) -> bool:
    """Complete intersection test through the third deviation of k (ε_3 = 0)."""
    if R.dim == 1:
        return True
    betti = resolve_residue_field(R, 3).totals()
    return deviations(betti[:4], 3)[2] == 0


def is_gorenstein(R: GradedQuotientRing) -> bool:
    return R.socle().dim == 1


def intersection_condition(I: RingIdeal) -> bool:
    """I ∩ 𝔪² ⊆ 𝔪I."""
    R = I.ring
    m2 = R.power_of_maximal(2)
    return I.m_times().space.contains_space(I.space.intersect(m2.space))


def embedding_dimension(R: GradedQuotientRing) -> int:
    return R.maximal_ideal().nu()


@dataclass
class BoundCheck:
    applies: bool
    holds: bool
    detail: str

    def to_dict(self) -> dict:
        return {"applies": self.applies, "holds": self.holds, "detail": self.detail}


@dataclass
class LoewyReport:
    loewy_length: int
    nu: int
    quotient_ci: bool
    quotient_gorenstein: bool
    intersection_condition: bool
    checks: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "loewy_length": self.loewy_length,
            "nu_I": self.nu,
            "quotient_complete_intersection": self.quotient_ci,
            "quotient_gorenstein": self.quotient_gorenstein,
            "I_cap_m2_in_mI": self.intersection_condition,
            "checks": {k: v.to_dict() for k, v in self.checks.items()},
            "ok": self.ok,
        }


def loewy_suite(I: RingIdeal, certificate: QciCertificate | None = None) -> LoewyReport:
    """Bounds on ν(I) in terms of the Loewy length for a nontrivial q.c.i. ideal I."""
    R = I.ring
    if certificate is None:
        certificate = qci_check(R, [g for g in I.minimal_generators()])
    if not is_certified(certificate):
        raise UnsupportedError("the bounds apply to q.c.i. ideals only")
    if I.dim == 0 or not I.is_proper():
        raise UnsupportedError("the bounds apply to nontrivial ideals only")
    l = loewy_length(R)
    n = I.nu()
    S = I.quotient_ring()
    ci = is_ci_ring(S)
    gor = is_gorenstein(S)
    cond = intersection_condition(I)
    checks = {}
    checks["1"] = BoundCheck(True, n <= l - 1, f"nu={n} <= l-1={l - 1}")
    checks["2"] = BoundCheck(not ci, ci or n <= l - 2, f"nu={n} <= l-2={l - 2}")
    applies3 = n == l - 2 and cond
    edim = embedding_dimension(S)
    top = R.power_of_maximal(l - 1).nu() if l >= 1 else 0
    checks["3"] = BoundCheck(applies3, not applies3 or edim <= top, f"nu(m/I)={edim} <= nu(m^(l-1))={top}")
    applies4 = gor and not ci and cond
    checks["4"] = BoundCheck(applies4, not applies4 or n <= l - 3, f"nu={n} <= l-3={l - 3}")
    applies5 = gor and not ci
    holds5 = not applies5 or (l >= 4 and (l != 4 or n == 1))
    checks["5"] = BoundCheck(applies5, holds5, f"l={l} >= 4, and nu=1 when l=4")
    return LoewyReport(l, n, ci, gor, cond, checks)


# ---------------------------------------------------------------------------


def mingens_identity(R: GradedQuotientRing, I: RingIdeal, grade: int = 0) -> tuple[int, int]:
    """(ν(J), ν(𝔞) + grade) for J = 𝔞 + lifts of the generators of I."""
    a = list(R.defining_gens)
    lifts = [g.to_poly() for g in I.minimal_generators()]
    return count_minimal_generators(a + lifts), count_minimal_generators(a) + grade


def tate_pattern(R: GradedQuotientRing, I: RingIdeal, hd_bound: int = 4) -> tuple[list[int], list[int]]:
    """(betti numbers of R/I over R, coefficients of (1+z)^n/(1-z^2)^n) up to hd_bound."""
    got = minimal_resolution(R, I, hd_bound).totals()
    got = got + [0] * (hd_bound + 1 - len(got))
    return got[: hd_bound + 1], tate_betti(I.nu(), hd_bound + 1)


def factoring_minimal_generator(R: GradedQuotientRing, x, y) -> bool:
    """Whether lifts of an exact pair multiply to a minimal generator of 𝔞."""
    return minimal_generator_test(x.to_poly() * y.to_poly(), list(R.defining_gens)) == GeneratorStatus.MINIMAL_GENERATOR


def all_qci_minimal_criterion(R: GradedQuotientRing) -> bool:
    """R not a complete intersection, ℓℓ(R) = 3 and 𝔞 ∩ 𝔫³ ⊆ 𝔞𝔫: every q.c.i. ideal is minimal."""
    low = [g for g in R.defining_gens if g.degree() <= 2]
    generated_low = bool(low) and ideal_containment(list(R.defining_gens), low)
    return loewy_length(R) == 3 and generated_low and not is_ci_ring(R)


@dataclass
class MinimalityEvidence:
    nu: int
    nu_bound: int
    no_principal_sub: bool | None
    principal_method: str
    delta_outside_m3: bool
    minimal: bool | None

    def to_dict(self) -> dict:
        return {
            "nu_I": self.nu,
            "nu_bound_for_sub_qci": self.nu_bound,
            "no_exact_zero_divisor_inside": self.no_principal_sub,
            "exact_zero_divisor_method": self.principal_method,
            "delta_outside_m3": self.delta_outside_m3,
            "minimal": self.minimal,
        }


def minimality_evidence(I: RingIdeal, certificate: QciCertificate, mode: str = "symbolic", deg_bound: int = 1) -> MinimalityEvidence:
    """Evidence that no nonzero q.c.i. ideal sits properly inside I.

    A sub-ideal with one generator would be generated by an exact zero-divisor;
    one with ν >= 2 has Δ' ∈ 𝔪², so Δ ∉ 𝔪³ forces it to coincide with I.
    """
    R = I.ring
    if not is_certified(certificate):
        raise UnsupportedError("minimality evidence needs a q.c.i. certificate")
    l = loewy_length(R)
    n = I.nu()
    bound = l - 2 if not is_ci_ring(I.quotient_ring()) else l - 1
    proper_sub = False
    if mode == "symbolic":
        obs = ezd_search(R, I, mode="symbolic")
        no_ezd = bool(obs.certified)
        method = "symbolic"
    else:
        res = ezd_search(R, I, deg_bound=deg_bound)
        no_ezd = not res.pairs
        proper_sub = any(R.ideal([x]) != I for x, _ in res.pairs)
        method = f"enumerate over {R.field.name} up to degree {deg_bound}"
    delta = certificate.delta
    outside = delta is not None and not R.power_of_maximal(3).contains(delta)
    if proper_sub:
        minimal: bool | None = False
    elif n >= 2 and no_ezd and outside:
        minimal = True
    elif n == 1 and all_qci_minimal_criterion(R):
        minimal = True
    else:
        minimal = None
    return MinimalityEvidence(n, bound, no_ezd, method, outside, minimal)
