"""Buchberger's algorithm, normal forms, staircases and membership tests.

Pairs are processed by the normal strategy (smallest lcm degree first,
ties broken by the lexicographic order of the pair indices).  Only two
pairs are skipped without reduction: pairs of monomials and pairs whose
leading monomials are coprime.
"""

from __future__ import annotations

import heapq
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import NotHomogeneousError, RingMismatchError
from .linalg import Subspace, nullspace
from .polynomials import (
    Monomial,
    Polynomial,
    PolyRing,
    coprime,
    divides,
    mono_div,
    mono_lcm,
    monomials_of_degree,
    polys_to_matrix,
)
from .fields import PrimeField


def _neg_key(order_kind: str):
    # heap keys: smaller key = larger monomial
    if order_kind == "lex":
        return lambda m: tuple(-e for e in m)
    return lambda m: (-sum(m), tuple(reversed(m)))


def _reduce_terms(terms: dict, basis: list[tuple[Monomial, dict]], ring: PolyRing, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by monic ``basis`` (lm, terms) pairs."""
    field = ring.field
    neg_key = _neg_key(ring.order.kind)
    p = dict(terms)
    heap = [(neg_key(m), m) for m in p]
    heapq.heapify(heap)
    rem: dict = {}
    modular = isinstance(field, PrimeField)
    P = field.p if modular else None
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for lm, gterms in basis:
            if divides(lm, m):
                q = mono_div(m, lm)
                for mg, cg in gterms.items():
                    if mg == lm:
                        continue
                    mm = tuple(a + b for a, b in zip(mg, q))
                    if modular:
                        new = (p.get(mm, 0) - c * cg) % P
                        zero = new == 0
                    else:
                        new = field.sub(p[mm], field.mul(c, cg)) if mm in p else field.neg(field.mul(c, cg))
                        zero = field.is_zero(new)
                    if zero:
                        p.pop(mm, None)
                    else:
                        if mm not in p:
                            heapq.heappush(heap, (neg_key(mm), mm))
                        p[mm] = new
                break
        else:
            rem[m] = c
            if not full:
                rem.update(p)
                return rem
    return rem


class GroebnerBasis:
    """Reduced Gröbner basis; generators are monic and sorted by leading monomial."""

    def __init__(self, ring: PolyRing, generators: list[Polynomial]):
        self.ring = ring
        self.order = ring.order
        self.generators = sorted(generators, key=lambda g: ring.order.key(g.leading_monomial()))
        self.staircase = [g.leading_monomial() for g in self.generators]
        self._pairs = [(g.leading_monomial(), g.terms) for g in self.generators]

    def __repr__(self) -> str:
        return f"GroebnerBasis({[str(g) for g in self.generators]})"

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.staircase)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"polynomial from {f.ring}, basis over {self.ring}")
        if not self.generators:
            return f
        return Polynomial(self.ring, _reduce_terms(f.terms, self._pairs, self.ring))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_standard(self, m: Monomial) -> bool:
        return not any(divides(lm, m) for lm in self.staircase)

    def standard_monomials(self, d: int) -> list[Monomial]:
        """Standard monomials of degree d, largest first."""
        out = [m for m in monomials_of_degree(self.ring.nvars, d) if self.is_standard(m)]
        return sorted(out, key=self.order.key, reverse=True)

    def infinite_ray(self) -> int | None:
        """Index of a variable none of whose powers is a leading monomial, if any."""
        if self.is_unit_ideal():
            return None
        n = self.ring.nvars
        pure = set()
        for lm in self.staircase:
            support = [i for i, e in enumerate(lm) if e]
            if len(support) == 1:
                pure.add(support[0])
        for i in range(n):
            if i not in pure:
                return i
        return None

    def is_zero_dimensional(self) -> bool:
        return self.infinite_ray() is None

    def all_standard_monomials(self) -> list[Monomial]:
        """Whole finite staircase, ordered by degree then descending order."""
        if self.infinite_ray() is not None:
            raise ValueError("staircase is infinite")
        if self.is_unit_ideal():
            return []
        n = self.ring.nvars
        level = [(0,) * n]
        out = []
        while level:
            out.extend(sorted(level, key=self.order.key, reverse=True))
            nxt = set()
            for m in level:
                for i in range(n):
                    e = list(m)
                    e[i] += 1
                    e = tuple(e)
                    if self.is_standard(e):
                        nxt.add(e)
            level = list(nxt)
        return out

    def hilbert_function(self) -> list[int]:
        counts: dict[int, int] = {}
        for m in self.all_standard_monomials():
            counts[sum(m)] = counts.get(sum(m), 0) + 1
        top = max(counts) if counts else -1
        return [counts.get(d, 0) for d in range(top + 1)]

    def as_strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def _normalize_inputs(gens: Sequence[Polynomial]) -> tuple[PolyRing, list[Polynomial]]:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    return ring, [g.monic() for g in gens if not g.is_zero()]


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    F = f.ring.field
    a = f.mul_term(mono_div(lcm, lf), F.inv(f.leading_coefficient()))
    b = g.mul_term(mono_div(lcm, lg), F.inv(g.leading_coefficient()))
    return a - b


def buchberger(gens: Sequence[Polynomial], ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens`` w.r.t. the ring's order."""
    if ring is not None and not gens:
        return GroebnerBasis(ring, [])
    ring, G = _normalize_inputs(gens)
    if not G:
        return GroebnerBasis(ring, [])
    if any(sum(g.leading_monomial()) == 0 for g in G):
        return GroebnerBasis(ring, [ring.one])
    lms = [g.leading_monomial() for g in G]
    heap: list = []

    def add_pairs(j: int) -> None:
        for i in range(j):
            if G[i].is_monomial() and G[j].is_monomial():
                continue
            if coprime(lms[i], lms[j]):
                continue
            lcm = mono_lcm(lms[i], lms[j])
            heapq.heappush(heap, (sum(lcm), i, j))

    for j in range(len(G)):
        add_pairs(j)
    while heap:
        _, i, j = heapq.heappop(heap)
        s = s_polynomial(G[i], G[j])
        r = Polynomial(ring, _reduce_terms(s.terms, [(lm, g.terms) for lm, g in zip(lms, G)], ring))
        if r.is_zero():
            continue
        r = r.monic()
        G.append(r)
        lms.append(r.leading_monomial())
        if sum(lms[-1]) == 0:
            return GroebnerBasis(ring, [ring.one])
        add_pairs(len(G) - 1)
    return GroebnerBasis(ring, _interreduce(G, ring))


def _interreduce(G: list[Polynomial], ring: PolyRing) -> list[Polynomial]:
    # drop generators whose leading monomial is divisible by an earlier/other one
    keep: list[Polynomial] = []
    for k, g in enumerate(G):
        lm = g.leading_monomial()
        redundant = False
        for l, h in enumerate(G):
            if l == k:
                continue
            lh = h.leading_monomial()
            if divides(lh, lm) and (lh != lm or l < k):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for k, g in enumerate(keep):
        others = [(h.leading_monomial(), h.terms) for l, h in enumerate(keep) if l != k]
        lead = {g.leading_monomial(): g.leading_coefficient()}
        tail = {m: c for m, c in g.terms.items() if m != g.leading_monomial()}
        rest = _reduce_terms(tail, others, ring) if others else tail
        lead.update(rest)
        out.append(Polynomial(ring, lead).monic())
    return out


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def standard_monomials(gb: GroebnerBasis, d: int) -> list[Monomial]:
    return gb.standard_monomials(d)


def require_homogeneous(gens: Sequence[Polynomial]) -> None:
    for g in gens:
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"{g} is not homogeneous")


def is_irrelevant_primary(gens: Sequence[Polynomial]) -> tuple[bool, int | None]:
    """Whether the homogeneous ideal contains a power of the maximal ideal.

    Returns ``(True, N)`` with the least such exponent N, or ``(False, None)``.
    """
    require_homogeneous(gens)
    nonzero = [g for g in gens if not g.is_zero()]
    if nonzero:
        # cheap first pass: the ideal often fills a whole degree right away
        ring = nonzero[0].ring
        lo = min(g.degree() for g in nonzero)
        for d in range(lo, max(g.degree() for g in nonzero) + 2):
            if len(monomials_of_degree(ring.nvars, d)) > 4000:
                break
            if degree_component(nonzero, d)[1].dim == len(monomials_of_degree(ring.nvars, d)):
                return True, d
    gb = buchberger(gens)
    if gb.is_unit_ideal():
        return True, 0
    if gb.is_zero_ideal() or gb.infinite_ray() is not None:
        return False, None
    return True, len(gb.hilbert_function())


# ---------------------------------------------------------------------------
# degree-wise linear algebra on homogeneous ideals of the polynomial ring


def degree_component(gens: Sequence[Polynomial], d: int, *, shift_min: int = 0) -> tuple[list[Monomial], Subspace]:
    """The span of {m*g : deg m = d - deg g >= shift_min} inside the degree-d monomials."""
    ring = gens[0].ring
    mons = monomials_of_degree(ring.nvars, d)
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        e = d - g.degree()
        if e < shift_min:
            continue
        for m in monomials_of_degree(ring.nvars, e):
            rows.append(g.mul_term(m, ring.field.one))
    field = ring.field
    M = polys_to_matrix(rows, mons, field) if rows else field.zeros((0, len(mons)))
    return mons, Subspace(field, len(mons), M)


class GeneratorStatus(str, Enum):
    NOT_IN_IDEAL = "not-in-ideal"
    MINIMAL_GENERATOR = "minimal-generator"
    IN_M_TIMES_IDEAL = "in-m-times-ideal"


def minimal_generator_test(g: Polynomial, gens: Sequence[Polynomial]) -> GeneratorStatus:
    """Classify a homogeneous ``g`` against the ideal 𝔞 = (gens) and 𝔫𝔞."""
    require_homogeneous(list(gens) + [g])
    if g.is_zero():
        return GeneratorStatus.IN_M_TIMES_IDEAL
    d = g.degree()
    mons, full = degree_component(gens, d)
    v = polys_to_matrix([g], mons, g.ring.field)[0]
    if not full.contains(v):
        return GeneratorStatus.NOT_IN_IDEAL
    _, inner = degree_component(gens, d, shift_min=1)
    return GeneratorStatus.IN_M_TIMES_IDEAL if inner.contains(v) else GeneratorStatus.MINIMAL_GENERATOR


def ideal_containment(a_gens: Sequence[Polynomial], b_gens: Sequence[Polynomial]) -> bool:
    """Whether (a_gens) ⊆ (b_gens)."""
    gb = buchberger(list(b_gens), ring=a_gens[0].ring if a_gens else None)
    return all(gb.contains(a) for a in a_gens)


def count_minimal_generators(gens: Sequence[Polynomial]) -> int:
    """ν of a homogeneous ideal: Σ_d dim J_d / (𝔫J)_d."""
    require_homogeneous(gens)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return 0
    total = 0
    for d in sorted({g.degree() for g in gens}):
        _, full = degree_component(gens, d)
        _, inner = degree_component(gens, d, shift_min=1)
        total += full.dim - inner.dim
    return total


# ---------------------------------------------------------------------------
# zero-dimensional (possibly inhomogeneous) ideals


def eliminant(gb: GroebnerBasis, var: int) -> list:
    """Monic generator of I ∩ k[x_var] as a coefficient list (low degree first)."""
    if not gb.is_zero_dimensional():
        raise ValueError("eliminant needs a zero-dimensional ideal")
    ring = gb.ring
    field = ring.field
    basis = gb.all_standard_monomials()
    index = {m: i for i, m in enumerate(basis)}
    x = ring.gen(var)
    vecs = []
    cur = gb.normal_form(ring.one)
    while True:
        v = field.zeros(len(basis))
        for m, c in cur.terms.items():
            v[index[m]] = c
        vecs.append(v)
        M = np.array(vecs).T.copy()
        ker = nullspace(M, field)
        if ker.shape[0]:
            rel = ker[0]
            lead = rel[len(vecs) - 1]
            return [field(field.div(c, lead)) for c in rel]
        cur = gb.normal_form(cur * x)
