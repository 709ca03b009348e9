"""Graded artinian quotient rings P/𝔞 as finite-dimensional algebras.

Elements are coordinate row vectors over the standard-monomial basis,
which is ordered by degree.  Ideals are stored as subspaces of the whole
ring, so colon ideals, annihilators and minimal generators reduce to
nullspace problems.  For homogeneous ideals the reduced echelon rows are
homogeneous, which is what makes per-degree bookkeeping free.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeError, NotArtinianError, QciError, RingMismatchError
from .fields import Field
from .groebner import GroebnerBasis, buchberger, require_homogeneous
from .linalg import Subspace, complement_generators, identity, matmul, nullspace, vstack
from .polynomials import Monomial, Polynomial, PolyRing, MonomialOrder, GREVLEX


class GradedQuotientRing:
    """R = P/𝔞 for a homogeneous ideal 𝔞 with finite staircase."""

    def __init__(self, gens: Sequence[Polynomial], gb: GroebnerBasis | None = None):
        if not gens and gb is None:
            raise ValueError("need generators of the defining ideal")
        self.defining_gens = list(gens)
        require_homogeneous(self.defining_gens)
        self.gb = gb if gb is not None else buchberger(self.defining_gens, ring=gens[0].ring if gens else None)
        self.poly_ring: PolyRing = self.gb.ring
        self.field: Field = self.poly_ring.field
        self.nvars = self.poly_ring.nvars
        ray = self.gb.infinite_ray()
        if ray is not None:
            name = self.poly_ring.names[ray]
            raise NotArtinianError(f"quotient is not artinian: every power of {name} is standard", ray)
        self.basis: list[Monomial] = self.gb.all_standard_monomials()
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.degrees = np.array([sum(m) for m in self.basis], dtype=np.int64)
        self.hilbert = self.gb.hilbert_function()
        self.top_degree = len(self.hilbert) - 1
        self._build_structure()

    # -- structure constants --------------------------------------------
    def _coords_of_poly(self, f: Polynomial) -> np.ndarray:
        v = self.field.zeros(self.dim)
        for m, c in self.gb.normal_form(f).terms.items():
            v[self.index[m]] = c
        return v

    def _build_structure(self) -> None:
        F, n, N = self.field, self.nvars, self.dim
        P = self.poly_ring
        self.var_matrices = []
        for l in range(n):
            X = F.zeros((N, N))
            for j, m in enumerate(self.basis):
                e = list(m)
                e[l] += 1
                X[j] = self._coords_of_poly(P.monomial(tuple(e)))
            self.var_matrices.append(X)
        table = F.zeros((N, N, N))
        if N:
            table[0] = identity(N, F)
        for i, m in enumerate(self.basis[1:], start=1):
            l = next(k for k, e in enumerate(m) if e)
            prev = list(m)
            prev[l] -= 1
            table[i] = matmul(table[self.index[tuple(prev)]], self.var_matrices[l], F)
        self.table = table

    def base_change(self, field: Field) -> "GradedQuotientRing":
        """Same presentation over an extension field (the basis stays reduced)."""
        ring = self.poly_ring.with_field(field)
        gb = GroebnerBasis(ring, [g.change_ring(ring) for g in self.gb.generators])
        return GradedQuotientRing([g.change_ring(ring) for g in self.defining_gens], gb=gb)

    def __repr__(self) -> str:
        return f"GradedQuotientRing({self.field.name}, n={self.nvars}, hilbert={self.hilbert})"

    # -- elements ---------------------------------------------------------
    def element(self, f) -> "RingElement":
        if isinstance(f, RingElement):
            if f.ring is not self:
                raise RingMismatchError("element belongs to another ring")
            return f
        if isinstance(f, str):
            f = self.poly_ring.parse(f)
        if isinstance(f, Polynomial):
            if f.ring != self.poly_ring:
                raise RingMismatchError(f"polynomial over {f.ring}, ring over {self.poly_ring}")
            return RingElement(self, self._coords_of_poly(f))
        return RingElement(self, self._coords_of_poly(self.poly_ring.const(f)))

    def from_vector(self, v) -> "RingElement":
        return RingElement(self, np.asarray(v, dtype=self.field.dtype).copy())

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self.field.zeros(self.dim))

    @property
    def one(self) -> "RingElement":
        return self.element(1)

    def gens(self) -> list["RingElement"]:
        return [self.element(x) for x in self.poly_ring.gens()]

    def mult_matrix_of_vector(self, v: np.ndarray) -> np.ndarray:
        """Matrix M with (u*v) = u @ M."""
        F, N = self.field, self.dim
        flat = matmul(v.reshape(1, N), self.table.reshape(N, N * N), F)
        return flat.reshape(N, N)

    def basis_element(self, i: int) -> "RingElement":
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return RingElement(self, v)

    def degree_indices(self, d: int) -> np.ndarray:
        return np.nonzero(self.degrees == d)[0]

    # -- ideals -----------------------------------------------------------
    def ideal(self, gens: Iterable) -> "RingIdeal":
        elems = [self.element(g) for g in gens]
        rows = [e.mult_matrix() for e in elems if not e.is_zero()]
        space = Subspace(self.field, self.dim, vstack(rows, self.dim, self.field))
        return RingIdeal(self, space, elems)

    def ideal_from_space(self, space: Subspace) -> "RingIdeal":
        return RingIdeal(self, space, None)

    def maximal_ideal(self) -> "RingIdeal":
        return self.power_of_maximal(1)

    def power_of_maximal(self, k: int) -> "RingIdeal":
        idx = np.nonzero(self.degrees >= k)[0]
        return self.ideal_from_space(Subspace(self.field, self.dim, identity(self.dim, self.field)[idx]))

    def zero_ideal(self) -> "RingIdeal":
        return self.ideal_from_space(Subspace(self.field, self.dim))

    def unit_ideal(self) -> "RingIdeal":
        return self.power_of_maximal(0)

    def socle(self) -> "RingIdeal":
        return colon_ideal(self.zero_ideal(), self.maximal_ideal())

    def loewy_length(self) -> int:
        return self.top_degree + 1

    def hilbert_series(self) -> list[int]:
        return list(self.hilbert)

    def quotient_by(self, polys: Sequence[Polynomial]) -> "GradedQuotientRing":
        """The ring P/(𝔞 + polys)."""
        return GradedQuotientRing(self.defining_gens + [p for p in polys if not p.is_zero()])

    def annihilator(self, x) -> "RingIdeal":
        x = self.element(x)
        ker = nullspace(x.mult_matrix().T.copy(), self.field)
        return self.ideal_from_space(Subspace(self.field, self.dim, ker))

    def is_exact_zero_divisor(self, x) -> "RingElement | None":
        return is_exact_zero_divisor(self.element(x))


class RingElement:
    """An element of a :class:`GradedQuotientRing` in normal-form coordinates."""

    __slots__ = ("ring", "vec", "_mm")

    def __init__(self, ring: GradedQuotientRing, vec: np.ndarray):
        self.ring = ring
        self.vec = vec
        self._mm = None

    def _other(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingMismatchError("elements of different rings")
            return other
        return self.ring.element(other)

    def __add__(self, other) -> "RingElement":
        o = self._other(other)
        return RingElement(self.ring, self.ring.field.reduce_array(self.vec + o.vec))

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, self.ring.field.reduce_array(-self.vec))

    def __sub__(self, other) -> "RingElement":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "RingElement":
        return self._other(other) - self

    def __mul__(self, other) -> "RingElement":
        o = self._other(other)
        return RingElement(self.ring, matmul(self.vec.reshape(1, -1), o.mult_matrix(), self.ring.field)[0])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RingElement":
        out = self.ring.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            other = self._other(other)
        return other.ring is self.ring and np.array_equal(self.vec, other.vec)

    def __hash__(self) -> int:
        return hash(tuple(str(c) for c in self.vec))

    def mult_matrix(self) -> np.ndarray:
        if self._mm is None:
            self._mm = self.ring.mult_matrix_of_vector(self.vec)
        return self._mm

    def is_zero(self) -> bool:
        return not np.any(self.vec != 0)

    def in_maximal(self) -> bool:
        return self.ring.dim == 0 or self.vec[0] == 0

    def support_degrees(self) -> list[int]:
        return sorted({int(self.ring.degrees[i]) for i in np.nonzero(self.vec != 0)[0]})

    def is_homogeneous(self) -> bool:
        return len(self.support_degrees()) <= 1

    def degree(self) -> int:
        degs = self.support_degrees()
        if not degs:
            return -1
        if len(degs) > 1:
            raise DegreeError("element is not homogeneous")
        return degs[0]

    def order(self) -> int:
        """Least degree in the support (the 𝔪-adic order)."""
        degs = self.support_degrees()
        return degs[0] if degs else self.ring.top_degree + 1

    def to_poly(self) -> Polynomial:
        R = self.ring
        return R.poly_ring.from_dict({R.basis[i]: self.vec[i] for i in np.nonzero(self.vec != 0)[0]})

    def __str__(self) -> str:
        return str(self.to_poly())

    def __repr__(self) -> str:
        return f"RingElement({self})"


class RingIdeal:
    """An ideal of R stored as the subspace it spans."""

    def __init__(self, ring: GradedQuotientRing, space: Subspace, gens: list[RingElement] | None):
        self.ring = ring
        self.space = space
        self._gens = gens
        self._mingens = None

    def __repr__(self) -> str:
        return f"RingIdeal(dim={self.dim}, hilbert={self.hilbert_function()})"

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def gens(self) -> list[RingElement]:
        if self._gens is None:
            self._gens = self.minimal_generators()
        return self._gens

    def hilbert_function(self) -> list[int]:
        """Dimensions per degree (assumes a homogeneous ideal)."""
        counts = [0] * (self.ring.top_degree + 1)
        for c in self.space.pivots:
            counts[int(self.ring.degrees[c])] += 1
        return counts

    def quotient_hilbert(self) -> list[int]:
        h = [a - b for a, b in zip(self.ring.hilbert, self.hilbert_function())]
        while h and h[-1] == 0:
            h.pop()
        return h

    def is_homogeneous(self) -> bool:
        degs = self.ring.degrees
        for row in self.space.basis:
            if len({int(degs[i]) for i in np.nonzero(row != 0)[0]}) > 1:
                return False
        return True

    def contains(self, x) -> bool:
        return self.space.contains(self.ring.element(x).vec)

    def contains_ideal(self, other: "RingIdeal") -> bool:
        return self.space.contains_space(other.space)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingIdeal) and other.ring is self.ring and self.space == other.space

    def __add__(self, other: "RingIdeal") -> "RingIdeal":
        return RingIdeal(self.ring, self.space + other.space, None)

    def __mul__(self, other: "RingIdeal") -> "RingIdeal":
        R = self.ring
        rows = [matmul(self.space.basis, R.mult_matrix_of_vector(g.vec), R.field) for g in other.gens]
        return RingIdeal(R, Subspace(R.field, R.dim, vstack(rows, R.dim, R.field)), None)

    def intersect(self, other: "RingIdeal") -> "RingIdeal":
        return RingIdeal(self.ring, self.space.intersect(other.space), None)

    def m_times(self) -> "RingIdeal":
        R = self.ring
        if self.dim == 0:
            return self
        rows = [matmul(self.space.basis, X, R.field) for X in R.var_matrices]
        return RingIdeal(R, Subspace(R.field, R.dim, vstack(rows, R.dim, R.field)), None)

    def power(self, k: int) -> "RingIdeal":
        out = self.ring.unit_ideal()
        for _ in range(k):
            out = out * self
        return out

    def minimal_generators(self) -> list[RingElement]:
        """Echelon rows, lowest degree first, that are independent modulo 𝔪J."""
        if self._mingens is None:
            chosen = complement_generators(self.space, self.m_times().space)
            self._mingens = [self.ring.from_vector(v) for v in chosen]
        return self._mingens

    def nu(self) -> int:
        return self.dim - self.m_times().dim

    def is_proper(self) -> bool:
        return self.ring.dim > 0 and not self.space.contains(self.ring.one.vec)

    def is_principal(self) -> bool:
        return self.nu() <= 1

    def quotient_ring(self) -> GradedQuotientRing:
        """R/J as a new ring presented over the same polynomial ring."""
        return self.ring.quotient_by([g.to_poly() for g in self.minimal_generators()])


def build_quotient(gens: Sequence[Polynomial]) -> GradedQuotientRing:
    return GradedQuotientRing(gens)


def build_quotient_from_text(text_gens: Sequence[str], nvars: int, field: Field, order: MonomialOrder = GREVLEX) -> GradedQuotientRing:
    ring = PolyRing(nvars, field, order)
    return GradedQuotientRing([ring.parse(t) for t in text_gens])


def hilbert_series(R: GradedQuotientRing) -> list[int]:
    return R.hilbert_series()


def loewy_length(R: GradedQuotientRing) -> int:
    return R.loewy_length()


def _projection_mod(J: RingIdeal) -> np.ndarray:
    """Matrix P with w @ P = remainder of w modulo J."""
    R = J.ring
    F = R.field
    P = identity(R.dim, F)
    if J.dim:
        S = F.zeros((R.dim, J.dim))
        for i, c in enumerate(J.space.pivots):
            S[c, i] = F.one
        P = F.reduce_array(P - matmul(S, J.space.basis, F))
    return P


def colon_ideal(J: RingIdeal, K: RingIdeal) -> RingIdeal:
    """(J : K) = {r : rK ⊆ J}."""
    if J.ring is not K.ring:
        raise RingMismatchError("ideals of different rings")
    R = J.ring
    F = R.field
    gens = [g for g in K.minimal_generators()]
    if not gens:
        return R.unit_ideal()
    P = _projection_mod(J)
    blocks = [matmul(g.mult_matrix(), P, F) for g in gens]
    big = np.hstack(blocks)
    ker = nullspace(big.T.copy(), F)
    return R.ideal_from_space(Subspace(F, R.dim, ker))


def min_gens_nu(J: RingIdeal) -> int:
    return J.nu()


def is_exact_zero_divisor(x: RingElement) -> RingElement | None:
    """Complementary y with (0:x) = (y) and (0:y) = (x), or None."""
    R = x.ring
    if x.is_zero():
        raise QciError("zero is not a candidate exact zero-divisor")
    if not x.in_maximal():
        raise QciError("units are not zero-divisors")
    ann = R.annihilator(x)
    if ann.nu() != 1:
        return None
    y = ann.minimal_generators()[0]
    xi = R.ideal([x])
    if R.annihilator(y) != xi:
        return None
    if ann.dim != R.dim - xi.dim:
        return None
    if x.is_homogeneous() and y.is_homogeneous():
        shift = y.degree()
        hq = xi.quotient_hilbert()
        expected = [hq[d - shift] if 0 <= d - shift < len(hq) else 0 for d in range(R.top_degree + 1)]
        if ann.hilbert_function() != expected:
            return None
    return y
