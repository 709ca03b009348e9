"""Poincaré series, deviations, quadratic duals, minimal resolutions and
the complexity obstruction to embeddedness."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .corpus import EXAMPLES, ring_B
from .errors import BoundsError, DegreeError, FieldError, MalformedSeriesError, NonMinimalError, UnsupportedError
from .fields import GF
from .koszul import homology_report, KoszulComplex
from .linalg import Subspace, complement_generators, matmul, nullspace, vstack
from .quotient import GradedQuotientRing, RingIdeal


# ---------------------------------------------------------------------------
# power series


class PowerSeries:
    """Exact power series truncated after ``len(coeffs)`` terms."""

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        order = len(cs) if order is None else order
        self.coeffs = (cs + [Fraction(0)] * order)[:order]
        self.order = order

    def __repr__(self) -> str:
        return f"PowerSeries({self.as_ints() if self.is_integral() else self.coeffs})"

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < self.order else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise MalformedSeriesError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * order
        for i, a in enumerate(self.coeffs[:order]):
            if a:
                for j in range(order - i):
                    out[i + j] += a * other.coeffs[j]
        return PowerSeries(out, order)

    def inverse(self) -> "PowerSeries":
        if self.coeffs[0] == 0:
            raise MalformedSeriesError("constant term is zero")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for k in range(1, self.order):
            s = sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1))
            out.append(-s * inv0)
        return PowerSeries(out, self.order)

    def negate_variable(self) -> "PowerSeries":
        return PowerSeries([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.order)


def binomial_series(step: int, sign: int, exponent: int, order: int) -> PowerSeries:
    """(1 + sign*z^step)^exponent with a generalized binomial expansion."""
    out = [Fraction(0)] * order
    k = 0
    while step * k < order:
        c = Fraction(1)
        for t in range(k):
            c = c * (exponent - t) / (t + 1)
        out[step * k] = c * sign**k
        k += 1
    return PowerSeries(out, order)


def poincare_from_koszul(hilbert: Sequence[int], order: int = 8) -> PowerSeries:
    """1/H(-z), the Poincaré series of k over a Koszul algebra with Hilbert series H."""
    H = PowerSeries(hilbert, max(order, len(hilbert)))
    if H[0] != 1:
        raise MalformedSeriesError("Hilbert series must start with 1")
    out = H.negate_variable().inverse()
    return PowerSeries(out.coeffs[:order], order)


def deviations(P: PowerSeries | Sequence, m: int) -> list[int]:
    """ε_1..ε_m with P = Π_odd (1+z^i)^ε_i / Π_even (1-z^i)^ε_i modulo z^(m+1)."""
    if not isinstance(P, PowerSeries):
        P = PowerSeries(P)
    if P.order < m + 1:
        raise BoundsError(f"need {m + 1} coefficients, series has {P.order}")
    if P[0] != 1:
        raise MalformedSeriesError("Poincaré series must start with 1")
    order = m + 1
    Q = PowerSeries(P.coeffs[:order], order)
    eps = []
    for i in range(1, m + 1):
        e = Q[i]
        if e.denominator != 1:
            raise MalformedSeriesError(f"non-integer deviation at i={i}: {e}")
        e = int(e)
        eps.append(e)
        factor = binomial_series(i, 1, e, order) if i % 2 else binomial_series(i, -1, -e, order)
        Q = Q * factor.inverse()
    return eps


def series_from_deviations(eps: Sequence[int], order: int) -> PowerSeries:
    out = PowerSeries([1], order)
    for i, e in enumerate(eps, start=1):
        out = out * (binomial_series(i, 1, e, order) if i % 2 else binomial_series(i, -1, -e, order))
    return out


def tate_betti(n: int, length: int) -> list[int]:
    """Coefficients of (1+z)^n / (1-z^2)^n."""
    s = binomial_series(1, 1, n, length) * binomial_series(2, -1, -n, length)
    return s.as_ints()


# ---------------------------------------------------------------------------
# quadratic dual


@dataclass
class QuadraticDual:
    """A^! = T(V*)/(R^⊥) through degree 3 (plain pairing of tensor bases)."""

    n: int
    field: object
    rperp2: Subspace  # R^⊥ inside V*⊗V*
    w3: Subspace  # R^⊥⊗V* + V*⊗R^⊥ inside V*^{⊗3}

    @property
    def dims(self) -> tuple[int, int, int]:
        n = self.n
        return (n, n * n - self.rperp2.dim, n**3 - self.w3.dim)

    def basis2(self) -> list[tuple[int, int]]:
        """Index pairs whose classes form a basis of A^!_2."""
        return [divmod(c, self.n) for c in self.rperp2.complement_pivots()]

    def coords2(self, tensor: np.ndarray) -> np.ndarray:
        return self.rperp2.quotient_coords(tensor.reshape(-1, self.n**2))

    def coords3(self, tensor: np.ndarray) -> np.ndarray:
        return self.w3.quotient_coords(tensor.reshape(-1, self.n**3))

    def product_11(self) -> np.ndarray:
        """Tensor M[a, b] = coordinates of t_a t_b in A^!_2."""
        n, F = self.n, self.field
        T = F.zeros((n * n, n * n))
        for k in range(n * n):
            T[k, k] = F.one
        return self.coords2(T).reshape(n, n, -1)

    def product_12(self) -> np.ndarray:
        """M[a, k] = coordinates of t_a * u_k in A^!_3 (u_k the degree-2 basis)."""
        n, F = self.n, self.field
        rows = []
        for a in range(n):
            for b, c in self.basis2():
                e = F.zeros(n**3)
                e[(a * n + b) * n + c] = F.one
                rows.append(e)
        return self.coords3(np.array(rows)).reshape(n, len(self.basis2()), -1)

    def product_21(self) -> np.ndarray:
        n, F = self.n, self.field
        rows = []
        for b, c in self.basis2():
            for a in range(n):
                e = F.zeros(n**3)
                e[(b * n + c) * n + a] = F.one
                rows.append(e)
        return self.coords3(np.array(rows)).reshape(len(self.basis2()), n, -1)


def quadratic_dual(R: GradedQuotientRing) -> QuadraticDual:
    """Quadratic dual of a commutative algebra presented by quadrics."""
    F = R.field
    if F.characteristic == 2:
        raise FieldError("characteristic 2 is unsupported for quadratic duals")
    n = R.nvars
    for g in R.defining_gens:
        if not g.is_zero() and (not g.is_homogeneous() or g.degree() != 2):
            raise DegreeError(f"relation {g} is not quadratic")
    rels = []
    for i in range(n):
        for j in range(i + 1, n):
            v = F.zeros(n * n)
            v[i * n + j] = F.one
            v[j * n + i] = F.neg(F.one)
            rels.append(v)
    for g in R.defining_gens:
        v = F.zeros(n * n)
        for m, c in g.terms.items():
            idx = [k for k, e in enumerate(m) for _ in range(e)]
            i, j = idx
            v[i * n + j] = F.add(v[i * n + j], c)
        rels.append(v)
    Rspace = Subspace(F, n * n, np.array(rels))
    rperp = Subspace(F, n * n, nullspace(Rspace.basis, F))
    # W3 = R^⊥ ⊗ V* + V* ⊗ R^⊥
    rows = []
    for r in rperp.basis:
        r2 = r.reshape(n, n)
        for a in range(n):
            left = F.zeros((n, n, n))
            left[:, :, a] = r2
            rows.append(left.reshape(-1))
            right = F.zeros((n, n, n))
            right[a] = r2
            rows.append(right.reshape(-1))
    w3 = Subspace(F, n**3, np.array(rows) if rows else None)
    return QuadraticDual(n, F, rperp, w3)


def degree2_center(D: QuadraticDual) -> tuple[int, np.ndarray]:
    """Basis (coordinates in A^!_2) of {z : z t = t z for every t in A^!_1}."""
    F = D.field
    if F.characteristic in (2, 3):
        raise FieldError("degree-2 commutant needs characteristic 0 or p > 3")
    n = D.n
    b2 = D.basis2()
    if not b2:
        return 0, F.zeros((0, 0))
    blocks = []
    for a in range(n):
        rows = []
        for b, c in b2:
            e = F.zeros(n**3)
            e[(b * n + c) * n + a] = F.add(e[(b * n + c) * n + a], F.one)
            e[(a * n + b) * n + c] = F.sub(e[(a * n + b) * n + c], F.one)
            rows.append(e)
        blocks.append(D.coords3(np.array(rows)))
    M = np.hstack(blocks)
    ker = nullspace(M.T.copy(), F)
    return ker.shape[0], ker


def commutes_with_generators(D: QuadraticDual, tensor2: np.ndarray) -> bool:
    """Whether the class of a V*⊗V* tensor commutes with every t_a in A^!."""
    F, n = D.field, D.n
    t = tensor2.reshape(n, n)
    for a in range(n):
        e = F.zeros((n, n, n))
        e[:, :, a] = F.reduce_array(e[:, :, a] + t)
        e[a] = F.reduce_array(e[a] - t)
        if np.any(D.coords3(e.reshape(-1)) != 0):
            return False
    return True


# ---------------------------------------------------------------------------
# minimal graded free resolutions


@dataclass
class BettiTable:
    betti: dict = dc_field(default_factory=dict)  # (i, j) -> beta_{i,j}
    hd_bound: int = 0
    internal_bound: int | None = None

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.betti.items() if a == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.hd_bound + 1)]

    def is_linear(self) -> bool:
        return all(j == i for (i, j), v in self.betti.items() if v)

    def to_dict(self) -> dict:
        return {
            "totals": self.totals(),
            "graded": [[i, j, v] for (i, j), v in sorted(self.betti.items()) if v],
            "hd_bound": self.hd_bound,
            "internal_bound": self.internal_bound,
        }

    def render(self) -> str:
        """Macaulay-style table: column i, row j - i."""
        entries = {(i, j): v for (i, j), v in self.betti.items() if v}
        cols = list(range(self.hd_bound + 1))
        rows = sorted({j - i for (i, j) in entries}) or [0]
        cells = {(r, i): str(entries.get((i, i + r), ".")) for r in rows for i in cols}
        totals = [str(self.total(i)) for i in cols]
        width = [max(len(str(i)), len(totals[i]), *(len(cells[(r, i)]) for r in rows)) for i in cols]
        label = max(len("total:"), *(len(f"{r}:") for r in rows))
        lines = [" " * label + " " + " ".join(str(i).rjust(w) for i, w in zip(cols, width))]
        lines.append("total:".rjust(label) + " " + " ".join(t.rjust(w) for t, w in zip(totals, width)))
        for r in rows:
            lines.append(f"{r}:".rjust(label) + " " + " ".join(cells[(r, i)].rjust(w) for i, w in zip(cols, width)))
        return "\n".join(lines)


class _FreeModule:
    """Graded free R-module with generators in the given degrees; degree-d coordinates.

    The degree-d coordinates list, generator by generator, the basis
    monomials of R of degree d - deg(generator).
    """

    def __init__(self, R: GradedQuotientRing, gen_degrees: list[int]):
        self.R = R
        self.gd = gen_degrees
        self._idx: dict[int, list[tuple[int, int]]] = {}
        self._blocks: dict[int, list[tuple[int, np.ndarray]]] = {}

    def blocks(self, d: int) -> list[tuple[int, np.ndarray]]:
        """Per generator: (offset, basis indices of R in degree d - deg g)."""
        if d not in self._blocks:
            out, off = [], 0
            for dg in self.gd:
                idx = self.R.degree_indices(d - dg)
                out.append((off, idx))
                off += len(idx)
            self._blocks[d] = out
        return self._blocks[d]

    def size(self, d: int) -> int:
        b = self.blocks(d)
        return b[-1][0] + len(b[-1][1]) if b else 0

    def index(self, d: int) -> list[tuple[int, int]]:
        if d not in self._idx:
            self._idx[d] = [(g, int(i)) for g, (_, idx) in enumerate(self.blocks(d)) for i in idx]
        return self._idx[d]

    def degrees(self) -> range:
        if not self.gd:
            return range(0)
        return range(min(self.gd), max(self.gd) + self.R.top_degree + 1)


def _map_block(R: GradedQuotientRing, src: _FreeModule, dst: _FreeModule, images: list[dict], d: int, cache: dict) -> np.ndarray:
    """Matrix of the degree-d part of a map sending generator g to images[g] (dict g' -> vector)."""
    F = R.field
    M = F.zeros((src.size(d), dst.size(d)))
    dblocks = dst.blocks(d)
    for g, (roff, ridx) in enumerate(src.blocks(d)):
        if len(ridx) == 0:
            continue
        for gp, vec in images[g].items():
            coff, cidx = dblocks[gp]
            if len(cidx) == 0:
                continue
            key = (g, gp)
            if key not in cache:
                cache[key] = R.mult_matrix_of_vector(vec)
            M[roff : roff + len(ridx), coff : coff + len(cidx)] = cache[key][np.ix_(ridx, cidx)]
    return M


def _var_action(R: GradedQuotientRing, mod: _FreeModule, d: int) -> list[np.ndarray]:
    """Matrices of multiplication by each variable from degree d-1 to degree d."""
    F = R.field
    src, dst = mod.blocks(d - 1), mod.blocks(d)
    out = []
    for X in R.var_matrices:
        M = F.zeros((mod.size(d - 1), mod.size(d)))
        for (roff, ridx), (coff, cidx) in zip(src, dst):
            if len(ridx) and len(cidx):
                M[roff : roff + len(ridx), coff : coff + len(cidx)] = X[np.ix_(ridx, cidx)]
        out.append(M)
    return out


def minimal_resolution(
    R: GradedQuotientRing,
    J: RingIdeal,
    hd_bound: int,
    internal_bound: int | None = None,
) -> BettiTable:
    """Graded Betti numbers of R/J over R up to homological degree ``hd_bound``."""
    F = R.field
    table = BettiTable(hd_bound=hd_bound, internal_bound=internal_bound)
    table.betti[(0, 0)] = 1
    F0 = _FreeModule(R, [0])
    # generators of the first syzygy: minimal generators of J
    gens = [g for g in J.minimal_generators()]
    cur_images = [{0: g.vec} for g in gens]
    cur_degrees = [g.degree() for g in gens]
    if internal_bound is not None:
        keep = [k for k, d in enumerate(cur_degrees) if d <= internal_bound]
        cur_images = [cur_images[k] for k in keep]
        cur_degrees = [cur_degrees[k] for k in keep]
    target = F0
    for i in range(1, hd_bound + 1):
        for d in cur_degrees:
            table.betti[(i, d)] = table.betti.get((i, d), 0) + 1
        if i == hd_bound or not cur_degrees:
            break
        src = _FreeModule(R, cur_degrees)
        # minimality: no image has a nonzero component of degree zero
        for g, img in enumerate(cur_images):
            for gp, vec in img.items():
                if cur_degrees[g] == target.gd[gp] and np.any(vec != 0):
                    raise NonMinimalError("resolution differential has a unit entry")
        next_images: list[dict] = []
        next_degrees: list[int] = []
        kernels: dict[int, Subspace] = {}
        mult_cache: dict = {}
        for d in src.degrees():
            if internal_bound is not None and d > internal_bound:
                break
            rows = src.index(d)
            if not rows:
                kernels[d] = Subspace(F, 0)
                continue
            M = _map_block(R, src, target, cur_images, d, mult_cache)
            ker = Subspace(F, len(rows), nullspace(M.T.copy(), F))
            kernels[d] = ker
            if ker.dim == 0:
                continue
            prev = kernels.get(d - 1)
            if prev is not None and prev.dim:
                acts = _var_action(R, src, d)
                mk = Subspace(F, len(rows), vstack([matmul(prev.basis, A, F) for A in acts], len(rows), F))
            else:
                mk = Subspace(F, len(rows))
            for v in complement_generators(ker, mk):
                img: dict = {}
                for (g, idx), c in zip(rows, v):
                    if c != 0:
                        if g not in img:
                            img[g] = F.zeros(R.dim)
                        img[g][idx] = c
                next_images.append(img)
                next_degrees.append(d)
        target = src
        cur_images, cur_degrees = next_images, next_degrees
    return table


def resolve_residue_field(R: GradedQuotientRing, hd_bound: int) -> BettiTable:
    return minimal_resolution(R, R.maximal_ideal(), hd_bound)


def is_koszul_up_to(R: GradedQuotientRing, N: int = 5) -> bool:
    """β_{i,j}(k) = 0 for j != i and i <= N."""
    return resolve_residue_field(R, N).is_linear()


# ---------------------------------------------------------------------------
# presentations over the ambient polynomial ring


def ambient_betti(R: GradedQuotientRing, graded: bool = False):
    """β_i of R over the ambient polynomial ring, via Koszul homology on x_1..x_n."""

    K = KoszulComplex(R, R.gens(), check_minimal=False, degrees=[1] * R.nvars)
    rep = homology_report(K, h1_generators=False)
    if graded:
        return {(p, d): v for (p, d), v in sorted(rep.h.items()) if v}
    return rep.totals("h")


def is_complete_intersection(R: GradedQuotientRing) -> bool:
    if len(R.hilbert) > 1 and R.hilbert[1] != R.nvars:
        raise NonMinimalError("defining ideal contains linear forms; presentation is not minimal")
    betti = ambient_betti(R)
    return len(betti) > 1 and betti[1] == R.nvars or R.nvars == 0


# ---------------------------------------------------------------------------

def ring_fingerprint(R: GradedQuotientRing) -> tuple:
    return (R.nvars, tuple(str(g) for g in R.gb.generators))


def validated_proxy_rings() -> set:
    """Fingerprints of corpus rings whose degree-2 commutant is known independently."""

    out = {ring_fingerprint(ring_B(GF(101)))}
    for ex in EXAMPLES:
        if ex.name.startswith("ci") or ex.name == "dual-numbers":
            out.add(ring_fingerprint(ex.ring(GF(101))))
    return out


@dataclass
class EmbeddednessVerdict:
    verdict: str  # "not-embedded" | "inconclusive"
    complexity: int
    center_dim: int
    koszul_bound: int
    qualifier: str  # "validated" | "proxy"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "complexity": self.complexity,
            "degree2_center_dim": self.center_dim,
            "koszul_checked_up_to": self.koszul_bound,
            "qualifier": self.qualifier,
        }


def embeddedness_obstruction(R: GradedQuotientRing, certificate, koszul_bound: int = 5) -> EmbeddednessVerdict:
    """Compare cx = ν(I) - grade with the dimension of the degree-2 commutant of A^!."""
    if not getattr(certificate, "ok", False):
        raise UnsupportedError("a q.c.i. certificate is required")
    if not is_koszul_up_to(R, koszul_bound):
        raise UnsupportedError(f"ring is not Koszul up to {koszul_bound}; the commutant proxy does not apply")
    cx = len(certificate.f) - certificate.grade
    c, _ = degree2_center(quadratic_dual(R))
    verdict = "not-embedded" if c < cx else "inconclusive"
    qualifier = "validated" if ring_fingerprint(R) in validated_proxy_rings() else "proxy"
    return EmbeddednessVerdict(verdict, cx, c, koszul_bound, qualifier)
