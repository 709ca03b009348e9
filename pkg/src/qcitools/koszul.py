"""Koszul complexes over graded artinian rings, q.c.i. certificates and
exact-zero-divisor searches.

Conventions: E_p has basis v_S for increasing index tuples S of length p,
deg v_i = deg f_i, and d(v_S) = sum_k (-1)^k f_{S_k} v_{S minus S_k}
(k counted from 0).  Vectors in E_p are row vectors whose coordinates are
sorted by internal degree, so echelon rows of graded subspaces are
homogeneous and come out lowest degree first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .errors import DegreeError, NonMinimalError, NotHomogeneousError, QciError, UnsupportedError
from .groebner import buchberger
from .linalg import Subspace, batch_rank_modp, complement_generators, identity, matmul, nullspace, rank, vstack
from .polynomials import PolyRing, Polynomial, monomials_of_degree
from .quotient import GradedQuotientRing, RingElement, RingIdeal, colon_ideal, is_exact_zero_divisor


def _det(rows: list[list[RingElement]], R: GradedQuotientRing) -> RingElement:
    """Determinant by cofactor expansion along the first row."""
    k = len(rows)
    if k == 0:
        return R.one
    if k == 1:
        return rows[0][0]
    acc = R.zero
    for j in range(k):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(minor, R)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _shift_hilbert(h: Sequence[int], s: int, length: int) -> list[int]:
    return [h[d - s] if 0 <= d - s < len(h) else 0 for d in range(length)]


class KoszulComplex:
    """The Koszul complex E on a minimal homogeneous sequence f_1..f_n of R."""

    def __init__(self, R: GradedQuotientRing, f: Sequence, check_minimal: bool = True, degrees: Sequence[int] | None = None):
        self.ring = R
        self.f = [R.element(x) for x in f]
        for x in self.f:
            if x.is_zero() and degrees is None:
                raise NonMinimalError("zero element in the sequence")
            if not x.in_maximal():
                raise DegreeError("sequence elements must lie in the maximal ideal")
            if not x.is_homogeneous():
                raise NotHomogeneousError(f"{x} is not homogeneous")
        self.n = n = len(self.f)
        if check_minimal and R.ideal(self.f).nu() != n:
            raise NonMinimalError("the sequence is not a minimal generating set of the ideal it generates")
        self.fdeg = list(degrees) if degrees is not None else [x.degree() for x in self.f]
        self.subsets = [list(itertools.combinations(range(n), p)) for p in range(n + 1)]
        self.subset_index = [{S: i for i, S in enumerate(subs)} for subs in self.subsets]
        N = R.dim
        self._perm = []
        self.coord_degrees = []
        for p in range(n + 1):
            nat = np.concatenate(
                [R.degrees + sum(self.fdeg[i] for i in S) for S in self.subsets[p]]
            ) if self.subsets[p] else np.zeros(0, dtype=np.int64)
            perm = np.argsort(nat, kind="stable")
            self._perm.append(perm)
            self.coord_degrees.append(nat[perm])
        self._boundary: dict[int, np.ndarray] = {}
        self._cycles: dict[int, Subspace] = {}
        self._bounds: dict[int, Subspace] = {}
        self.N = N

    def rank_of(self, p: int) -> int:
        return len(self.subsets[p]) if 0 <= p <= self.n else 0

    def dim(self, p: int) -> int:
        return self.rank_of(p) * self.N

    # -- coordinates --------------------------------------------------------
    def to_sorted(self, p: int, natural: np.ndarray) -> np.ndarray:
        return natural[..., self._perm[p]]

    def to_natural(self, p: int, sorted_vec: np.ndarray) -> np.ndarray:
        out = np.empty_like(sorted_vec)
        out[..., self._perm[p]] = sorted_vec
        return out

    def vector(self, p: int, coeffs: dict) -> np.ndarray:
        """Vector of sum coeffs[S] v_S (coeffs maps index tuples to ring elements)."""
        F, N = self.ring.field, self.N
        nat = F.zeros(self.dim(p))
        for S, r in coeffs.items():
            s = self.subset_index[p][tuple(S)]
            nat[s * N : (s + 1) * N] = self.ring.element(r).vec
        return self.to_sorted(p, nat)

    def components(self, p: int, vec: np.ndarray) -> dict:
        nat = self.to_natural(p, vec)
        N = self.N
        return {S: self.ring.from_vector(nat[s * N : (s + 1) * N]) for s, S in enumerate(self.subsets[p])}

    # -- maps -------------------------------------------------------------
    def boundary(self, p: int) -> np.ndarray:
        """Matrix of d: E_p -> E_{p-1} acting on row vectors."""
        if p not in self._boundary:
            F, N = self.ring.field, self.N
            D = F.zeros((self.dim(p), self.dim(p - 1)))
            if 1 <= p <= self.n:
                mats = [x.mult_matrix() for x in self.f]
                for s, S in enumerate(self.subsets[p]):
                    for k, i in enumerate(S):
                        t = self.subset_index[p - 1][S[:k] + S[k + 1 :]]
                        block = mats[i] if k % 2 == 0 else F.reduce_array(-mats[i])
                        D[s * N : (s + 1) * N, t * N : (t + 1) * N] = block
                D = D[self._perm[p]][:, self._perm[p - 1]]
            self._boundary[p] = D
        return self._boundary[p]

    def check_d_squared(self) -> bool:
        F = self.ring.field
        for p in range(2, self.n + 1):
            if np.any(matmul(self.boundary(p), self.boundary(p - 1), F) != 0):
                return False
        return True

    def cycles(self, p: int) -> Subspace:
        if p not in self._cycles:
            F = self.ring.field
            if p == 0:
                self._cycles[p] = Subspace(F, self.dim(0), identity(self.dim(0), F))
            else:
                D = self.boundary(p)
                self._cycles[p] = Subspace(F, self.dim(p), nullspace(D.T.copy(), F))
        return self._cycles[p]

    def boundaries(self, p: int) -> Subspace:
        if p not in self._bounds:
            F = self.ring.field
            if p >= self.n:
                self._bounds[p] = Subspace(F, self.dim(p))
            else:
                self._bounds[p] = Subspace(F, self.dim(p), self.boundary(p + 1))
        return self._bounds[p]

    def act(self, p: int, rows: np.ndarray, r: RingElement) -> np.ndarray:
        """Multiply each row (an element of E_p) by the ring element r."""
        F, N = self.ring.field, self.N
        if rows.shape[0] == 0:
            return rows
        nat = self.to_natural(p, rows)
        M = r.mult_matrix()
        out = F.zeros(nat.shape)
        for s in range(self.rank_of(p)):
            out[:, s * N : (s + 1) * N] = matmul(nat[:, s * N : (s + 1) * N], M, F)
        return self.to_sorted(p, out)

    def submodule_rows(self, p: int, vec: np.ndarray) -> np.ndarray:
        """Rows b_i * vec for every basis element b_i of R."""
        R = self.ring
        rows = np.stack([vec] * R.dim) if R.dim else vec.reshape(0, -1)
        F, N = R.field, self.N
        nat = self.to_natural(p, rows)
        out = F.zeros(nat.shape)
        for s in range(self.rank_of(p)):
            w = nat[0, s * N : (s + 1) * N]
            out[:, s * N : (s + 1) * N] = R.mult_matrix_of_vector(w)
        return self.to_sorted(p, out)

    def m_times(self, p: int, space: Subspace) -> Subspace:
        R = self.ring
        rows = [self.act(p, space.basis, x) for x in R.gens()]
        return Subspace(R.field, self.dim(p), vstack(rows, self.dim(p), R.field))

    def degree_dims(self, p: int, space: Subspace) -> dict[int, int]:
        """Dimensions per internal degree of a graded subspace of E_p."""
        out: dict[int, int] = {}
        for c in space.pivots:
            d = int(self.coord_degrees[p][c])
            out[d] = out.get(d, 0) + 1
        return out


@dataclass
class HomologyReport:
    n: int
    z: dict = dc_field(default_factory=dict)  # (p, d) -> dim Z
    b: dict = dc_field(default_factory=dict)
    h: dict = dc_field(default_factory=dict)
    h1_cycles: list = dc_field(default_factory=list)  # sorted-coordinate vectors in E_1
    h1_degrees: list = dc_field(default_factory=list)

    def total(self, table: str, p: int) -> int:
        return sum(v for (q, _), v in getattr(self, table).items() if q == p)

    def totals(self, table: str) -> list[int]:
        return [self.total(table, p) for p in range(self.n + 1)]

    def per_degree(self, table: str, p: int) -> dict[int, int]:
        return {d: v for (q, d), v in sorted(getattr(self, table).items()) if q == p and v}

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * self.total("h", p) for p in range(self.n + 1))

    def to_dict(self) -> dict:
        return {
            "totals": {"Z": self.totals("z"), "B": self.totals("b"), "H": self.totals("h")},
            "per_degree": {
                t.upper(): {str(p): {str(d): v for d, v in self.per_degree(t, p).items()} for p in range(self.n + 1)}
                for t in ("z", "b", "h")
            },
            "h1_generator_degrees": self.h1_degrees,
        }


def build_koszul(R: GradedQuotientRing, f: Sequence, check_minimal: bool = True) -> KoszulComplex:
    K = KoszulComplex(R, f, check_minimal)
    if not K.check_d_squared():
        raise QciError("boundary maps do not compose to zero")
    return K


def homology_report(K: KoszulComplex, h1_generators: bool = True) -> HomologyReport:
    rep = HomologyReport(K.n)
    for p in range(K.n + 1):
        Z = K.cycles(p)
        B = K.boundaries(p)
        zd = K.degree_dims(p, Z)
        bd = K.degree_dims(p, B)
        for d in sorted(set(zd) | set(bd)):
            rep.z[(p, d)] = zd.get(d, 0)
            rep.b[(p, d)] = bd.get(d, 0)
            rep.h[(p, d)] = zd.get(d, 0) - bd.get(d, 0)
    if K.n >= 1 and h1_generators:
        Z1 = K.cycles(1)
        denom = K.boundaries(1) + K.m_times(1, Z1)
        rep.h1_cycles = complement_generators(Z1, denom)
        rep.h1_degrees = [int(K.coord_degrees[1][np.nonzero(v != 0)[0][0]]) for v in rep.h1_cycles]
    return rep


def grade_from_homology(rep: HomologyReport) -> int:
    top = max((p for p in range(rep.n + 1) if rep.total("h", p) > 0), default=0)
    return rep.n - top


def grade(R: GradedQuotientRing, I: RingIdeal) -> int:
    """grade_R(I) = n - max{p : H_p(E) != 0} for the Koszul complex on minimal generators."""
    if I.dim == 0:
        raise QciError("grade of the zero ideal is undefined here")
    if not I.is_proper():
        raise QciError("grade of the unit ideal is undefined here")
    K = build_koszul(R, I.minimal_generators())
    return grade_from_homology(homology_report(K))


# ---------------------------------------------------------------------------


@dataclass
class QciRefutation:
    check: str
    bidegree: tuple | None
    detail: str
    ok: bool = False

    def to_dict(self) -> dict:
        return {"qci": False, "failed_check": self.check, "bidegree": self.bidegree, "detail": self.detail}


@dataclass
class QciCertificate:
    ring: GradedQuotientRing
    f: list
    report: HomologyReport
    A: list  # A[i][j] = coefficient of v_i in z_j
    cycle_degrees: list
    delta: RingElement | None
    grade: int
    evidence: dict
    lambda_evidence: dict
    ok: bool = True

    def to_dict(self) -> dict:
        return {
            "qci": True,
            "nu_I": len(self.f),
            "nu_H1": len(self.cycle_degrees),
            "grade": self.grade,
            "cycle_degrees": self.cycle_degrees,
            "A": [[str(a) for a in row] for row in self.A],
            "delta": None if self.delta is None else str(self.delta),
            "homology": self.report.to_dict(),
            "evidence": self.evidence,
            "lambda": {str(p): v for p, v in self.lambda_evidence.items()},
        }


def _coefficient_matrix(K: KoszulComplex, cycles: list[np.ndarray]) -> list[list[RingElement]]:
    comps = [K.components(1, z) for z in cycles]
    return [[comps[j][(i,)] for j in range(len(cycles))] for i in range(K.n)]


def _first_mismatch(p: int, got: dict[int, int], want: list[int]) -> tuple | None:
    degs = sorted(set(got) | {d for d, v in enumerate(want) if v})
    for d in degs:
        w = want[d] if 0 <= d < len(want) else 0
        if got.get(d, 0) != w:
            return (p, d)
    return None


def qci_check(R: GradedQuotientRing, f: Sequence) -> QciCertificate | QciRefutation:
    """Certify or refute that (f) is a quasi-complete intersection ideal of R."""
    K = build_koszul(R, f)
    F = R.field
    n = K.n
    rep = homology_report(K)
    I = R.ideal(K.f)
    S_hilb = I.quotient_hilbert()
    top = R.top_degree + 1 + sum(K.fdeg)
    cycles = rep.h1_cycles
    m = len(cycles)
    A = _coefficient_matrix(K, cycles)
    for row in A:
        for a in row:
            if not a.in_maximal():
                raise QciError("cycle coefficient outside the maximal ideal")

    # H_1 free over S on the chosen cycles: surjection and Hilbert equality
    span1 = Subspace(F, K.dim(1), vstack([K.submodule_rows(1, z) for z in cycles], K.dim(1), F))
    if not (span1 + K.boundaries(1)).contains_space(K.cycles(1)):
        return QciRefutation("H1-generation", None, "chosen cycles do not generate H_1")
    want = [0] * top
    for dz in rep.h1_degrees:
        for d, v in enumerate(_shift_hilbert(S_hilb, dz, top)):
            want[d] += v
    got = rep.per_degree("h", 1)
    bad = _first_mismatch(1, got, want)
    if bad is not None:
        return QciRefutation("H1-free", bad, "Hilbert function of H_1 differs from that of a free S-module")
    # explicit kernel check of R^m -> H_1
    if m:
        rows = vstack([K.submodule_rows(1, z) for z in cycles], K.dim(1), F)
        red = K.boundaries(1).reduce(rows)
        ker = nullspace(red.T.copy(), F)
        if ker.shape[0] != m * I.dim:
            return QciRefutation("H1-free", (1, None), "kernel of R^m -> H_1 is larger than I R^m")

    # lambda_p for p >= 2
    lam: dict[int, dict] = {}
    for p in range(2, n + 1):
        Js = list(itertools.combinations(range(m), p))
        images = []
        wdegs = []
        for J in Js:
            coeffs = {S: _det([[A[i][j] for j in J] for i in S], R) for S in K.subsets[p]}
            w = K.vector(p, coeffs)
            images.append(w)
            wdegs.append(sum(rep.h1_degrees[j] for j in J))
        Zp, Bp = K.cycles(p), K.boundaries(p)
        if images:
            span = Subspace(F, K.dim(p), vstack([K.submodule_rows(p, w) for w in images], K.dim(p), F))
        else:
            span = Subspace(F, K.dim(p))
        cyc = Zp.contains_space(span)
        surj = (span + Bp).contains_space(Zp)
        want = [0] * top
        for dw in wdegs:
            for d, v in enumerate(_shift_hilbert(S_hilb, dw, top)):
                want[d] += v
        bad = _first_mismatch(p, rep.per_degree("h", p), want)
        lam[p] = {"cycles": bool(cyc), "surjective": bool(surj), "hilbert_match": bad is None}
        if not cyc:
            return QciRefutation("lambda-cycles", (p, None), f"wedge products are not cycles in E_{p}")
        if not surj:
            return QciRefutation("lambda-surjective", (p, None), f"lambda_{p} is not onto H_{p}")
        if bad is not None:
            return QciRefutation("lambda-injective", bad, f"lambda_{p} is not injective")

    g = grade_from_homology(rep)
    evidence: dict = {
        "d_squared_zero": True,
        "a_ij_in_m": True,
        "grade_identity": len(K.f) - m == g,
    }
    delta = None
    if m == n:
        delta = _det(A, R)
        ann_I = colon_ideal(R.zero_ideal(), I)
        ann_delta = R.annihilator(delta)
        delta_ideal = R.ideal([delta])
        evidence["delta_in_m^n"] = R.power_of_maximal(n).contains(delta)
        if g == 0:
            evidence["ann_I_equals_delta_R"] = ann_I == delta_ideal
            evidence["ann_delta_equals_I"] = ann_delta == I
            evidence["dim_H1_equals_nu_times_dim_S"] = rep.total("h", 1) == n * sum(S_hilb)
            # multiplication by delta on R has kernel I and image (0:I)
            evidence["delta_multiplication_exact"] = ann_delta == I and delta_ideal == ann_I
    return QciCertificate(R, K.f, rep, A, rep.h1_degrees, delta, g, evidence, lam)


def is_certified(result) -> bool:
    return isinstance(result, QciCertificate) and all(result.evidence.values())


# ---------------------------------------------------------------------------


def _linear_map(R: GradedQuotientRing, M: list[list[RingElement]]) -> np.ndarray:
    """k-matrix (row-vector convention) of the R-linear map R^a -> R^b given by a b x a matrix."""
    F, N = R.field, R.dim
    b, a = len(M), len(M[0])
    L = F.zeros((a * N, b * N))
    for i in range(b):
        for j in range(a):
            L[j * N : (j + 1) * N, i * N : (i + 1) * N] = M[i][j].mult_matrix()
    return L


def two_generated_exactness(R: GradedQuotientRing, f1, f2, a, b, c, d) -> dict:
    """Exactness of R^4 -> R^3 -> R^2 -> R -> R -> R^2 at its four interior spots."""
    f1, f2, a, b, c, d = (R.element(x) for x in (f1, f2, a, b, c, d))
    if R.ideal([f1, f2]).nu() != 2:
        raise NonMinimalError("f1, f2 must minimally generate a 2-generated ideal")
    for x in (a, b, c, d):
        if not x.in_maximal():
            raise DegreeError("a, b, c, d must lie in the maximal ideal")
    z = R.zero
    d3 = [[-c, -d, a, b], [f1, z, f2, z], [z, f1, z, f2]]
    d2 = [[-f2, a, b], [f1, c, d]]
    d1 = [[f1, f2]]
    d0 = [[a * d - b * c]]
    d1t = [[f1], [f2]]
    F = R.field
    maps = [_linear_map(R, M) for M in (d3, d2, d1, d0, d1t)]
    spots = {}
    names = ["R^3", "R^2", "R^1 (source of d0)", "R^1 (target of d0)"]
    for k in range(4):
        into, out = maps[k], maps[k + 1]
        composite_zero = not np.any(matmul(into, out, F) != 0)
        ker = out.shape[0] - rank(out, F)
        spots[names[k]] = bool(composite_zero and ker == rank(into, F))
    return spots


def two_generated_criterion(R: GradedQuotientRing, f1, f2, a, b, c, d) -> bool:
    return all(two_generated_exactness(R, f1, f2, a, b, c, d).values())


# ---------------------------------------------------------------------------
# exact zero-divisor search


@dataclass
class EzdSearchResult:
    mode: str
    pairs: list = dc_field(default_factory=list)  # (x, y) ring elements
    candidates: dict = dc_field(default_factory=dict)  # degree -> count tested
    survivors: dict = dc_field(default_factory=dict)  # degree -> count passing the rank prefilter

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "found": len(self.pairs),
            "pairs": [[str(x), str(y)] for x, y in self.pairs],
            "candidates": {str(k): v for k, v in self.candidates.items()},
            "survivors": {str(k): v for k, v in self.survivors.items()},
        }


@dataclass
class SymbolicObstruction:
    degree_splits: list  # (e, D - e) pairs examined
    parameter_names: list
    expressions: dict  # split -> list of expression polynomials
    containment_exponent: dict  # split -> least t certified, or None
    certified: bool
    mode: str = "symbolic"

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "certified_no_exact_zero_divisor": self.certified,
            "splits": [
                {
                    "factor_degrees": list(s),
                    "expressions": [str(e) for e in self.expressions[s]],
                    "containment_exponent": self.containment_exponent[s],
                }
                for s in self.degree_splits
            ],
        }


def _projective_vectors(field, k: int, start: int = 0):
    """Yield coefficient tuples with first nonzero entry 1, in lexicographic order."""
    elems = list(field.elements())
    for lead in range(k):
        for tail in itertools.product(elems, repeat=k - lead - 1):
            yield (0,) * lead + (1,) + tuple(tail)


def _homogeneous_part(space: Subspace, R: GradedQuotientRing, e: int) -> np.ndarray:
    rows = [r for r, c in zip(space.basis, space.pivots) if R.degrees[c] == e]
    return np.array(rows) if rows else R.field.zeros((0, R.dim))


def _prefilter(R: GradedQuotientRing, basis_rows: np.ndarray, coeffs: np.ndarray, e: int) -> np.ndarray:
    """Boolean mask of candidates whose annihilator Hilbert function can match an exact pair."""
    p = R.field.p
    top = R.top_degree
    H = R.hilbert
    # ranks of multiplication R_d -> R_{d+e} for each candidate
    mats = [R.mult_matrix_of_vector(v) for v in basis_rows]
    ranks = {}
    for d in range(top + 1):
        src = R.degree_indices(d)
        dst = R.degree_indices(d + e)
        if len(src) == 0 or len(dst) == 0:
            ranks[d] = np.zeros(len(coeffs), dtype=np.int64)
            continue
        blocks = np.stack([M[np.ix_(src, dst)] for M in mats])  # (k, a, b)
        stack = np.tensordot(coeffs, blocks, axes=(1, 0)) % p
        ranks[d] = batch_rank_modp(stack, p)
    ok = np.zeros(len(coeffs), dtype=bool)
    ann = np.stack([H[d] - ranks[d] for d in range(top + 1)], axis=1)  # H_{ann(x)}(d)
    xr = np.zeros((len(coeffs), top + 1), dtype=np.int64)
    for d in range(top + 1):
        if d - e >= 0:
            xr[:, d] = ranks[d - e]
    quot = np.array(H, dtype=np.int64)[None, :] - xr  # H_{R/(x)}
    for s in range(0, top + 1):
        shifted = np.zeros_like(quot)
        shifted[:, s:] = quot[:, : top + 1 - s]
        ok |= np.all(ann == shifted, axis=1)
    return ok


def ezd_search(
    R: GradedQuotientRing,
    ideal: RingIdeal | None = None,
    deg_bound: int = 1,
    mode: str = "enumerate",
    chunk: int = 20000,
    limit: int | None = None,
) -> EzdSearchResult | SymbolicObstruction:
    """Search homogeneous exact zero-divisors of R (inside ``ideal`` when given)."""
    if mode == "symbolic":
        if ideal is None:
            raise UnsupportedError("symbolic mode needs an ideal to search inside")
        return symbolic_obstruction(R, ideal)
    if mode != "enumerate":
        raise UnsupportedError(f"unknown search mode {mode!r}")
    F = R.field
    if not F.is_finite or F.dtype is object:
        raise UnsupportedError("enumerative search needs a prime field; use symbolic mode over QQ")
    space = ideal.space if ideal is not None else R.maximal_ideal().space
    res = EzdSearchResult("enumerate")
    for e in range(1, deg_bound + 1):
        rows = _homogeneous_part(space, R, e)
        k = rows.shape[0]
        res.candidates[e] = 0
        res.survivors[e] = 0
        if k == 0:
            continue
        gen = _projective_vectors(F, k)
        while True:
            batch = list(itertools.islice(gen, chunk))
            if not batch:
                break
            coeffs = np.array(batch, dtype=np.int64)
            res.candidates[e] += len(batch)
            mask = _prefilter(R, rows, coeffs, e)
            res.survivors[e] += int(mask.sum())
            for c in coeffs[mask]:
                x = R.from_vector(matmul(c.reshape(1, -1), rows, F)[0])
                y = is_exact_zero_divisor(x)
                if y is not None:
                    res.pairs.append((x, y))
                    if limit is not None and len(res.pairs) >= limit:
                        return res
    return res


def _param_names(count: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwyz"
    if count <= len(letters):
        return list(letters[:count])
    return [f"p{i + 1}" for i in range(count)]


def symbolic_obstruction(R: GradedQuotientRing, ideal: RingIdeal, max_power: int = 4) -> SymbolicObstruction:
    """Whether any product F*G with F lifting an element of ``ideal`` is a minimal generator of 𝔞.

    The defining ideal 𝔞 must be generated in a single degree D.  For each
    split D = e + (D - e), F runs over the span of lifts of the degree-e part
    of the ideal and G over all forms of degree D - e.  The coefficients of
    the normal form of F*G are bilinear expressions in the parameters; the
    obstruction is certified when a power of (F-params)(G-params) lies in
    the ideal they generate, so no nonzero product lies in 𝔞.
    """
    gens = [g for g in R.defining_gens if not g.is_zero()]
    degs = {g.degree() for g in gens}
    if len(degs) != 1:
        raise UnsupportedError("symbolic mode needs a defining ideal generated in one degree")
    (D,) = degs
    P = R.poly_ring
    field = R.field
    splits = []
    exprs: dict = {}
    exps: dict = {}
    names_out: list = []
    for e in range(1, D):
        lifts = _degree_lifts(R, ideal, e)
        if not lifts:
            continue
        gmons = monomials_of_degree(P.nvars, D - e)
        names = _param_names(len(lifts) + len(gmons))
        Q = PolyRing(len(names), field, names=tuple(names))
        fvars = Q.gens()[: len(lifts)]
        gvars = Q.gens()[len(lifts) :]
        std = R.gb.standard_monomials(D)
        acc = {s: Q.zero for s in std}
        for u, L in enumerate(lifts):
            for v, mono in enumerate(gmons):
                nf = R.gb.normal_form(L.mul_term(mono, field.one))
                for s, c in nf.terms.items():
                    acc[s] = acc[s] + (fvars[u] * gvars[v]).scale(c)
        expressions = [acc[s] for s in std if not acc[s].is_zero()]
        split = (e, D - e)
        splits.append(split)
        exprs[split] = expressions
        names_out = names
        products = [a * b for a in fvars for b in gvars]
        t_found = None
        if expressions:
            gb = buchberger(expressions)
            power = products
            for t in range(1, max_power + 1):
                if all(gb.contains(q) for q in power):
                    t_found = t
                    break
                power = _dedupe([a * b for a in power for b in products])
        exps[split] = t_found
    certified = bool(splits) and all(exps[s] is not None for s in splits)
    return SymbolicObstruction(splits, names_out, exprs, exps, certified)


def _dedupe(polys: list[Polynomial]) -> list[Polynomial]:
    seen = set()
    out = []
    for p in polys:
        key = frozenset(p.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def _degree_lifts(R: GradedQuotientRing, ideal: RingIdeal, e: int) -> list[Polynomial]:
    """Polynomial lifts spanning the degree-e part of the ideal (given generators first)."""
    F = R.field
    target = _homogeneous_part(ideal.space, R, e)
    if target.shape[0] == 0:
        return []
    chosen: list = []
    current = Subspace(F, R.dim)
    candidates = []
    if ideal._gens:
        candidates += [g.vec for g in ideal._gens if g.is_homogeneous() and g.degree() == e]
    candidates += list(target)
    for v in candidates:
        if not current.contains(v):
            chosen.append(v)
            current = current.extend(v)
        if current.dim == target.shape[0]:
            break
    return [R.from_vector(v).to_poly() for v in chosen]
