"""Random quadric sequences, reducible pencils and linear exact zero-divisors.

Sampling uses numpy's PCG64 generator; trial ``i`` of a run with seed ``s``
draws from ``SeedSequence([s, i, attempt])`` so trials are independent of
the order in which they run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .errors import DegreeError, FieldError, InternalInconsistency, QciError
from .fields import Field, GF, min_root_degree, parse_field, PrimeField, require_odd_characteristic, roots_in_field
from .groebner import buchberger, eliminant, is_irrelevant_primary, minimal_generator_test, GeneratorStatus
from .koszul import ezd_search
from .linalg import batch_rank_modp, nullspace, rank, rref
from .polynomials import PolyRing, Polynomial, hessian, monomials_of_degree, polys_to_matrix
from .quotient import GradedQuotientRing, is_exact_zero_divisor

REPORT_SCHEMA = "qcitools.experiment/1"


@dataclass
class QuadricSequence:
    forms: list[Polynomial]
    field: Field
    seed: int | None = None
    trial: int | None = None
    attempt: int | None = None

    @property
    def n(self) -> int:
        return len(self.forms)

    def hessians(self) -> list[np.ndarray]:
        return [hessian(f) for f in self.forms]

    def as_strings(self) -> list[str]:
        return [str(f) for f in self.forms]


def sample_quadrics(n: int, field: Field | int, seed: int, trial: int = 0, attempt: int = 0) -> QuadricSequence:
    """n quadratic forms in n variables with i.i.d. uniform coefficients."""
    if isinstance(field, int):
        field = GF(field)
    if not isinstance(field, PrimeField):
        raise FieldError("sampling needs a prime field")
    require_odd_characteristic(field, "quadric sampling")
    ring = PolyRing(n, field)
    mons = monomials_of_degree(n, 2)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial, attempt])))
    coeffs = rng.integers(0, field.p, size=(n, len(mons)))
    forms = [ring.from_dict({m: int(c) for m, c in zip(mons, row)}) for row in coeffs]
    return QuadricSequence(forms, field, seed, trial, attempt)


def is_regular_sequence(forms: Sequence[Polynomial]) -> bool:
    """n forms in n variables are regular iff (x)^N lies in their span at N = Σ d_i - n + 1."""
    forms = list(forms)
    ring = forms[0].ring
    n = ring.nvars
    if len(forms) != n:
        raise DegreeError("need as many forms as variables")
    if any(f.is_zero() or not f.is_homogeneous() for f in forms):
        return False
    N = sum(f.degree() for f in forms) - n + 1
    target = monomials_of_degree(n, N)
    rows = []
    for f in forms:
        for m in monomials_of_degree(n, N - f.degree()):
            rows.append(f.mul_term(m, ring.field.one))
    if not rows:
        return False
    T = polys_to_matrix(rows, target, ring.field)
    return rank(T, ring.field) == len(target)


def quadric_irreducible(f: Polynomial) -> bool:
    """Absolute irreducibility of a quadratic form: Hessian rank at least 3."""
    require_odd_characteristic(f.ring.field, "the Hessian criterion")
    return rank(hessian(f), f.ring.field) >= 3


# ---------------------------------------------------------------------------
# pencils


def pencil_matrix(seq: QuadricSequence, names: tuple | None = None) -> tuple[PolyRing, list[list[Polynomial]]]:
    """H(w) = Σ w_h hessian(f_h) as a matrix of linear forms in w_1..w_n."""
    n = seq.n
    W = PolyRing(n, seq.field, names=names or tuple(f"w{i + 1}" for i in range(n)))
    Hs = seq.hessians()
    nv = seq.forms[0].ring.nvars
    M = [[W.linear_form([H[i, j] for H in Hs]) for j in range(nv)] for i in range(nv)]
    return W, M


def _det3(M: list[list[Polynomial]]) -> Polynomial:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def minors3(M: list[list[Polynomial]]) -> list[Polynomial]:
    """Distinct nonzero 3x3 minors of a symmetric matrix."""
    k = len(M)
    out, seen = [], set()
    triples = list(itertools.combinations(range(k), 3))
    for a, r in enumerate(triples):
        for c in triples[a:]:
            d = _det3([[M[i][j] for j in c] for i in r])
            if not d.is_zero():
                key = frozenset(d.monic().terms.items())
                if key not in seen:
                    seen.add(key)
                    out.append(d)
    return out


@dataclass
class PencilResult:
    mode: str
    exists: bool | None  # None: enumeration exhausted its budget without a decision
    b: list | None = None  # coefficients (field elements)
    field: Field | None = None
    checked: int = 0
    exhausted: bool = True

    def to_dict(self) -> dict:
        F = self.field
        return {
            "mode": self.mode,
            "exists": self.exists,
            "b": None if self.b is None else [F.to_json(c) for c in self.b],
            "field": None if F is None else F.name,
            "checked": self.checked,
            "exhausted": self.exhausted,
        }


def _projective_points(p: int, k: int):
    """Projective points of P^{k-1}(F_p) as int rows, first nonzero coordinate 1, in chunks."""
    for lead in range(k):
        free = k - lead - 1
        total = p**free
        step = 200000
        for start in range(0, total, step):
            idx = np.arange(start, min(total, start + step), dtype=np.int64)
            pts = np.zeros((len(idx), k), dtype=np.int64)
            pts[:, lead] = 1
            for c in range(k - 1, lead, -1):
                pts[:, c] = idx % p
                idx //= p
            yield pts


def pencil_enumerate(seq: QuadricSequence, budget: int = 2_000_000) -> PencilResult:
    """First projective b over F_p with rank Σ b_h hessian(f_h) <= 2."""
    F = seq.field
    p = F.p
    Hs = np.stack(seq.hessians()).astype(np.int64)
    n = seq.n
    checked = 0
    for pts in _projective_points(p, n):
        if checked + len(pts) > budget:
            pts = pts[: budget - checked]
        mats = np.tensordot(pts, Hs, axes=(1, 0)) % p
        ranks = batch_rank_modp(mats, p)
        hit = np.nonzero(ranks <= 2)[0]
        checked += len(pts)
        if hit.size:
            b = [int(c) for c in pts[hit[0]]]
            return PencilResult("enumerate", True, b, F, checked)
        if checked >= budget:
            return PencilResult("enumerate", None, None, F, checked, exhausted=False)
    return PencilResult("enumerate", False, None, F, checked)


def pencil_exact(seq: QuadricSequence, find_witness: bool = True, seed: int = 0) -> PencilResult:
    """Decide whether some nonzero b (over the algebraic closure) gives rank <= 2.

    This holds iff the 3x3 minors of H(w) are not primary to (w).  When they
    are not and a witness is requested, a point is computed over a finite
    extension of F_p (or F_p itself when possible).
    """
    require_odd_characteristic(seq.field, "Hessian pencils")
    W, M = pencil_matrix(seq)
    mins = minors3(M)
    if mins:
        primary, _ = is_irrelevant_primary(mins)
    else:
        primary = False
    if primary:
        return PencilResult("exact", False, None, seq.field)
    if not find_witness or not seq.field.is_finite:
        return PencilResult("exact", True, None, None)
    if not mins:
        b = [seq.field.one] + [seq.field.zero] * (seq.n - 1)
        return PencilResult("exact", True, b, seq.field)
    found = find_pencil_witness(seq, mins, seed)
    if found is None:
        return PencilResult("exact", True, None, None)
    b, L = found
    return PencilResult("exact", True, b, L)


def pencil_hessian(seq: QuadricSequence, b: Sequence, field: Field) -> np.ndarray:
    Hs = seq.hessians()
    n = len(Hs[0])
    out = field.zeros((n, n))
    for c, H in zip(b, Hs):
        for i in range(n):
            for j in range(n):
                out[i, j] = field.add(out[i, j], field.mul(field(c), field(int(H[i, j]))))
    return out


def _point_on(gens: list[Polynomial], L: Field, rng: np.random.Generator) -> list | None:
    """A point of the zero-dimensional affine variety of ``gens`` with coordinates in L."""
    ring = gens[0].ring.with_field(L)
    polys = [g.change_ring(ring) for g in gens]
    point: list = [None] * ring.nvars
    for var in reversed(range(ring.nvars)):
        gb = buchberger(polys)
        if gb.is_unit_ideal() or not gb.is_zero_dimensional():
            return None
        h = eliminant(gb, var)
        roots = roots_in_field(h, L, seed=int(rng.integers(0, 2**31)))
        if not roots:
            return None
        r = roots[0]
        point[var] = r
        polys = list(gb.generators) + [ring.gen(var) - ring.const(r)]
    return point


def find_pencil_witness(seq: QuadricSequence, mins: list[Polynomial], seed: int = 0, attempts: int = 8):
    """(b, L): coefficients over a finite field L with rank H(b) <= 2 and Σ b_h f_h split over L."""
    F = seq.field
    n = seq.n
    p = F.p
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 7919])))
    for _ in range(attempts):
        T = rng.integers(0, p, size=(n, n))
        if rank(F.array(T), F) < n:
            continue
        # w = T w', chart w'_1 = 1, affine variables w'_2..w'_n
        A = PolyRing(n - 1, F, names=tuple(f"u{i + 2}" for i in range(n - 1)))
        chart = [A.one] + A.gens()
        images = [sum((chart[j].scale(int(T[i, j])) for j in range(n)), A.zero) for i in range(n)]
        affine = [m.compose(images) for m in mins]
        affine = [g for g in affine if not g.is_zero()]
        gb = buchberger(affine)
        # cut a positive-dimensional locus down with random affine hyperplanes
        for _ in range(n):
            if gb.is_unit_ideal() or gb.is_zero_dimensional():
                break
            cut = A.linear_form([int(c) for c in rng.integers(0, p, size=n - 1)]) + A.const(int(rng.integers(0, p)))
            gb = buchberger(list(gb.generators) + [cut])
        if gb.is_unit_ideal() or not gb.is_zero_dimensional():
            continue
        h = eliminant(gb, n - 2)
        k = min_root_degree(h, F)
        if k is None:
            continue
        for m in (k, 2 * k):
            L = GF(p, m)
            pt = _point_on(list(gb.generators), L, rng)
            if pt is None:
                continue
            wprime = [L.one] + pt
            b = [sum((L.mul(L(int(T[i, j])), wprime[j]) for j in range(n)), L.zero) for i in range(n)]
            if rank(pencil_hessian(seq, b, L), L) > 2:
                raise InternalInconsistency("computed pencil point does not drop Hessian rank")
            q = pencil_form(seq, b, L)
            fac = factor_rank2_quadric(q, extend=False)
            if isinstance(fac, Factorization):
                return b, L
    return None


def pencil_reducible_search(seq: QuadricSequence, mode: str = "exact", **kw) -> PencilResult:
    if mode == "exact":
        return pencil_exact(seq, **kw)
    if mode == "enumerate":
        return pencil_enumerate(seq, **kw)
    raise QciError(f"unknown pencil mode {mode!r}")


def pencil_form(seq: QuadricSequence, b: Sequence, field: Field) -> Polynomial:
    ring = seq.forms[0].ring.with_field(field)
    out = ring.zero
    for c, f in zip(b, seq.forms):
        out = out + f.change_ring(ring).scale(field(c))
    return out


# ---------------------------------------------------------------------------
# rank <= 2 quadrics


@dataclass
class Factorization:
    l1: Polynomial
    l2: Polynomial
    field: Field
    extended: bool = False


@dataclass
class ExtensionNeeded:
    discriminant: object
    field: Field


def factor_rank2_quadric(f: Polynomial, extend: bool = True) -> Factorization | ExtensionNeeded:
    """Linear forms with f = l1*l2 for a quadratic form whose Hessian has rank <= 2."""
    ring = f.ring
    F = ring.field
    require_odd_characteristic(F, "quadric factorization")
    if f.is_zero():
        raise DegreeError("the zero form has no factorization")
    H = hessian(f)
    r = rank(H, F)
    if r >= 3:
        raise DegreeError("Hessian rank is at least 3: the form is irreducible")
    n = ring.nvars
    if r == 1:
        i = next(i for i in range(n) if not F.is_zero(H[i, i]))
        row = ring.linear_form(list(H[i]))
        l1 = row.scale(F.inv(F.mul(F(2), H[i, i])))
        return _checked(f, l1, row, F)
    # rank 2: f is a binary form in two linear forms u, v spanning the row space of H
    rows, _ = rref(H, F)
    u = ring.linear_form(list(rows[0]))
    v = ring.linear_form(list(rows[1]))
    cands = [u * u, u * v, v * v]
    mons = sorted({m for c in cands + [f] for m in c.terms})
    A = polys_to_matrix(cands, mons, F)
    target = polys_to_matrix([f], mons, F)[0]
    alpha, beta, gamma = _solve_left(A, target, F)
    if F.is_zero(alpha):
        return _checked(f, v, u.scale(beta) + v.scale(gamma), F)
    disc = F.sub(F.mul(beta, beta), F.mul(F(4), F.mul(alpha, gamma)))
    s = F.sqrt(disc)
    if s is None:
        if extend and isinstance(F, PrimeField):
            L = GF(F.p, 2)
            fac = factor_rank2_quadric(f.change_ring(ring.with_field(L)), extend=False)
            if isinstance(fac, Factorization):
                fac.extended = True
            return fac
        return ExtensionNeeded(disc, F)
    two_a = F.mul(F(2), alpha)
    t1 = F.div(F.add(F.neg(beta), s), two_a)
    t2 = F.div(F.sub(F.neg(beta), s), two_a)
    l1 = (u - v.scale(t1)).scale(alpha)
    l2 = u - v.scale(t2)
    return _checked(f, l1, l2, F)


def _solve_left(A: np.ndarray, b: np.ndarray, F: Field) -> list:
    """x with x @ A = b (A has independent rows)."""

    aug = np.vstack([A, b.reshape(1, -1)])
    ker = nullspace(aug.T.copy(), F)
    for row in ker:
        if not F.is_zero(row[-1]):
            scale = F.neg(F.inv(row[-1]))
            return [F.mul(row[i], scale) for i in range(A.shape[0])]
    raise InternalInconsistency("form is not in the span of u^2, uv, v^2")


def _checked(f: Polynomial, l1: Polynomial, l2: Polynomial, F: Field) -> Factorization:
    if l1 * l2 != f:
        raise InternalInconsistency("factorization does not multiply back")
    return Factorization(l1, l2, F)


# ---------------------------------------------------------------------------
# exact pairs


@dataclass
class ExactPair:
    x: Polynomial
    y: Polynomial
    field: Field
    b: list
    verified: bool

    def to_dict(self) -> dict:
        return {
            "x": str(self.x),
            "y": str(self.y),
            "field": self.field.name,
            "b": [self.field.to_json(self.field(c)) for c in self.b],
            "verified": self.verified,
        }


def build_exact_pair(seq: QuadricSequence, b: Sequence, field: Field | None = None, ring: GradedQuotientRing | None = None) -> ExactPair:
    """Factor Σ b_h f_h = l1*l2 and verify (l1, l2) is an exact pair in P/(f)."""
    L = field or seq.field
    q = pencil_form(seq, b, L)
    if q.is_zero():
        raise DegreeError("pencil coefficients give the zero form")
    fac = factor_rank2_quadric(q)
    if isinstance(fac, ExtensionNeeded):
        raise QciError("pencil element does not split over the available fields")
    R = ring if ring is not None else GradedQuotientRing(seq.forms)
    if R.field != fac.field:
        R = R.base_change(fac.field)
    P = R.poly_ring
    x = R.element(fac.l1.change_ring(P))
    y = R.element(fac.l2.change_ring(P))
    comp = is_exact_zero_divisor(x)
    if comp is None or R.ideal([comp]) != R.ideal([y]):
        raise InternalInconsistency(f"{fac.l1} and {fac.l2} do not form an exact pair")
    return ExactPair(fac.l1, fac.l2, fac.field, list(b), True)


def product_is_minimal_generator(seq: QuadricSequence, pair: ExactPair) -> bool:
    ring = pair.x.ring
    gens = [f.change_ring(ring) for f in seq.forms]
    return minimal_generator_test(pair.x * pair.y, gens) == GeneratorStatus.MINIMAL_GENERATOR


# ---------------------------------------------------------------------------
# experiment


@dataclass
class ExperimentReport:
    n: int
    p: int
    trials: int
    seed: int
    pencil_mode: str
    enumerate_degree1: bool
    records: list = dc_field(default_factory=list)

    def summary(self) -> dict:
        recs = self.records
        return {
            "trials": len(recs),
            "discarded_nonregular": sum(r["discarded"] for r in recs),
            "pencil_reducible": sum(1 for r in recs if r["pencil"]["exists"]),
            "verified_linear_exact_pairs": sum(1 for r in recs if r.get("exact_pair") and r["exact_pair"]["verified"]),
            "exact_zero_divisors_found": sum(r["ezd_found"] for r in recs),
            "anomalies": [r["trial"] for r in recs if r.get("anomaly")],
            "verdict": self.verdict(),
        }

    def verdict(self) -> str:
        recs = self.records
        found = sum(r["ezd_found"] for r in recs)
        if self.n >= 5:
            # finite-field sampling only approximates a Zariski-open condition
            return "consistent with genericity" if found == 0 else "anomaly: investigate flagged seeds"
        ok = all(r.get("exact_pair") and r["exact_pair"]["verified"] for r in recs)
        return "linear exact pair in every trial" if ok else "some trials lack a linear exact pair"

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "n": self.n,
            "prime": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "prng": "numpy PCG64, SeedSequence([seed, trial, attempt])",
            "pencil_mode": self.pencil_mode,
            "degree1_enumeration": self.enumerate_degree1,
            "records": self.records,
            "summary": self.summary(),
        }


def run_trial(n: int, p: int, seed: int, trial: int, pencil_mode: str = "exact", enumerate_degree1: bool = False, max_attempts: int = 100) -> dict:
    F = GF(p)
    require_odd_characteristic(F, "quadric experiments")
    discarded = 0
    for attempt in range(max_attempts):
        seq = sample_quadrics(n, F, seed, trial, attempt)
        if is_regular_sequence(seq.forms):
            break
        discarded += 1
    else:
        raise QciError(f"no regular sequence after {max_attempts} attempts")
    record: dict = {
        "trial": trial,
        "attempt": attempt,
        "discarded": discarded,
        "forms": seq.as_strings(),
        "regular": True,
    }
    res = pencil_reducible_search(seq, pencil_mode)
    record["pencil"] = res.to_dict()
    R = GradedQuotientRing(seq.forms)
    ezd_found = 0
    if res.exists and res.b is not None:
        pair = build_exact_pair(seq, res.b, res.field, ring=R)
        record["exact_pair"] = pair.to_dict()
        ezd_found += 1
    else:
        record["exact_pair"] = None
    if enumerate_degree1:
        search = ezd_search(R, None, deg_bound=1, limit=1)
        record["degree1_enumeration"] = {"candidates": search.candidates.get(1, 0), "found": len(search.pairs)}
        if search.pairs and not record["exact_pair"]:
            x, y = search.pairs[0]
            record["exact_pair"] = {"x": str(x), "y": str(y), "field": F.name, "b": None, "verified": True}
            ezd_found += 1
    record["ezd_found"] = min(ezd_found, 1)
    # for n >= 5 a found exact zero-divisor contradicts genericity; flag instead of failing
    record["anomaly"] = bool(n >= 5 and record["ezd_found"])
    return record


def run_experiment(n: int, p: int, trials: int, seed: int, pencil_mode: str = "exact", enumerate_degree1: bool | None = None) -> ExperimentReport:
    if trials < 1:
        raise QciError("need at least one trial")
    if enumerate_degree1 is None:
        enumerate_degree1 = n >= 5 and p ** (n - 1) <= 40_000
    rep = ExperimentReport(n, p, trials, seed, pencil_mode, enumerate_degree1)
    for t in range(trials):
        rep.records.append(run_trial(n, p, seed, t, pencil_mode, enumerate_degree1))
    return rep


def reverify_record(n: int, p: int, seed: int, record: dict) -> bool:
    """Re-derive a record's sequence from its seed and re-check its positive claims."""

    F = GF(p)
    seq = sample_quadrics(n, F, seed, record["trial"], record["attempt"])
    if seq.as_strings() != record["forms"] or not is_regular_sequence(seq.forms):
        return False
    pen = record["pencil"]
    if pen["exists"] and pen["b"] is not None:
        L = parse_field(pen["field"])
        b = [L(c) for c in pen["b"]]
        if rank(pencil_hessian(seq, b, L), L) > 2:
            return False
    pair = record.get("exact_pair")
    if not pair:
        return True
    if pair["b"] is not None:
        L = parse_field(pair["field"])
        b = [L(c) for c in pair["b"]]
        try:
            rebuilt = build_exact_pair(seq, b, L)
        except QciError:
            return False
        return str(rebuilt.x) == pair["x"] and str(rebuilt.y) == pair["y"]
    R = GradedQuotientRing(seq.forms)
    x = R.element(R.poly_ring.parse(pair["x"]))
    y = R.element(R.poly_ring.parse(pair["y"]))
    comp = is_exact_zero_divisor(x)
    return comp is not None and R.ideal([comp]) == R.ideal([y])


def load_report(data: dict) -> ExperimentReport:
    """Rebuild a report from its dictionary form, re-verifying every record."""
    if data.get("schema") != REPORT_SCHEMA:
        raise QciError(f"unknown report schema {data.get('schema')!r}")
    rep = ExperimentReport(data["n"], data["prime"], data["trials"], data["seed"], data["pencil_mode"], data["degree1_enumeration"])
    for rec in data["records"]:
        if not reverify_record(rep.n, rep.p, rep.seed, rec):
            raise InternalInconsistency(f"trial {rec['trial']} does not re-verify")
        rep.records.append(rec)
    return rep


# ---------------------------------------------------------------------------
# witness matrices


def witness_matrix(n: int, field: Field) -> tuple[PolyRing, list[list[Polynomial]]]:
    """W_n: entry (i, j) = w_{i+j-3} when 4 <= i+j <= n+3 (1-based), else 0."""
    if n < 2:
        raise DegreeError("witness matrices need n >= 2")
    W = PolyRing(n, field, names=tuple(f"w{i + 1}" for i in range(n)))
    M = [[W.zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if 4 <= i + j <= n + 3:
                M[i - 1][j - 1] = W.gen(i + j - 4)
    return W, M


def witness_matrix_check(n: int, field: Field | None = None) -> bool:
    field = field or GF(101)
    _, M = witness_matrix(n, field)
    mins = minors3(M)
    if not mins:
        return False
    return is_irrelevant_primary(mins)[0]


def witness_sequence(n: int, field: Field) -> QuadricSequence:
    """Quadrics f_h whose Hessians sum to W_n: f_h = Σ_{i<=j, i+j=h+3} x_i x_j (x_i^2/2 on the diagonal)."""
    ring = PolyRing(n, field)
    half = field.inv(field(2))
    forms = []
    for h in range(1, n + 1):
        f = ring.zero
        for i in range(1, n + 1):
            j = h + 3 - i
            if i <= j <= n:
                term = ring.gen(i - 1) * ring.gen(j - 1)
                f = f + (term.scale(half) if i == j else term)
        forms.append(f)
    return QuadricSequence(forms, field)
