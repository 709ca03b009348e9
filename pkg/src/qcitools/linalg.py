"""Exact dense linear algebra over a :class:`~qcitools.fields.Field`.

Prime fields run on int64 numpy arrays reduced mod p; every other field
uses object arrays of exact elements.  All routines are deterministic.
"""

from __future__ import annotations

import numpy as np

from .fields import Field


def _is_modular(field: Field) -> bool:
    return field.dtype is not object


def matmul(A: np.ndarray, B: np.ndarray, field: Field) -> np.ndarray:
    """A @ B without int64 overflow."""
    if not _is_modular(field):
        if A.shape[-1] == 0:
            return field.zeros(A.shape[:-1] + B.shape[1:])
        return np.dot(A, B)
    p = field.p
    inner = A.shape[-1]
    if inner == 0:
        return np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    if (p - 1) ** 2 * inner < 2**53:
        # exact in double precision, and BLAS is far faster than integer matmul
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return np.mod(prod, p).astype(np.int64)
    if (p - 1) ** 2 * inner < 2**62:
        return (A @ B) % p
    lo = B & 0xFFFF
    hi = B >> 16
    return (((A @ hi) % p) * 65536 + (A @ lo)) % p


def rref(A: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    modular = _is_modular(field)
    A = np.array(A, dtype=field.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if modular:
        A %= field.p
    n_rows, n_cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(A[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = A[r, c]
        if modular:
            inv = pow(int(lead), -1, field.p)
            A[r, c:] = A[r, c:] * inv % field.p
        else:
            inv = field.inv(lead)
            A[r, c:] = A[r, c:] * inv
        col = A[:, c].copy()
        col[r] = 0
        others = np.nonzero(col != 0)[0]
        if others.size:
            upd = np.outer(col[others], A[r, c:])
            if modular:
                A[others, c:] = (A[others, c:] - upd) % field.p
            else:
                A[others, c:] = A[others, c:] - upd
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(A: np.ndarray, field: Field) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, field)[1])


def nullspace(A: np.ndarray, field: Field) -> np.ndarray:
    """Rows spanning {v : A v = 0}."""
    n_cols = A.shape[1]
    if A.shape[0] == 0:
        return identity(n_cols, field)
    R, piv = rref(A, field)
    free = [c for c in range(n_cols) if c not in set(piv)]
    out = field.zeros((len(free), n_cols))
    for k, f in enumerate(free):
        out[k, f] = field.one
        for i, pc in enumerate(piv):
            out[k, pc] = field.neg(R[i, f])
    return out


def identity(n: int, field: Field) -> np.ndarray:
    out = field.zeros((n, n))
    for i in range(n):
        out[i, i] = field.one
    return out


def vstack(blocks: list[np.ndarray], n_cols: int, field: Field) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return field.zeros((0, n_cols))
    return np.vstack(blocks)


def is_zero_array(A: np.ndarray) -> bool:
    return not np.any(A != 0)


class Subspace:
    """A subspace of field^n stored as an RREF basis."""

    def __init__(self, field: Field, ambient_dim: int, rows=None):
        self.field = field
        self.ambient_dim = ambient_dim
        if rows is None or len(rows) == 0:
            self.basis = field.zeros((0, ambient_dim))
            self.pivots: list[int] = []
        else:
            rows = np.asarray(rows, dtype=field.dtype).reshape(-1, ambient_dim)
            self.basis, self.pivots = rref(rows, field)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, V: np.ndarray) -> np.ndarray:
        """Remainders of the rows of V modulo this subspace."""
        V = np.asarray(V, dtype=self.field.dtype)
        single = V.ndim == 1
        V = V.reshape(-1, self.ambient_dim)
        if self.dim == 0:
            out = V.copy()
        else:
            coeffs = V[:, self.pivots]
            out = V - matmul(coeffs, self.basis, self.field)
            out = self.field.reduce_array(out)
        return out[0] if single else out

    def contains(self, v) -> bool:
        return is_zero_array(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return other.dim == 0 or is_zero_array(self.reduce(other.basis))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __add__(self, other: "Subspace") -> "Subspace":
        rows = vstack([self.basis, other.basis], self.ambient_dim, self.field)
        return Subspace(self.field, self.ambient_dim, rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.ambient_dim)
        # a.U = b.W  <=>  (a, -b) in ker [U; W]^T
        stacked = vstack([self.basis, self.field.reduce_array(-other.basis)], self.ambient_dim, self.field)
        ker = nullspace(stacked.T.copy(), self.field)
        rows = matmul(ker[:, : self.dim], self.basis, self.field)
        return Subspace(self.field, self.ambient_dim, rows)

    def complement_pivots(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def quotient_coords(self, V: np.ndarray) -> np.ndarray:
        """Coordinates of rows of V in the quotient, on non-pivot columns."""
        red = self.reduce(V)
        cols = self.complement_pivots()
        return red[..., cols]

    def extend(self, rows) -> "Subspace":
        rows = np.asarray(rows, dtype=self.field.dtype).reshape(-1, self.ambient_dim)
        return Subspace(self.field, self.ambient_dim, vstack([self.basis, rows], self.ambient_dim, self.field))


def complement_generators(space: Subspace, sub: Subspace, order=None) -> list[np.ndarray]:
    """Rows of ``space`` (in RREF order unless ``order`` given) lifting a basis of space/sub.

    Rows are chosen greedily: a row is kept when it is independent of ``sub``
    and of the rows kept before it.
    """
    rows = space.basis if order is None else np.asarray(order, dtype=space.field.dtype)
    if rows.shape[0] == 0:
        return []
    red = sub.reduce(rows)
    _, piv = rref(red.T.copy(), space.field)
    return [np.array(rows[i], copy=True) for i in piv]


# ---------------------------------------------------------------------------
# batched ranks over F_p: one elimination sweep over a stack of matrices


def _inverse_table(p: int) -> np.ndarray | None:
    if p > 1 << 20:
        return None
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


_INV_CACHE: dict[int, np.ndarray | None] = {}


def _batch_inverse(vals: np.ndarray, p: int) -> np.ndarray:
    if p not in _INV_CACHE:
        _INV_CACHE[p] = _inverse_table(p)
    table = _INV_CACHE[p]
    if table is not None:
        return table[vals]
    result = np.ones_like(vals)
    base = vals.copy()
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def batch_rank_modp(A: np.ndarray, p: int) -> np.ndarray:
    """Ranks of each matrix in an (N, r, c) int64 stack over F_p."""
    A = np.mod(np.array(A, dtype=np.int64, copy=True), p)
    N, n_rows, n_cols = A.shape
    ranks = np.zeros(N, dtype=np.int64)
    if N == 0 or n_rows == 0 or n_cols == 0:
        return ranks
    used = np.zeros((N, n_rows), dtype=bool)
    idx = np.arange(N)
    for c in range(n_cols):
        cand = (A[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        prow_idx = np.argmax(cand, axis=1)
        b = idx[has]
        pr = prow_idx[has]
        lead = A[b, pr, c]
        inv = _batch_inverse(lead, p)
        prow = A[b, pr, :] * inv[:, None] % p
        A[b, pr, :] = prow
        factors = A[b, :, c].copy()
        factors[np.arange(b.size), pr] = 0
        A[b] = (A[b] - factors[:, :, None] * prow[:, None, :]) % p
        used[b, pr] = True
        ranks[has] += 1
    return ranks
