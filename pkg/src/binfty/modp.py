"""Exact linear algebra over F_p on int64 numpy arrays.

All matrices are numpy int64 arrays with entries reduced into [0, p).  No
floating point is used anywhere: products of two reduced entries stay below
2^62 for p < 2^31.5, so a single multiply-accumulate step is exact in int64
provided we reduce after every rank-one update.  Matrix products use a 16-bit
hi/lo split so that numpy's matmul never overflows for inner dimensions up to
~2^15, which is far beyond anything this package builds.
"""

from __future__ import annotations

import numpy as np

# Default prime and the escalation list used when genericity over the default
# prime fails.  All primes are kept below 2^32 so the split matmul bound holds.
DEFAULT_PRIME = 2**31 - 1
PRIMES = (2147483647, 2147483659, 2147483693)

LinAlgError = np.linalg.LinAlgError


def asmod(a, p):
    """Coerce to an int64 array with entries reduced mod p."""
    return np.asarray(a, dtype=np.int64) % p


_BLAS_CHUNK = 64  # inner slice so float64 partial sums stay exact integers


def matmul(a, b, p):
    """Exact (a @ b) mod p via a 16-bit split of the left factor.

    a = a_hi * 2^16 + a_lo with a_hi < p / 2^16 < 2^16 keeps every partial
    product under 2^48; int64 accumulates up to 2^15 of them exactly.
    Products big enough to be arithmetic-bound run the same split through
    float64 BLAS instead, with the inner dimension chunked to 64 so every
    partial sum stays below 2^53 and is exactly representable.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if (a.ndim == 2 and b.ndim == 2 and a.shape[0] >= 16 and b.shape[1] >= 16
            and a.shape[0] * a.shape[1] * b.shape[1] >= 1 << 16):
        return _matmul_blas(a, b, p)
    a_hi, a_lo = a >> 16, a & 0xFFFF
    return (((a_hi @ b) % p << 16) + a_lo @ b) % p


def _matmul_blas(a, b, p):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, a.shape[1], _BLAS_CHUNK):
        asl = a[:, s : s + _BLAS_CHUNK]
        bf = b[s : s + _BLAS_CHUNK].astype(np.float64)
        hi = ((asl >> 16).astype(np.float64) @ bf).astype(np.int64)
        lo = ((asl & 0xFFFF).astype(np.float64) @ bf).astype(np.int64)
        out += (((hi % p) << 16) + lo) % p
    return out % p


class PreparedMatmul:
    """Repeated exact products of one fixed left factor against vectors.

    Precomputes the float64 split of the matrix once, so each application
    costs two BLAS calls per 64-column chunk; the exactness bounds are the
    same as in _matmul_blas.
    """

    def __init__(self, a, p):
        a = np.asarray(a, dtype=np.int64)
        self.p = p
        self.shape = a.shape
        self._chunks = [
            (
                (a[:, s : s + _BLAS_CHUNK] >> 16).astype(np.float64),
                (a[:, s : s + _BLAS_CHUNK] & 0xFFFF).astype(np.float64),
                s,
            )
            for s in range(0, a.shape[1], _BLAS_CHUNK)
        ]

    def __call__(self, v):
        vf = np.asarray(v, dtype=np.int64).astype(np.float64)
        out = np.zeros(self.shape[0], dtype=np.int64)
        for hi, lo, s in self._chunks:
            vs = vf[s : s + _BLAS_CHUNK]
            h = (hi @ vs).astype(np.int64)
            l = (lo @ vs).astype(np.int64)
            out += (((h % self.p) << 16) + l) % self.p
        return out % self.p


def _eliminate_small(m, p, reduced):
    """Python-int elimination for small matrices, avoiding ufunc overhead."""
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return []
    a = [list(map(int, row)) for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((idx for idx in range(r, rows) if a[idx][c]), None)
        if k is None:
            continue
        if k != r:
            a[r], a[k] = a[k], a[r]
        inv = pow(a[r][c], -1, p)
        ar = a[r] = [v * inv % p for v in a[r]]
        lo = 0 if reduced else r + 1
        for idx in range(lo, rows):
            if idx == r:
                continue
            f = a[idx][c]
            if f:
                row_i = a[idx]
                a[idx] = [(row_i[j] - f * ar[j]) % p for j in range(cols)]
        pivots.append(c)
        r += 1
    m[:] = a
    return pivots


def _forward_eliminate(m, p, reduced):
    """Row-reduce m in place (int64, entries in [0, p)).  Returns pivot cols.

    With reduced=True the result is the RREF; otherwise echelon form only.
    Each rank-one update multiplies two entries < p and therefore stays below
    p^2 < 2^63 before the reduction mod p.
    """
    if m.size <= 400:
        return _eliminate_small(m, p, reduced)
    rows, cols = m.shape
    pivots = []
    r = 0
    buf = np.empty_like(m)
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        row = m[r]
        np.multiply(row, inv, out=row)
        np.mod(row, p, out=row)
        lo = 0 if reduced else r + 1
        col = m[lo:, c].copy()
        if reduced:
            col[r] = 0
        # restrict the rank-one update to the nonzero support; the moment-map
        # systems are block-banded, so this skips most of the matrix
        nzr = np.nonzero(col)[0]
        if nzr.size:
            r0, r1 = int(nzr[0]), int(nzr[-1]) + 1
            sup = np.nonzero(row)[0]
            w0, w1 = int(sup[0]), int(sup[-1]) + 1
            sub = m[lo + r0 : lo + r1, w0:w1]
            tmp = buf[: sub.shape[0], : sub.shape[1]]
            np.multiply(col[r0:r1, None], row[None, w0:w1], out=tmp)
            np.subtract(sub, tmp, out=sub)
            np.mod(sub, p, out=sub)
        pivots.append(c)
        r += 1
    return pivots


def rref(a, p):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = asmod(a, p).copy()
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    pivots = _forward_eliminate(m, p, reduced=True)
    return m, pivots


def rank(a, p):
    m = asmod(a, p).copy()
    if m.size == 0:
        return 0
    return len(_forward_eliminate(m, p, reduced=False))


def pivot_columns(a, p):
    """Indices of a maximal independent set of columns (left to right)."""
    m = asmod(a, p).copy()
    if m.size == 0:
        return []
    return _forward_eliminate(m, p, reduced=False)


def nullspace(a, p):
    """Basis of the right kernel as columns of an (n, k) matrix.

    Echelon form plus back-substitution; the result equals the classical
    RREF kernel basis (unit vectors at the free columns).
    """
    a = asmod(a, p)
    n = a.shape[1]
    m = a.copy()
    pivots = _forward_eliminate(m, p, reduced=False)
    rho = len(pivots)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    if not free:
        return basis
    x = np.zeros((rho, len(free)), dtype=np.int64)
    for i in range(rho - 1, -1, -1):
        acc = m[i, free].copy()
        if i + 1 < rho:
            tail = matmul(m[i : i + 1, pivots[i + 1 :]], x[i + 1 :], p)
            acc = (acc + tail.ravel()) % p
        x[i] = (-acc) % p
    for idx, c in enumerate(pivots):
        basis[c] = x[idx]
    for j, c in enumerate(free):
        basis[c, j] = 1
    return basis


def solve(a, b, p):
    """One solution x of a @ x = b (mod p), or None if inconsistent.

    b may be a vector or a matrix of stacked right-hand sides.
    """
    a = asmod(a, p)
    b = asmod(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug, p)
    n = a.shape[1]
    if any(c >= n for c in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, n:]
    return x[:, 0] if vec else x


def inv(a, p):
    """Inverse of a square matrix; raises if singular."""
    a = asmod(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inv expects a square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, p)
    if pivots != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix mod p")
    return r[:, n:]


def complete_basis(a, p):
    """Columns completing the (injective) columns of a to a basis.

    Returns e with [a | e] invertible.  Raises if a is not injective.
    """
    a = asmod(a, p)
    m, k = a.shape
    r, pivots = rref(a.T, p)
    if len(pivots) != k:
        raise np.linalg.LinAlgError("columns are dependent mod p")
    free = [i for i in range(m) if i not in set(pivots)]
    e = np.zeros((m, m - k), dtype=np.int64)
    for j, i in enumerate(free):
        e[i, j] = 1
    return e
