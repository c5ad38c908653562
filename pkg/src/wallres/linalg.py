"""Dense exact linear algebra over prime fields GF(p).

Matrices are plain ``numpy`` integer arrays with entries reduced into
``[0, p)``.  Elimination is done panel by panel: each panel of columns is
reduced with ordinary Gauss-Jordan steps and the accumulated row operations
are then applied to the trailing columns in a single matrix product.  For
small primes those products are carried out in float64, which is exact as
long as ``b * (p - 1)**2 < 2**53`` for panel width ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "is_prime",
    "as_matrix",
    "zeros",
    "identity",
    "matmul",
    "rref",
    "rank",
    "solve",
    "solve_many",
    "kernel_basis",
    "image_basis",
    "inverse",
    "left_inverse",
    "block_matrix",
]

_PANEL = 64
_FLOAT_EXACT = 2**53


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field with ``p`` elements."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p <= 2**31 - 1) or not is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime in [2, 2^31-1]")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def __int__(self):
        return self.p


def _p(p) -> int:
    return p.p if isinstance(p, PrimeField) else int(p)


def as_matrix(A, p, shape: Optional[tuple] = None) -> np.ndarray:
    """Return ``A`` as a 2-d int64 array reduced mod ``p``."""
    p = _p(p)
    M = np.asarray(A, dtype=np.int64)
    if shape is not None:
        M = M.reshape(shape)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if M.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    return np.remainder(M, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _float_ok(inner: int, p: int) -> bool:
    return max(inner, 1) * (p - 1) ** 2 + p < _FLOAT_EXACT


def matmul(A: np.ndarray, B: np.ndarray, p) -> np.ndarray:
    """Exact product ``A @ B`` mod ``p``."""
    p = _p(p)
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    k = A.shape[1]
    if k == 0:
        return zeros(A.shape[0], B.shape[1])
    if _float_ok(k, p):
        C = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.remainder(C, p).astype(np.int64)
    if k * (p - 1) ** 2 < 2**63:
        return np.remainder(np.asarray(A, np.int64) @ np.asarray(B, np.int64), p)
    C = np.asarray(A, dtype=object) @ np.asarray(B, dtype=object)
    return np.remainder(C, p).astype(np.int64)


def _gauss_jordan(P: np.ndarray, p: int, ncand: int, blocked: np.ndarray):
    """Unblocked Gauss-Jordan on a copy of ``P``.

    Pivots are searched in the first ``ncand`` columns, only among rows not
    flagged in ``blocked``.  Returns the reduced copy and the (row, col)
    pivot lists in the order found.
    """
    P = P.copy()
    avail = ~blocked
    pivrows: list[int] = []
    pivcols: list[int] = []
    for c in range(ncand):
        cand = np.flatnonzero(avail & (P[:, c] != 0))
        if cand.size == 0:
            continue
        r = int(cand[0])
        v = int(P[r, c])
        if v != 1:
            P[r] = np.remainder(P[r] * pow(v, -1, p), p)
        col = P[:, c].copy()
        col[r] = 0
        nz = np.flatnonzero(col)
        if nz.size:
            P[nz] = np.remainder(P[nz] - np.outer(col[nz], P[r]), p)
        avail[r] = False
        pivrows.append(r)
        pivcols.append(c)
    return P, pivrows, pivcols


def _rref_object(A: np.ndarray, p: int, ncols: int):
    # fallback for primes too large for float64 panels
    R = np.asarray(A, dtype=object) % p
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = [i for i in range(r, m) if R[i, c] % p]
        if not nz:
            continue
        k = nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        for i in range(m):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R.astype(np.int64), pivots


def rref(A, p, ncols: Optional[int] = None):
    """Reduced row-echelon form of ``A`` over GF(p).

    Only the first ``ncols`` columns are eligible as pivot columns (all of
    them by default); row operations still act on the full width, which is
    how augmented systems are handled.

    Returns ``(R, pivots, rank)``.
    """
    p = _p(p)
    A = as_matrix(A, p)
    m, n = A.shape
    if ncols is None:
        ncols = n
    if not _float_ok(_PANEL, p):
        R, piv = _rref_object(A, p, ncols)
        return R, piv, len(piv)
    R = A.astype(np.float64)
    done = np.zeros(m, dtype=bool)
    order: list[int] = []
    pivots: list[int] = []
    for c0 in range(0, ncols, _PANEL):
        if len(order) == m:
            break
        c1 = min(ncols, c0 + _PANEL)
        P = R[:, c0:c1]
        Pn, pr, pc = _gauss_jordan(P, p, c1 - c0, done)
        if not pr:
            continue
        pr_a = np.asarray(pr)
        pc_a = np.asarray(pc)
        if c1 < n:
            # Pn = P + X @ P[pr]; recover X from the pivot columns
            piv_block = P[np.ix_(pr_a, pc_a)]
            X = np.remainder((Pn[:, pc_a] - P[:, pc_a]) @ _inverse_float(piv_block, p), p)
            R[:, c1:] = np.remainder(R[:, c1:] + X @ R[pr_a, c1:], p)
        R[:, c0:c1] = Pn
        done[pr_a] = True
        order.extend(pr)
        pivots.extend(int(c) + c0 for c in pc)
    rest = [i for i in range(m) if not done[i]]
    R = R[order + rest].astype(np.int64)
    return R, pivots, len(pivots)


def _inverse_float(M: np.ndarray, p: int) -> np.ndarray:
    k = M.shape[0]
    aug = np.hstack([M, np.eye(k)])
    R, pr, pc = _gauss_jordan(aug, p, k, np.zeros(k, dtype=bool))
    if len(pr) != k:
        raise ZeroDivisionError("singular pivot block")
    return R[pr][:, k:]


def rank(A, p) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return rref(A, p)[2]


def solve_many(A, B, p) -> Optional[np.ndarray]:
    """Some ``X`` with ``A @ X == B`` (mod p), or ``None`` if inconsistent."""
    p = _p(p)
    A = as_matrix(A, p)
    B = as_matrix(B, p)
    m, n = A.shape
    if B.shape[0] != m:
        raise ValueError(f"dimension mismatch: A has {m} rows, B has {B.shape[0]}")
    k = B.shape[1]
    if m == 0:
        return zeros(n, k)
    R, piv, r = rref(np.hstack([A, B]), p, ncols=n)
    if np.any(R[r:, n:]):
        return None
    X = zeros(n, k)
    if r:
        X[piv] = R[:r, n:]
    return X


def solve(A, b, p) -> Optional[np.ndarray]:
    """Solve ``A x = b``; ``b`` is a vector (returned ``x`` is 1-d)."""
    b = np.asarray(b).reshape(-1)
    X = solve_many(A, b.reshape(-1, 1), p)
    return None if X is None else X[:, 0]


def kernel_basis(A, p, return_free: bool = False):
    """Columns spanning ``ker A``, in the canonical rref form.

    The returned basis restricted to the free (non-pivot) coordinates is an
    identity matrix, so coordinates of a kernel vector are read off those
    rows (see :func:`left_inverse`).
    """
    p = _p(p)
    A = as_matrix(A, p)
    m, n = A.shape
    if m == 0:
        return (identity(n), np.arange(n)) if return_free else identity(n)
    R, piv, r = rref(A, p)
    free = np.setdiff1d(np.arange(n), piv)
    K = zeros(n, free.size)
    K[free, np.arange(free.size)] = 1
    if r and free.size:
        K[piv] = np.remainder(-R[:r][:, free], p)
    return (K, free) if return_free else K


def image_basis(A, p) -> np.ndarray:
    """Columns of ``A`` forming a basis of its column space (pivot columns)."""
    A = as_matrix(A, p)
    if A.size == 0:
        return zeros(A.shape[0], 0)
    _, piv, _ = rref(A, p)
    return A[:, piv]


def inverse(A, p) -> np.ndarray:
    p = _p(p)
    A = as_matrix(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    X = solve_many(A, identity(n), p)
    if X is None:
        raise ZeroDivisionError("matrix is singular mod p")
    return X


def left_inverse(K, p) -> np.ndarray:
    """``L`` with ``L @ K == I`` for ``K`` of full column rank."""
    p = _p(p)
    K = as_matrix(K, p)
    n, k = K.shape
    if k == 0:
        return zeros(0, n)
    # pivot rows of K are the pivot columns of K^T
    _, rows, r = rref(K.T, p)
    if r != k:
        raise ValueError("matrix does not have full column rank")
    L = zeros(k, n)
    L[:, rows] = inverse(K[rows], p)
    return L


def block_matrix(blocks: Sequence[Sequence[Optional[np.ndarray]]],
                 row_dims: Sequence[int], col_dims: Sequence[int]) -> np.ndarray:
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    out = zeros(sum(row_dims), sum(col_dims))
    r0 = 0
    for i, rd in enumerate(row_dims):
        c0 = 0
        for j, cd in enumerate(col_dims):
            blk = blocks[i][j]
            if blk is not None and rd and cd:
                out[r0:r0 + rd, c0:c0 + cd] = blk
            c0 += cd
        r0 += rd
    return out
