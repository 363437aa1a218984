"""Exact linear algebra over F_q and F_{q^m}.

Matrices are 2-d integer arrays of element codes (see :mod:`ranksec.fields`).
A matrix over F_q is just a code array whose entries are below p, so the same
routines serve both fields.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations, islice, product
from typing import Iterator

import numpy as np

from .fields import GF, field


def as_matrix(M, n: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, n or 0), dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if A.shape[0] == 0 and n is not None and A.shape[1] != n:
        A = np.zeros((0, n), dtype=np.int64)
    return A


def rref(F: GF, M, n: int | None = None) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form and rank; zero rows are moved to the bottom."""
    A = as_matrix(M, n).copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul(F.inv(A[r, c]), A[r])
        f = A[:, c].copy()
        f[r] = 0
        if f.any():
            A = F.sub(A, F.mul(f[:, None], A[r][None, :]))
        r += 1
    return A, r


def rank(F: GF, M) -> int:
    return rref(F, M)[1]


def row_basis(F: GF, M, n: int | None = None) -> np.ndarray:
    """Canonical basis (RREF without zero rows) of the row space."""
    R, r = rref(F, M, n)
    return R[:r]


def pivots_of(R: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in R if row.any()]


def nullspace(F: GF, M, n: int | None = None) -> np.ndarray:
    """Basis (rows, canonical RREF) of {x : M x^T = 0}."""
    A = as_matrix(M, n)
    cols = A.shape[1]
    R, r = rref(F, A)
    R = R[:r]
    piv = pivots_of(R)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for j, pc in enumerate(piv):
            basis[k, pc] = F.neg(R[j, fcol])
    return row_basis(F, basis, cols)


def solve(F: GF, A, b) -> np.ndarray | None:
    """One solution y of A y = b, or None when inconsistent."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, r = rref(F, aug)
    y = np.zeros(A.shape[1], dtype=np.int64)
    for row in R[:r]:
        c = int(np.flatnonzero(row)[0])
        if c == A.shape[1]:
            return None
        y[c] = row[-1]
    return y


def solve_left(F: GF, M, x) -> np.ndarray | None:
    """One u with u M = x, or None."""
    return solve(F, as_matrix(M).T, x)


def in_row_space(F: GF, M, x) -> bool:
    M = as_matrix(M, len(x))
    return rank(F, np.vstack([M, np.asarray(x)[None, :]])) == rank(F, M)


def intersect_dim(F: GF, U, V) -> int:
    """dim(U ∩ V) = dim U + dim V - dim(U + V), for row-spanned spaces."""
    U = _rows(U)
    V = _rows(V)
    if U.shape[1] != V.shape[1]:
        raise ValueError(f"ambient mismatch: {U.shape[1]} vs {V.shape[1]}")
    return rank(F, U) + rank(F, V) - rank(F, np.vstack([U, V]))


def intersection_basis(F: GF, U, V) -> np.ndarray:
    """Explicit basis of U ∩ V (canonical RREF)."""
    U = row_basis(F, _rows(U))
    V = row_basis(F, _rows(V))
    n = U.shape[1]
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # a U = b V  <=>  [a, -b] [U; V] = 0
    stacked = np.vstack([U, V])
    coeffs = nullspace(F, stacked.T)
    if coeffs.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    vecs = F.matmul(coeffs[:, : U.shape[0]], U)
    return row_basis(F, vecs, n)


def _rows(X) -> np.ndarray:
    if isinstance(X, Subspace):
        return X.matrix
    return as_matrix(X)


# -- rank over the base field -------------------------------------------

def batch_rank_fp(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices with shape (B, r, c)."""
    M = np.array(mats, dtype=np.int64) % p
    if M.ndim == 2:
        M = M[None]
    B, r, c = M.shape
    ranks = np.zeros(B, dtype=np.int64)
    if B == 0 or r == 0:
        return ranks
    inv = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)], dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        cand = (M[:, :, col] != 0) & (rows[None, :] >= ranks[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        pr = np.argmax(cand[b], axis=1)
        tr = ranks[b]
        tmp = M[b, pr].copy()
        M[b, pr] = M[b, tr]
        M[b, tr] = tmp
        piv_row = (M[b, tr] * inv[M[b, tr, col]][:, None]) % p
        M[b, tr] = piv_row
        factors = M[b, :, col].copy()
        factors[np.arange(b.size), tr] = 0
        M[b] = (M[b] - factors[:, :, None] * piv_row[:, None, :]) % p
        ranks[b] += 1
    return ranks


_RANK_TABLE_LIMIT = 1 << 16


@functools.lru_cache(maxsize=64)
def _rank_table(F: GF, n: int) -> np.ndarray:
    Q = F.order
    codes = np.arange(Q**n, dtype=np.int64)
    vecs = (codes[:, None] // (Q ** np.arange(n - 1, -1, -1))[None, :]) % Q
    return batch_rank_fp(F.expand(vecs), F.p)


def vector_codes(F: GF, X) -> np.ndarray:
    """Pack each row of X into one integer (first coordinate most significant)."""
    X = np.asarray(X, dtype=np.int64)
    n = X.shape[-1]
    weights = F.order ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return X @ weights


def rank_fq_many(F: GF, X) -> np.ndarray:
    """rank_{F_q} of every row of X (shape (B, n))."""
    X = np.asarray(X, dtype=np.int64)
    n = X.shape[-1]
    if n == 0:
        return np.zeros(X.shape[:-1], dtype=np.int64)
    if F.order**n <= _RANK_TABLE_LIMIT:
        return _rank_table(F, n)[vector_codes(F, X)]
    flat = X.reshape(-1, n)
    return batch_rank_fp(F.expand(flat), F.p).reshape(X.shape[:-1])


def rank_fq(F: GF, x) -> int:
    """Rank over F_p of the m x n expansion of a vector in F_{q^m}^n."""
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    if x.size == 0:
        return 0
    return int(rank_fq_many(F, x[None, :])[0])


def rank_distance(F: GF, x, y) -> int:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return rank_fq(F, F.sub(y, x))


# -- F_q-rational subspaces ---------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """An F_q-rational subspace of F_{q^m}^n, stored by its RREF basis over F_q.

    The represented object is the F_{q^m}-span of the basis rows; since the
    basis is canonical, equality of instances is equality of subspaces.
    """

    n: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, p: int, rows, n: int | None = None) -> "Subspace":
        A = as_matrix(rows, n)
        if A.size and (A.min() < 0 or A.max() >= p):
            raise ValueError("entries must lie in the prime field")
        B = row_basis(field(p), A, A.shape[1])
        return cls(A.shape[1], tuple(tuple(int(v) for v in r) for r in B))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.basis, dtype=np.int64)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def frobenius_rows(F: GF, M, i: int = 1) -> np.ndarray:
    return F.frobenius(as_matrix(M), i)


def galois_closure(F: GF, V) -> Subspace:
    """Smallest Frobenius-invariant space containing span(V): sum of V^{q^i}."""
    V = _rows(V)
    n = V.shape[1]
    images = [F.frobenius(V, i) for i in range(F.m)] if V.size else [V]
    B = row_basis(F, np.vstack(images), n)
    if not F.is_base(B):
        raise AssertionError("RREF of a Frobenius-closed space must lie over F_q")
    return Subspace(n, tuple(tuple(int(v) for v in r) for r in B))


def is_galois_invariant(F: GF, V) -> bool:
    V = row_basis(F, _rows(V))
    if V.shape[0] == 0:
        return True
    return np.array_equal(V, row_basis(F, F.frobenius(V, 1), V.shape[1]))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, by the product formula."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


def enumerate_rref(Q: int, n: int, k: int) -> Iterator[np.ndarray]:
    """All k x n RREF matrices of rank k with entries in range(Q).

    Order: lexicographic pivot sets, then lexicographic free entries.
    """
    if not 0 <= k <= n:
        raise ValueError(f"dimension {k} out of range for n={n}")
    for piv in combinations(range(n), k):
        free = [(j, c) for j, pc in enumerate(piv) for c in range(pc + 1, n) if c not in piv]
        for vals in product(range(Q), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for j, pc in enumerate(piv):
                M[j, pc] = 1
            for (j, c), v in zip(free, vals):
                M[j, c] = v
            yield M


def enumerate_subspaces(F: GF, n: int, k: int) -> Iterator[np.ndarray]:
    """Canonical bases of every k-dimensional subspace of F^n."""
    return enumerate_rref(F.order, n, k)


def enumerate_gamma(q: int, n: int, i: int, start: int = 0, stop: int | None = None) -> Iterator[Subspace]:
    """Every i-dimensional F_q-rational subspace of F_{q^m}^n exactly once.

    ``start``/``stop`` select a slice of the fixed enumeration order, so
    disjoint slices partition the family.
    """
    if not 0 <= i <= n:
        raise ValueError(f"dimension {i} out of range for n={n}")
    it = enumerate_rref(q, n, i)
    for M in islice(it, start, stop):
        yield Subspace(n, tuple(tuple(int(v) for v in r) for r in M))


def gamma_count(q: int, n: int, upto: int | None = None) -> int:
    top = n if upto is None else upto
    return sum(gaussian_binomial(n, i, q) for i in range(top + 1))


def all_fq_matrices(p: int, rows: int, cols: int) -> Iterator[np.ndarray]:
    for vals in product(range(p), repeat=rows * cols):
        yield np.array(vals, dtype=np.int64).reshape(rows, cols)
