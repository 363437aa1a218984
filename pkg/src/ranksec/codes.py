"""Linear codes over F_{q^m} and the rank metric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from . import linalg as la
from .errors import BudgetExceeded
from .fields import GF, field

DEFAULT_CODEWORD_BUDGET = 1 << 20


@dataclass(frozen=True, eq=True)
class LinearCode:
    """An [n, k] code stored by its canonical RREF generator matrix.

    Two instances compare equal exactly when they are the same code.
    """

    field: GF
    n: int
    gen: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generator(cls, F: GF, rows, n: int | None = None) -> "LinearCode":
        A = la.as_matrix(rows, n)
        if A.size and (A.min() < 0 or A.max() >= F.order):
            raise ValueError("generator entries out of range for " + repr(F))
        B = la.row_basis(F, A, A.shape[1])
        return cls(F, A.shape[1], tuple(tuple(int(v) for v in r) for r in B))

    @classmethod
    def zero(cls, F: GF, n: int) -> "LinearCode":
        return cls(F, n, ())

    @classmethod
    def full(cls, F: GF, n: int) -> "LinearCode":
        return cls.from_generator(F, np.eye(n, dtype=np.int64))

    @property
    def k(self) -> int:
        return len(self.gen)

    @cached_property
    def G(self) -> np.ndarray:
        if not self.gen:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.gen, dtype=np.int64)

    def __contains__(self, x) -> bool:
        return la.in_row_space(self.field, self.G, np.asarray(x, dtype=np.int64))

    def contains_code(self, other: "LinearCode") -> bool:
        if other.n != self.n or other.field != self.field:
            return False
        return la.rank(self.field, np.vstack([self.G, other.G])) == self.k

    def encode(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64).reshape(1, -1)
        return self.field.matmul(u, self.G)[0]

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over GF({self.field.p}^{self.field.m}))"


def span_codewords(F: GF, rows: np.ndarray, n: int, budget: int = DEFAULT_CODEWORD_BUDGET) -> np.ndarray:
    """All F-linear combinations of ``rows``; index = message in base Q, row 0 most significant."""
    rows = la.as_matrix(rows, n)
    total = F.order ** rows.shape[0]
    if total > budget:
        raise BudgetExceeded(f"{total} codewords exceed budget {budget}")
    scal = np.arange(F.order, dtype=np.int64)
    cw = np.zeros((1, n), dtype=np.int64)
    for g in rows:
        multiples = F.mul(scal[:, None], g[None, :])
        cw = F.add(cw[:, None, :], multiples[None, :, :]).reshape(-1, n)
    return cw


def codewords(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> np.ndarray:
    return span_codewords(C.field, C.G, C.n, budget)


def dual(C: LinearCode) -> LinearCode:
    H = la.nullspace(C.field, C.G, C.n)
    return LinearCode(C.field, C.n, tuple(tuple(int(v) for v in r) for r in H))


def gabidulin(F: GF, n: int, k: int, g=None) -> LinearCode:
    """Gabidulin code with Moore-matrix generator rows g^{q^i}, i < k."""
    if F.m < n:
        raise ValueError(f"Gabidulin codes need m >= n (m={F.m}, n={n})")
    if not 0 <= k <= n:
        raise ValueError(f"dimension {k} out of range for n={n}")
    if g is None:
        g = [F.pow(F.alpha, j) if F.m > 1 else 1 for j in range(n)]
    g = np.asarray(g, dtype=np.int64)
    if g.shape != (n,):
        raise ValueError(f"evaluation vector must have length {n}")
    if la.rank_fq(F, g) != n:
        raise ValueError("entries of g must be linearly independent over F_q")
    rows = np.array([F.frobenius(g, i) for i in range(k)], dtype=np.int64).reshape(k, n)
    return LinearCode.from_generator(F, rows, n)


def min_rank_distance(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    if C.k == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    cw = codewords(C, budget)[1:]
    return int(la.rank_fq_many(C.field, cw).min())


def singleton_rank_bound(F: GF, n: int, k: int) -> Fraction:
    """min{1, m/n} (n - k) + 1 as an exact rational."""
    return min(Fraction(1), Fraction(F.m, n)) * (n - k) + 1


def is_mrd(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> bool:
    return min_rank_distance(C, budget) == singleton_rank_bound(C.field, C.n, C.k)


def _index_set(J: Iterable[int], n: int) -> list[int]:
    J = sorted(set(int(j) for j in J))
    if not J:
        raise ValueError("index set must be nonempty")
    if J[0] < 0 or J[-1] >= n:
        raise ValueError(f"indices must lie in [0, {n})")
    return J


def puncture(C: LinearCode, J: Iterable[int]) -> LinearCode:
    """Projection of C onto the coordinates in J (0-based)."""
    J = _index_set(J, C.n)
    return LinearCode.from_generator(C.field, C.G[:, J], len(J))


def shorten(C: LinearCode, J: Iterable[int]) -> LinearCode:
    """Projection onto J of the subcode vanishing outside J."""
    J = _index_set(J, C.n)
    rest = [j for j in range(C.n) if j not in J]
    if not rest:
        return C
    F = C.field
    U = la.nullspace(F, C.G[:, rest].T, C.k) if C.k else np.zeros((0, 0), dtype=np.int64)
    if U.shape[0] == 0:
        return LinearCode.zero(F, len(J))
    sub = F.matmul(U, C.G)
    return LinearCode.from_generator(F, sub[:, J], len(J))


def subfield_subcode(C: LinearCode) -> np.ndarray:
    """F_q-basis (RREF rows) of C ∩ F_q^n.

    Each parity check sum_j h_j x_j = 0 with x_j in F_q expands into m
    equations over F_q, one per basis coordinate of F_{q^m}.
    """
    F = C.field
    H = dual(C).G
    if H.shape[0] == 0:
        return np.eye(C.n, dtype=np.int64)
    # (rows of H, m, n) -> stack the m coordinate equations of each check
    eqs = F.expand(H).reshape(-1, C.n)
    return la.nullspace(field(F.p), eqs, C.n)


def complement(C1: LinearCode, C2: LinearCode) -> np.ndarray:
    """Rows completing C2's basis to one of C1 (RREF pivot completion).

    Picks, in order, the rows of C1's RREF generator that raise the rank.
    """
    F = C1.field
    basis = C2.G
    extra = []
    r = C2.k
    for row in C1.G:
        trial = np.vstack([basis, row[None, :]])
        if la.rank(F, trial) > r:
            basis = trial
            extra.append(row)
            r += 1
    if r != C1.k:
        raise ValueError("C2 is not contained in C1")
    return np.array(extra, dtype=np.int64).reshape(len(extra), C1.n)


def complement_code(C1: LinearCode, C2: LinearCode) -> LinearCode:
    return LinearCode.from_generator(C1.field, complement(C1, C2), C1.n)
