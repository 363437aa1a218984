"""Relative dimension/intersection profile and relative generalized rank weights.

For a nested pair C2 ⊊ C1 in F_{q^m}^n:

* ``rdip(C1, C2, i)`` is the largest value of dim(C1 ∩ V) - dim(C2 ∩ V)
  over F_q-rational subspaces V of dimension i;
* ``rgrw(C1, C2, i)`` is the smallest dimension of an F_q-rational V on
  which that difference reaches i.

Both are computed by exhaustive scans over the rational subspaces.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .codes import DEFAULT_CODEWORD_BUDGET, LinearCode, complement, span_codewords
from .errors import BudgetExceeded, NotNestedError, TheoremViolation

DEFAULT_SCAN_BUDGET = 10**7


def check_nested(C1: LinearCode, C2: LinearCode) -> None:
    """Raise :class:`NotNestedError` unless C2 is a proper subcode of C1."""
    if C1.field != C2.field or C1.n != C2.n:
        raise NotNestedError("codes live in different ambient spaces")
    if not C1.contains_code(C2):
        raise NotNestedError("C2 is not a subcode of C1")
    if C2.k >= C1.k:
        raise NotNestedError("C2 must be a proper subcode of C1")


def _check_budget(q: int, n: int, budget: int) -> None:
    cost = la.gamma_count(q, n)
    if cost > budget:
        raise BudgetExceeded(f"scan over {cost} rational subspaces exceeds budget {budget}")


def relative_intersection(C1: LinearCode, C2: LinearCode, V) -> int:
    """dim(C1 ∩ V) - dim(C2 ∩ V)."""
    F = C1.field
    return la.intersect_dim(F, C1.G, V) - la.intersect_dim(F, C2.G, V)


@functools.lru_cache(maxsize=4096)
def _scan(C1: LinearCode, C2: LinearCode) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """One pass over all rational subspaces.

    Returns the RDIP values for i = 0..n, and for each j = 0..l the smallest
    dim V whose difference is exactly j (recorded independently of the max).
    """
    F = C1.field
    n = C1.n
    l = C1.k - C2.k
    G1, G2 = C1.G, C2.G
    r1 = la.rank(F, G1)
    r2 = la.rank(F, G2)
    best = []
    exact = [None] * (l + 1)
    for i in range(n + 1):
        top = 0
        for V in la.enumerate_gamma(F.p, n, i):
            # dim(C ∩ V) = dim C + dim V - rank[C; V]
            M = V.matrix
            s1 = la.rank(F, np.vstack([G1, M]))
            s2 = la.rank(F, np.vstack([G2, M]))
            diff = (r1 - s1) - (r2 - s2)
            top = max(top, diff)
            if exact[diff] is None:
                exact[diff] = i
        best.append(top)
    return tuple(best), tuple(exact)


@dataclass(frozen=True)
class RdipProfile:
    """K_{R,0..n} of a nested pair."""

    values: tuple[int, ...]
    dim_quotient: int

    def __post_init__(self):
        v = self.values
        if v[0] != 0 or v[-1] != self.dim_quotient:
            raise TheoremViolation(f"RDIP endpoints wrong: {v}")
        if any(not 0 <= b - a <= 1 for a, b in zip(v, v[1:])):
            raise TheoremViolation(f"RDIP steps not in {{0, 1}}: {v}")

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class RgrwProfile:
    """M_{R,0..l} of a nested pair."""

    values: tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if v[0] != 0 or any(b <= a for a, b in zip(v, v[1:])):
            raise TheoremViolation(f"RGRW not strictly increasing from 0: {v}")

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def rdip(C1: LinearCode, C2: LinearCode, i: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    check_nested(C1, C2)
    if not 0 <= i <= C1.n:
        raise ValueError(f"i={i} out of range [0, {C1.n}]")
    _check_budget(C1.field.p, C1.n, budget)
    return _scan(C1, C2)[0][i]


def rdip_profile(C1: LinearCode, C2: LinearCode, budget: int = DEFAULT_SCAN_BUDGET) -> RdipProfile:
    check_nested(C1, C2)
    _check_budget(C1.field.p, C1.n, budget)
    return RdipProfile(_scan(C1, C2)[0], C1.k - C2.k)


def rgrw_profile(C1: LinearCode, C2: LinearCode, budget: int = DEFAULT_SCAN_BUDGET) -> RgrwProfile:
    prof = rdip_profile(C1, C2, budget).values
    l = C1.k - C2.k
    return RgrwProfile(tuple(min(j for j, K in enumerate(prof) if K == i) for i in range(l + 1)))


def rgrw(C1: LinearCode, C2: LinearCode, i: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """M_{R,i}, read off the RDIP as the first j with K_{R,j} = i."""
    l = C1.k - C2.k
    if not 0 <= i <= l:
        check_nested(C1, C2)
        raise ValueError(f"i={i} out of range [0, {l}]")
    return rgrw_profile(C1, C2, budget)[i]


def rgrw_scan(C1: LinearCode, C2: LinearCode, i: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """min dim V over rational V whose intersection difference equals i exactly.

    Independent of :func:`rdip`; kept as a cross-check.
    """
    check_nested(C1, C2)
    _check_budget(C1.field.p, C1.n, budget)
    found = _scan(C1, C2)[1][i]
    if found is None:
        raise TheoremViolation(f"no rational subspace attains difference {i}")
    return found


def rgrw_first_direct(C1: LinearCode, C2: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """min rank_{F_q}(x) over x in C1 \\ C2, by codeword enumeration."""
    check_nested(C1, C2)
    F = C1.field
    S = complement(C1, C2)
    # index = s * Q^{k2} + r over the basis [S; G2]; s != 0 picks C1 \ C2
    allw = span_codewords(F, np.vstack([S, C2.G]), C1.n, budget)
    outside = np.arange(allw.shape[0]) >= F.order**C2.k
    return int(la.rank_fq_many(F, allw[outside]).min())


def singleton_bound(C1: LinearCode, C2: LinearCode, i: int) -> Fraction:
    """min{1, m/(n - dim C2)} (n - dim C1) + i, exact."""
    n, m = C1.n, C1.field.m
    kappa = min(Fraction(1), Fraction(m, n - C2.k))
    return kappa * (n - C1.k) + i


def singleton_profile(C1: LinearCode, C2: LinearCode) -> list[Fraction]:
    return [singleton_bound(C1, C2, i) for i in range(1, C1.k - C2.k + 1)]


def meets_singleton(C1: LinearCode, C2: LinearCode, budget: int = DEFAULT_SCAN_BUDGET) -> bool:
    """True when M_{R,i} equals the Singleton-type bound for every i >= 1."""
    M = rgrw_profile(C1, C2, budget)
    return all(M[i] == b for i, b in enumerate(singleton_profile(C1, C2), start=1))
