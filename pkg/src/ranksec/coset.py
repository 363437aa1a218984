"""Nested coset coding: a message S picks the coset S·msg_rows + C2 of C2 in C1,
and the transmitted word is a uniformly random member of that coset."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .codes import DEFAULT_CODEWORD_BUDGET, LinearCode, complement, gabidulin, puncture, shorten, span_codewords
from .errors import NotNestedError
from .fields import GF
from .rparams import check_nested


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; independent streams come from distinct seeds."""
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class NestedPair:
    """C2 ⊊ C1 together with the rows defining the message embedding."""

    c1: LinearCode
    c2: LinearCode
    msg_rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_codes(cls, c1: LinearCode, c2: LinearCode, msg_rows=None) -> "NestedPair":
        check_nested(c1, c2)
        if msg_rows is None:
            rows = complement(c1, c2)
        else:
            rows = la.as_matrix(msg_rows, c1.n)
            l = c1.k - c2.k
            if rows.shape != (l, c1.n):
                raise NotNestedError(f"msg_rows must be {l} x {c1.n}")
            basis = np.vstack([c2.G, rows])
            if la.rank(c1.field, basis) != c1.k or not c1.contains_code(
                LinearCode.from_generator(c1.field, basis, c1.n)
            ):
                raise NotNestedError("C2 basis plus msg_rows must be a basis of C1")
        return cls(c1, c2, tuple(tuple(int(v) for v in r) for r in rows))

    @property
    def field(self) -> GF:
        return self.c1.field

    @property
    def n(self) -> int:
        return self.c1.n

    @property
    def l(self) -> int:
        return self.c1.k - self.c2.k

    @cached_property
    def M(self) -> np.ndarray:
        return np.array(self.msg_rows, dtype=np.int64).reshape(self.l, self.n)

    @cached_property
    def basis(self) -> np.ndarray:
        """[msg_rows; C2 generator], a basis of C1."""
        return np.vstack([self.M, self.c2.G])

    def all_words(self, budget: int = DEFAULT_CODEWORD_BUDGET) -> tuple[np.ndarray, np.ndarray]:
        """Every (S, R) encoding: returns (message index, X) arrays.

        Row t corresponds to S with index t // Q^{dim C2} and R with index
        t % Q^{dim C2}; every coset member appears exactly once.
        """
        X = span_codewords(self.field, self.basis, self.n, budget)
        s_idx = np.arange(X.shape[0]) // self.field.order**self.c2.k
        return s_idx, X

    def messages(self) -> np.ndarray:
        """All messages in index order (first symbol most significant)."""
        Q = self.field.order
        idx = np.arange(Q**self.l, dtype=np.int64)
        return (idx[:, None] // (Q ** np.arange(self.l - 1, -1, -1))[None, :]) % Q

    def message_index(self, s) -> int:
        return int(la.vector_codes(self.field, np.asarray(s, dtype=np.int64).reshape(-1)))


def _message(pair: NestedPair, s) -> np.ndarray:
    s = np.asarray(s, dtype=np.int64).reshape(-1)
    if s.shape != (pair.l,):
        raise ValueError(f"message must have length {pair.l}")
    if s.size and (s.min() < 0 or s.max() >= pair.field.order):
        raise ValueError("message symbols out of range")
    return s


def coset_offset(pair: NestedPair, s) -> np.ndarray:
    s = _message(pair, s)
    if pair.l == 0:
        return np.zeros(pair.n, dtype=np.int64)
    return pair.field.matmul(s[None, :], pair.M)[0]


def coset_members(pair: NestedPair, s, budget: int = DEFAULT_CODEWORD_BUDGET) -> np.ndarray:
    """Every element of psi(S), one per randomness vector R, in R-index order."""
    F = pair.field
    base = coset_offset(pair, s)
    inner = span_codewords(F, pair.c2.G, pair.n, budget)
    return F.add(inner, base[None, :])


def encode(pair: NestedPair, s, seed: int) -> np.ndarray:
    """X = S·msg_rows + R·G2 with R uniform from a seeded generator."""
    F = pair.field
    base = coset_offset(pair, s)
    if pair.c2.k == 0:
        return base
    R = make_rng(seed).integers(0, F.order, size=pair.c2.k)
    return F.add(base, F.matmul(R[None, :], pair.c2.G)[0])


def decode_clean(pair: NestedPair, x) -> np.ndarray:
    """The unique S with x in psi(S); raises when x is not a codeword of C1."""
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    if x.shape != (pair.n,):
        raise ValueError(f"word must have length {pair.n}")
    u = la.solve_left(pair.field, pair.basis, x)
    if u is None:
        raise ValueError("word is not in C1")
    return u[: pair.l]


def extended_code(pair: NestedPair) -> tuple[LinearCode, LinearCode]:
    """C1' = {[S, X] : X in psi(S)} and C2' = {[0, c] : c in C2}, length l + n."""
    F = pair.field
    l, n = pair.l, pair.n
    top = np.hstack([np.eye(l, dtype=np.int64), pair.M])
    bottom = np.hstack([np.zeros((pair.c2.k, l), dtype=np.int64), pair.c2.G])
    c1e = LinearCode.from_generator(F, np.vstack([top, bottom]), l + n)
    c2e = LinearCode.from_generator(F, bottom, l + n)
    return c1e, c2e


def strong_pair(pair: NestedPair, i: int) -> tuple[LinearCode, LinearCode]:
    """Puncture and shorten C1' at message coordinate i (0-based)."""
    if not 0 <= i < pair.l:
        raise ValueError(f"message index {i} out of range [0, {pair.l})")
    c1e, _ = extended_code(pair)
    keep = [j for j in range(pair.l + pair.n) if j != i]
    return puncture(c1e, keep), shorten(c1e, keep)


def systematic_mrd_construction(F: GF, l: int, n: int, g=None) -> NestedPair:
    """Pair whose extended code C1' is a systematic [l+n, n] Gabidulin code.

    The RREF of an MRD generator is systematic on its first n coordinates;
    its first l rows carry the message symbols and the remaining n - l rows,
    which vanish there, generate C2. C1 is then all of F^n.
    """
    if F.m < l + n:
        raise ValueError(f"construction needs m >= l + n (m={F.m}, l+n={l + n})")
    if not 1 <= l <= n:
        raise ValueError(f"need 1 <= l <= n (l={l}, n={n})")
    ext = gabidulin(F, l + n, n, g)
    G = ext.G
    msg = G[:l, l:]
    c2_rows = G[l:, l:]
    c1 = LinearCode.from_generator(F, G[:, l:], n)
    c2 = LinearCode.from_generator(F, c2_rows, n)
    return NestedPair.from_codes(c1, c2, msg)
