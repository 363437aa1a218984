"""Coherent linear network coding at the transfer-matrix level.

The sink sees Y^T = A X^T + D Z^T, written here in row form as
Y = X A^T + Z D^T. Decoding picks the coset with the smallest discrepancy,
the fewest error packets that explain Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from typing import Iterator

import numpy as np

from . import linalg as la
from .codes import DEFAULT_CODEWORD_BUDGET, span_codewords
from .coset import NestedPair, coset_members, coset_offset, make_rng
from .errors import TheoremViolation
from .fields import field
from .rparams import DEFAULT_SCAN_BUDGET, rgrw
from .security import dual_pair


@dataclass(frozen=True)
class NetworkInstance:
    """Transfer matrix A (N x n over F_p) and optional per-link coding vectors."""

    p: int
    A: tuple[tuple[int, ...], ...]
    gcv_list: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_matrix(cls, p: int, A, gcv_list=None) -> "NetworkInstance":
        A = la.as_matrix(A)
        if A.size and (A.min() < 0 or A.max() >= p):
            raise ValueError("transfer matrix entries must lie in F_p")
        gl = None
        if gcv_list is not None:
            G = la.as_matrix(gcv_list, A.shape[1])
            if G.shape[1] != A.shape[1]:
                raise ValueError("coding vectors must have length n")
            gl = tuple(tuple(int(v) for v in r) for r in G)
            for row in A:
                if tuple(int(v) for v in row) not in gl:
                    raise ValueError("every row of A must be a listed coding vector")
        return cls(p, tuple(tuple(int(v) for v in r) for r in A), gl)

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.A, dtype=np.int64)

    @property
    def N(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def rank(self) -> int:
        return la.rank(field(self.p), self.matrix)

    @property
    def rho(self) -> int:
        return self.n - self.rank


@dataclass(frozen=True)
class ErrorEvent:
    """t error packets Z in F_{q^m} entering through D (N x t over F_p)."""

    D: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        D = la.as_matrix(self.D)
        Z = np.asarray(self.Z, dtype=np.int64).reshape(-1)
        if D.shape[1] != Z.size:
            raise ValueError(f"D has {D.shape[1]} columns but Z has {Z.size} packets")
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "Z", Z)

    @property
    def t(self) -> int:
        return self.Z.size

    def vector(self, F) -> np.ndarray:
        """The injected contribution Z D^T in F^N."""
        if self.t == 0:
            return np.zeros(self.D.shape[0], dtype=np.int64)
        return F.matmul(self.Z[None, :], self.D.T)[0]


def _A(A) -> np.ndarray:
    return A.matrix if isinstance(A, NetworkInstance) else la.as_matrix(A)


def transmit(F, A, X, err: ErrorEvent | None = None) -> np.ndarray:
    """Y = X A^T (+ Z D^T)."""
    A = _A(A)
    X = np.asarray(X, dtype=np.int64).reshape(-1)
    if A.shape[1] != X.size:
        raise ValueError(f"A has {A.shape[1]} columns but X has length {X.size}")
    Y = F.matmul(X[None, :], A.T)[0]
    if err is not None:
        if err.D.shape[0] != A.shape[0]:
            raise ValueError("D must have one row per sink link")
        Y = F.add(Y, err.vector(F))
    return Y


def observe(F, X, B=None, W=None, net: NetworkInstance | None = None) -> np.ndarray:
    """Packets seen on the links ``W`` of ``net``, or through an explicit B."""
    if B is None:
        if W is None or net is None or net.gcv_list is None:
            raise ValueError("give B, or link indices W with a network carrying coding vectors")
        try:
            B = np.array([net.gcv_list[w] for w in W], dtype=np.int64).reshape(len(W), -1)
        except IndexError as exc:
            raise ValueError(f"unknown link in {list(W)}") from exc
    B = la.as_matrix(B)
    X = np.asarray(X, dtype=np.int64).reshape(-1)
    if B.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return F.matmul(X[None, :], B.T)[0]


# -- discrepancy and Delta-distance -------------------------------------

def discrepancy(pair: NestedPair, s, A, Y, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """min over X in psi(S) of d_R(X A^T, Y)."""
    F = pair.field
    A = _A(A)
    images = F.matmul(coset_members(pair, s, budget), A.T)
    Y = np.asarray(Y, dtype=np.int64).reshape(1, -1)
    return int(la.rank_fq_many(F, F.sub(images, Y)).min())


def _difference_images(pair: NestedPair, s, s2, A, budget: int):
    F = pair.field
    A = _A(A)
    base = F.sub(coset_offset(pair, s2), coset_offset(pair, s))
    inner = span_codewords(F, pair.c2.G, pair.n, budget)
    return F.matmul(F.add(inner, base[None, :]), A.T)


def delta_distance(pair: NestedPair, s, s2, A, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """min d_R(X A^T, X' A^T) over X in psi(S), X' in psi(S'), S != S'."""
    if np.array_equal(np.asarray(s), np.asarray(s2)):
        raise ValueError("Delta-distance needs two distinct cosets")
    # X' - X ranges over (offset' - offset) + C2
    return int(la.rank_fq_many(pair.field, _difference_images(pair, s, s2, A, budget)).min())


def delta_min(pair: NestedPair, A, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """min d_R(X A^T, X' A^T) over X, X' in C1 with X' - X outside C2."""
    F = pair.field
    words = span_codewords(F, pair.basis, pair.n, budget)
    outside = np.arange(words.shape[0]) >= F.order**pair.c2.k
    return int(la.rank_fq_many(F, F.matmul(words[outside], _A(A).T)).min())


def split_rank(F, e, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Write e = w + w' with rank_{F_q}(w) = i and rank_{F_q}(w') = rank(e) - i.

    With E the m x N expansion of e and R its RREF row basis, E equals
    E[:, pivots] @ R; the first i rank-one terms give w.
    """
    e = np.asarray(e, dtype=np.int64).reshape(-1)
    Fp = field(F.p)
    E = F.expand(e)
    R = la.row_basis(Fp, E, e.size)
    d = R.shape[0]
    if not 0 <= i <= d:
        raise ValueError(f"split index {i} out of range [0, {d}]")
    piv = la.pivots_of(R)
    U = E[:, piv]
    W = Fp.matmul(U[:, :i], R[:i]) if i else np.zeros_like(E)
    w = F.contract(W)
    return w, F.sub(e, w)


def normality_witness(pair: NestedPair, s, s2, A, i: int, budget: int = DEFAULT_CODEWORD_BUDGET) -> np.ndarray:
    """A received word Y with Delta(S, Y) = i and Delta(S', Y) = delta - i."""
    F = pair.field
    A = _A(A)
    X_all = coset_members(pair, s, budget)
    X2_all = coset_members(pair, s2, budget)
    P = F.matmul(X_all, A.T)
    P2 = F.matmul(X2_all, A.T)
    diffs = F.sub(P2[None, :, :], P[:, None, :])
    ranks = la.rank_fq_many(F, diffs)
    a, b = np.unravel_index(int(np.argmin(ranks)), ranks.shape)
    d = int(ranks[a, b])
    if not 0 <= i <= d:
        raise ValueError(f"i={i} out of range [0, {d}]")
    w, _ = split_rank(F, diffs[a, b], i)
    Y = F.add(P[a], w)
    if discrepancy(pair, s, A, Y, budget) != i or discrepancy(pair, s2, A, Y, budget) != d - i:
        raise TheoremViolation("normality witness failed validation")
    return Y


# -- minimum-discrepancy decoding ----------------------------------------

@dataclass
class Decoded:
    """Decoder outcome: ``message`` is None when the minimum is tied."""

    message: np.ndarray | None
    discrepancy: int
    tied: list[np.ndarray] = dc_field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return self.message is None


class _Decoder:
    """Precomputed images X A^T of every codeword, grouped by coset."""

    def __init__(self, pair: NestedPair, A, budget: int):
        self.pair = pair
        F = pair.field
        self.s_idx, words = pair.all_words(budget)
        self.images = F.matmul(words, _A(A).T)
        self.n_cosets = F.order**pair.l

    def coset_discrepancies(self, Y: np.ndarray) -> np.ndarray:
        """Delta(coset, y) for each row y of Y: shape (len(Y), #cosets)."""
        F = self.pair.field
        diffs = F.sub(self.images[None, :, :], Y[:, None, :])
        ranks = la.rank_fq_many(F, diffs)
        out = np.full((self.n_cosets, Y.shape[0]), np.iinfo(np.int64).max)
        np.minimum.at(out, self.s_idx, ranks.T)
        return out.T


def md_decode(pair: NestedPair, A, Y, budget: int = DEFAULT_CODEWORD_BUDGET) -> Decoded:
    """Coset of minimum discrepancy; ties are reported, never broken."""
    dec = _Decoder(pair, A, budget)
    Y = np.asarray(Y, dtype=np.int64).reshape(1, -1)
    row = dec.coset_discrepancies(Y)[0]
    best = int(row.min())
    winners = np.flatnonzero(row == best)
    msgs = pair.messages()
    if winners.size == 1:
        return Decoded(msgs[winners[0]], best)
    return Decoded(None, best, [msgs[w] for w in winners])


def correction_capability(pair: NestedPair, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """M_{R,1}(C1, C2); the scheme handles t errors and rho erasures iff this > 2t + rho."""
    return rgrw(pair.c1, pair.c2, 1, budget)


def is_universally_correcting(pair: NestedPair, t: int, rho: int, budget: int = DEFAULT_SCAN_BUDGET) -> bool:
    return correction_capability(pair, budget) > 2 * t + rho


# -- exhaustive sweeps -----------------------------------------------------

def transfer_matrices(p: int, N: int, n: int, min_rank: int, up_to_row_space: bool | None = None) -> Iterator[np.ndarray]:
    """Every N x n matrix over F_p of rank >= min_rank.

    With ``up_to_row_space`` only one representative per row space is yielded
    (its RREF padded with zero rows), which suffices for decodability since
    an invertible row operation on A also maps error events bijectively.
    By default full enumeration is used while p^(N n) <= 512.
    """
    Fp = field(p)
    if up_to_row_space is None:
        up_to_row_space = p ** (N * n) > 512
    if up_to_row_space:
        for r in range(max(min_rank, 0), min(N, n) + 1):
            for R in la.enumerate_rref(p, n, r):
                yield np.vstack([R, np.zeros((N - r, n), dtype=np.int64)])
        return
    for A in la.all_fq_matrices(p, N, n):
        if la.rank(Fp, A) >= min_rank:
            yield A


def error_patterns(F, N: int, t: int) -> np.ndarray:
    """Distinct vectors Z D^T over all D in F_p^{N x t} and Z in F^t.

    D is enumerated up to column space (RREF bases of dimension <= t) and Z
    over every value, so the result is every achievable error contribution.
    """
    seen = {}
    for j in range(0, min(t, N) + 1):
        for Dt in la.enumerate_rref(F.p, N, j):
            for e in span_codewords(F, Dt, N, budget=DEFAULT_CODEWORD_BUDGET):
                seen.setdefault(tuple(int(v) for v in e), None)
    return np.array(list(seen), dtype=np.int64).reshape(len(seen), N)


@dataclass
class SweepSummary:
    trials: int = 0
    successes: int = 0
    ambiguous: int = 0
    failures: int = 0
    capability: int = 0
    first_witness: dict | None = None

    def to_dict(self) -> dict:
        d = {
            "trials": self.trials,
            "successes": self.successes,
            "ambiguous": self.ambiguous,
            "failures": self.failures,
            "capability": self.capability,
        }
        if self.first_witness is not None:
            d["first_witness"] = self.first_witness
        return d


def _classify(dec: _Decoder, Y: np.ndarray, truth: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per row of Y: (status, decoded coset); status 0 ok, 1 ambiguous, 2 wrong."""
    D = dec.coset_discrepancies(Y)
    best = D.min(axis=1)
    ties = (D == best[:, None]).sum(axis=1)
    choice = D.argmin(axis=1)
    status = np.where(ties > 1, 1, np.where(choice == truth, 0, 2))
    return status, np.where(ties > 1, -1, choice)


def decode_sweep(
    pair: NestedPair,
    t: int,
    rho: int,
    N: int | None = None,
    up_to_row_space: bool | None = None,
    budget: int = DEFAULT_CODEWORD_BUDGET,
    on_trial=None,
) -> SweepSummary:
    """Decode every (A with rank >= n - rho, X in C1, error with <= t packets).

    Each transmitted word X covers one (S, R) pair; each distinct error
    contribution Z D^T counts once. ``on_trial`` receives a dict per
    non-successful trial.
    """
    F = pair.field
    n = pair.n
    N = n if N is None else N
    summary = SweepSummary(capability=correction_capability(pair))
    errs = error_patterns(F, N, t)
    msgs = pair.messages()
    for A in transfer_matrices(F.p, N, n, n - rho, up_to_row_space):
        dec = _Decoder(pair, A, budget)
        # all (X, e) combinations at once
        Y = F.add(dec.images[:, None, :], errs[None, :, :]).reshape(-1, N)
        truth = np.repeat(dec.s_idx, errs.shape[0])
        status, choice = _classify(dec, Y, truth)
        summary.trials += status.size
        summary.successes += int((status == 0).sum())
        summary.ambiguous += int((status == 1).sum())
        summary.failures += int((status == 2).sum())
        bad = np.flatnonzero(status != 0)
        if bad.size and (summary.first_witness is None or on_trial is not None):
            words = pair.all_words(budget)[1]
            for k in bad:
                x_i, e_i = divmod(int(k), errs.shape[0])
                rec = {
                    "A": A.tolist(),
                    "s": msgs[truth[k]].tolist(),
                    "x": words[x_i].tolist(),
                    "error": errs[e_i].tolist(),
                    "y": Y[k].tolist(),
                    "result": "ambiguous" if status[k] == 1 else "failure",
                    "decoded": None if choice[k] < 0 else msgs[choice[k]].tolist(),
                }
                if summary.first_witness is None:
                    summary.first_witness = rec
                if on_trial is None:
                    break
                on_trial(rec)
    return summary


def simulate(pair: NestedPair, A, t: int, trials: int, seed: int, budget: int = DEFAULT_CODEWORD_BUDGET):
    """Random trials on a fixed transfer matrix; yields one dict per trial."""
    F = pair.field
    A = _A(A)
    N = A.shape[0]
    rng = make_rng(seed)
    dec = _Decoder(pair, A, budget)
    msgs = pair.messages()
    for k in range(trials):
        s_i = int(rng.integers(0, msgs.shape[0]))
        R = rng.integers(0, F.order, size=pair.c2.k)
        D = rng.integers(0, F.p, size=(N, t))
        Z = rng.integers(0, F.order, size=t)
        X = coset_offset(pair, msgs[s_i])
        if pair.c2.k:
            X = F.add(X, F.matmul(R[None, :], pair.c2.G)[0])
        Y = transmit(F, A, X, ErrorEvent(D, Z))
        status, choice = _classify(dec, Y[None, :], np.array([s_i]))
        yield {
            "trial": k,
            "s": msgs[s_i].tolist(),
            "x": X.tolist(),
            "D": D.tolist(),
            "Z": Z.tolist(),
            "y": Y.tolist(),
            "result": ["success", "ambiguous", "failure"][int(status[0])],
            "decoded": None if choice[0] < 0 else msgs[choice[0]].tolist(),
        }


def min_delta_over_rank(pair: NestedPair, r: int, N: int | None = None, up_to_row_space: bool | None = None) -> int:
    """min over A of rank exactly r of delta_min(A)."""
    Fp = field(pair.field.p)
    N = pair.n if N is None else N
    best = None
    for A in transfer_matrices(pair.field.p, N, pair.n, r, up_to_row_space):
        if la.rank(Fp, A) != r:
            continue
        d = delta_min(pair, A)
        best = d if best is None else min(best, d)
    return best


# -- network-specific equivocation ----------------------------------------

def network_equivocation(net: NetworkInstance, pair: NestedPair, mu: int) -> int:
    """theta_mu: min over mu-subsets W of listed links of H(S | B_W X^T)."""
    if net.gcv_list is None:
        raise ValueError("network has no coding-vector list")
    if not 0 <= mu <= len(net.gcv_list):
        raise ValueError(f"mu={mu} out of range")
    F = pair.field
    d2, d1 = dual_pair(pair)
    G = np.array(net.gcv_list, dtype=np.int64).reshape(len(net.gcv_list), -1)
    best = pair.l
    for W in combinations(range(G.shape[0]), mu):
        B = G[list(W)]
        h = pair.l - la.intersect_dim(F, d2.G, B) + la.intersect_dim(F, d1.G, B)
        best = min(best, h)
    return best


def complete_network(p: int, n: int, A=None) -> NetworkInstance:
    """Every nonzero vector of F_p^n is some link's coding vector."""
    gcv = [v for v in la.all_fq_matrices(p, 1, n) if v.any()]
    G = np.vstack(gcv)
    A = np.eye(n, dtype=np.int64) if A is None else A
    return NetworkInstance.from_matrix(p, A, G)
