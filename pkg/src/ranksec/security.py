"""Universal security of nested coset coding against an F_q-linear wiretapper.

Entropies are measured in units of log_{q^m}. The closed forms go through the
RDIP/RGRW of the dual pair (C2⊥, C1⊥); the ``*_oracle`` / ``empirical_*``
routines instead build the exact joint distribution of the message and the
observation by enumerating every (S, R) pair.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .codes import DEFAULT_CODEWORD_BUDGET, dual
from .coset import NestedPair, strong_pair
from .errors import BudgetExceeded, TheoremViolation
from .rparams import DEFAULT_SCAN_BUDGET, rdip, rdip_profile, rgrw, rgrw_profile

TOL = 1e-9


def dual_pair(pair: NestedPair):
    return dual(pair.c2), dual(pair.c1)


def universal_equivocation(pair: NestedPair, mu: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """Theta_mu = l - K_{R,mu}(C2⊥, C1⊥)."""
    d2, d1 = dual_pair(pair)
    return pair.l - rdip(d2, d1, mu, budget)


def max_leakage(pair: NestedPair, mu: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """Worst-case I(S; BX^T) over mu observed links: K_{R,mu}(C2⊥, C1⊥)."""
    d2, d1 = dual_pair(pair)
    return rdip(d2, d1, mu, budget)


def leakage_threshold(pair: NestedPair, j: int, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """Fewest observed links that can leak j symbols: M_{R,j}(C2⊥, C1⊥)."""
    if not 1 <= j <= pair.l:
        raise ValueError(f"j={j} out of range [1, {pair.l}]")
    d2, d1 = dual_pair(pair)
    return rgrw(d2, d1, j, budget)


def subspace_formula_entropy(pair: NestedPair, V) -> int:
    """H(S | BX^T) = l - dim(C2⊥ ∩ V_B) + dim(C1⊥ ∩ V_B), uniform S."""
    F = pair.field
    d2, d1 = dual_pair(pair)
    return pair.l - la.intersect_dim(F, d2.G, V) + la.intersect_dim(F, d1.G, V)


# -- exact entropies from enumerated joint distributions ---------------------

def _entropy(labels: np.ndarray, weights: np.ndarray, base: int) -> float:
    """Entropy of the distribution of ``labels`` (rows) under ``weights``."""
    if labels.ndim == 1:
        labels = labels[:, None]
    if labels.shape[1] == 0:
        return 0.0
    _, inv = np.unique(labels, axis=0, return_inverse=True)
    probs = np.bincount(inv.reshape(-1), weights=weights)
    probs = probs[probs > 0]
    return float(-(probs * np.log(probs)).sum() / math.log(base))


def observe_all(pair: NestedPair, X: np.ndarray, B) -> np.ndarray:
    """Observations X B^T for every row of X."""
    B = la.as_matrix(B, pair.n)
    if B.shape[0] == 0:
        return np.zeros((X.shape[0], 0), dtype=np.int64)
    return pair.field.matmul(X, B.T)


def _joint(pair: NestedPair, dist, budget: int):
    s_idx, X = pair.all_words(budget)
    Q = pair.field.order
    w_s = uniform_distribution(pair) if dist is None else normalize_distribution(pair, dist)
    weights = w_s[s_idx] / Q**pair.c2.k
    return s_idx, X, weights


def conditional_entropy(pair: NestedPair, B, dist=None, budget: int = DEFAULT_CODEWORD_BUDGET) -> float:
    """H(S | BX^T) by full enumeration."""
    s_idx, X, w = _joint(pair, dist, budget)
    obs = observe_all(pair, X, B)
    base = pair.field.order
    joint = np.hstack([s_idx[:, None], obs])
    return _entropy(joint, w, base) - _entropy(obs, w, base)


def equivocation_oracle(
    pair: NestedPair,
    mu: int,
    budget: int = DEFAULT_SCAN_BUDGET,
    codeword_budget: int = DEFAULT_CODEWORD_BUDGET,
) -> float:
    """min over rational V of dimension <= mu of the enumerated H(S | observation).

    Every B in F_q^{mu x n} has a row space of dimension <= mu and conversely,
    and the observation only depends on that row space up to a bijection.
    """
    if not 0 <= mu <= pair.n:
        raise ValueError(f"mu={mu} out of range [0, {pair.n}]")
    cost = la.gamma_count(pair.field.p, pair.n, mu)
    if cost > budget:
        raise BudgetExceeded(f"{cost} subspaces exceed budget {budget}")
    s_idx, X, w = _joint(pair, None, codeword_budget)
    base = pair.field.order
    best = math.inf
    for i in range(mu + 1):
        for V in la.enumerate_gamma(pair.field.p, pair.n, i):
            obs = observe_all(pair, X, V.matrix)
            h = _entropy(np.hstack([s_idx[:, None], obs]), w, base) - _entropy(obs, w, base)
            best = min(best, h)
    if abs(best - round(best)) > TOL:
        raise TheoremViolation(f"uniform-message equivocation {best} is not an integer")
    return float(round(best))


# -- message distributions -----------------------------------------------

def uniform_distribution(pair: NestedPair) -> np.ndarray:
    size = pair.field.order**pair.l
    return np.full(size, 1.0 / size)


def normalize_distribution(pair: NestedPair, dist) -> np.ndarray:
    """Validate a distribution over messages (index order) and return floats.

    Entries may be numbers, Fractions, or ``"a/b"`` strings; they must sum to
    exactly 1 when read as rationals.
    """
    size = pair.field.order**pair.l
    vals = [Fraction(str(v)) if not isinstance(v, Fraction) else v for v in dist]
    if len(vals) != size:
        raise ValueError(f"distribution needs {size} entries, got {len(vals)}")
    if any(v < 0 for v in vals):
        raise ValueError("negative probability")
    if sum(vals) != 1:
        raise ValueError(f"probabilities sum to {sum(vals)}, not 1")
    return np.array([float(v) for v in vals])


def zero_heavy_distribution(pair: NestedPair, mass=Fraction(1, 2)) -> list[Fraction]:
    """P(S = 0) = mass, remaining mass uniform over the nonzero messages."""
    size = pair.field.order**pair.l
    mass = Fraction(mass)
    rest = (1 - mass) / (size - 1)
    return [mass] + [rest] * (size - 1)


def empirical_mi(
    pair: NestedPair,
    Z: Iterable[int],
    B,
    dist=None,
    budget: int = DEFAULT_CODEWORD_BUDGET,
) -> float:
    """Exact I(S_Z ; BX^T) with S drawn from ``dist`` (uniform by default).

    ``Z`` holds 0-based message coordinates.
    """
    Z = sorted(set(int(z) for z in Z))
    if any(not 0 <= z < pair.l for z in Z):
        raise ValueError(f"message coordinates must lie in [0, {pair.l})")
    s_idx, X, w = _joint(pair, dist, budget)
    msgs = pair.messages()[s_idx][:, Z]
    obs = observe_all(pair, X, B)
    base = pair.field.order
    h_s = _entropy(msgs, w, base)
    h_o = _entropy(obs, w, base)
    h_so = _entropy(np.hstack([msgs, obs]), w, base)
    mi = h_s + h_o - h_so
    return 0.0 if abs(mi) < TOL else mi


# -- strong security ------------------------------------------------------

def strong_security_order(pair: NestedPair, budget: int = DEFAULT_SCAN_BUDGET) -> int:
    """Omega = min_i M_{R,1}(D_{2,i}⊥, D_{1,i}⊥) - 1."""
    if pair.l < 1:
        raise ValueError("strong security needs l >= 1")
    vals = []
    for i in range(pair.l):
        d1, d2 = strong_pair(pair, i)
        vals.append(rgrw(dual(d2), dual(d1), 1, budget))
    return min(vals) - 1


@dataclass
class StrongSecurityCheck:
    omega: int
    holds: bool
    checked: int
    witness: dict | None
    capped: bool


def verify_strong_security(pair: NestedPair, omega: int, budget: int = DEFAULT_CODEWORD_BUDGET) -> StrongSecurityCheck:
    """Exhaustively confirm that Omega is exact.

    Zero leakage is checked for every nonempty Z and every observation row
    space of dimension <= omega - |Z| + 1; then a leaking (Z, B) is searched
    for at dimension omega - |Z| + 2. Row spaces larger than n do not exist,
    so when no Z admits such a search ``capped`` is set.
    """
    n, p = pair.n, pair.field.p
    checked = 0
    holds = True
    for size in range(1, pair.l + 1):
        for Z in combinations(range(pair.l), size):
            top = omega - size + 1
            for i in range(0, min(top, n) + 1):
                for V in la.enumerate_gamma(p, n, i):
                    checked += 1
                    if empirical_mi(pair, Z, V.matrix, budget=budget) > TOL:
                        holds = False
    witness = None
    searched = False
    for size in range(1, pair.l + 1):
        for Z in combinations(range(pair.l), size):
            dim = omega - size + 2
            if not 0 <= dim <= n:
                continue
            searched = True
            for V in la.enumerate_gamma(p, n, dim):
                mi = empirical_mi(pair, Z, V.matrix, budget=budget)
                if mi > TOL:
                    witness = {"Z": list(Z), "B": V.to_json(), "mi": mi}
                    break
            if witness:
                break
        if witness:
            break
    return StrongSecurityCheck(omega, holds, checked, witness, capped=not searched)


# -- report -----------------------------------------------------------------

@dataclass
class SecurityReport:
    theta: list[int]
    leakage_thresholds: list[int]
    max_leakage: list[int]
    omega: int | None = None
    omega_capped: bool | None = None
    extras: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        l = self.theta[0] if self.theta else 0
        for t, k in zip(self.theta, self.max_leakage):
            if t + k != l:
                raise TheoremViolation("theta + max leakage must equal l")
        if any(b > a for a, b in zip(self.theta, self.theta[1:])):
            raise TheoremViolation("theta must be nonincreasing")

    def to_dict(self) -> dict:
        d = asdict(self)
        extras = d.pop("extras")
        if self.omega is None:
            d.pop("omega")
            d.pop("omega_capped")
        d.update(extras)
        return d


def security_report(
    pair: NestedPair,
    mu_max: int | None = None,
    with_omega: bool = False,
    budget: int = DEFAULT_SCAN_BUDGET,
) -> SecurityReport:
    d2, d1 = dual_pair(pair)
    mu_max = pair.n if mu_max is None else mu_max
    if not 0 <= mu_max <= pair.n:
        raise ValueError(f"mu_max={mu_max} out of range [0, {pair.n}]")
    K = rdip_profile(d2, d1, budget).values
    M = rgrw_profile(d2, d1, budget).values
    report = SecurityReport(
        theta=[pair.l - K[mu] for mu in range(mu_max + 1)],
        leakage_thresholds=list(M[1:]),
        max_leakage=[K[mu] for mu in range(mu_max + 1)],
    )
    if with_omega:
        omega = strong_security_order(pair, budget)
        report.omega = omega
        report.omega_capped = omega >= pair.n
    return report


def low_observation_subspaces(pair: NestedPair, below: int) -> Sequence:
    """All rational row spaces of dimension < ``below``."""
    out = []
    for i in range(0, min(below - 1, pair.n) + 1):
        out.extend(la.enumerate_gamma(pair.field.p, pair.n, i))
    return out
