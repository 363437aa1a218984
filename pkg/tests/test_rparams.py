from fractions import Fraction

import numpy as np
import pytest

import oracles
from helpers import code_set, nested_universe
from ranksec import rparams as rp
from ranksec.codes import LinearCode, dual, gabidulin, is_mrd, min_rank_distance
from ranksec.errors import BudgetExceeded, NotNestedError
from ranksec.fields import field


@pytest.fixture(scope="module")
def f4_pair(F4):
    return LinearCode.full(F4, 2), LinearCode.from_generator(F4, [[1, F4.alpha]])


def test_f4_pair_profiles(F4, slow4, f4_pair):
    C1, C2 = f4_pair
    want = oracles.rdip_profile(slow4, code_set(F4, C1), code_set(F4, C2), 2)
    assert want == [0, 1, 1]
    assert list(rp.rdip_profile(C1, C2).values) == want
    assert rp.rdip(C1, C2, 1) == 1
    assert list(rp.rgrw_profile(C1, C2).values) == [0, 1]


def test_f4_dual_pair_profiles(F4, slow4, f4_pair):
    C1, C2 = f4_pair
    D2, D1 = dual(C2), dual(C1)
    want = oracles.rdip_profile(slow4, code_set(F4, D2), code_set(F4, D1), 2)
    assert want == [0, 0, 1]
    assert list(rp.rdip_profile(D2, D1).values) == want
    assert rp.rgrw(D2, D1, 1) == 2


def test_gabidulin_profiles(F8, slow8):
    G2, G1, Z = gabidulin(F8, 3, 2), gabidulin(F8, 3, 1), LinearCode.zero(F8, 3)
    cases = [(G2, Z, [0, 2, 3]), (G2, G1, [0, 2]), (G1, Z, [0, 3])]
    for C1, C2, M in cases:
        K = oracles.rdip_profile(slow8, code_set(F8, C1), code_set(F8, C2), 3)
        assert list(rp.rdip_profile(C1, C2).values) == K
        assert list(rp.rgrw_profile(C1, C2).values) == M
    assert rp.rgrw_first_direct(G2, G1) == 2


def test_endpoints(F8):
    C1, C2 = gabidulin(F8, 3, 2), LinearCode.zero(F8, 3)
    assert rp.rdip(C1, C2, 0) == 0
    assert rp.rdip(C1, C2, 3) == 2
    assert rp.rgrw(C1, C2, 0) == 0
    with pytest.raises(ValueError):
        rp.rgrw(C1, C2, 3)
    with pytest.raises(ValueError):
        rp.rdip(C1, C2, 4)


def test_nesting_is_strict(F8):
    C = gabidulin(F8, 3, 2)
    with pytest.raises(NotNestedError):
        rp.rdip_profile(C, C)
    with pytest.raises(NotNestedError):
        rp.rdip_profile(gabidulin(F8, 3, 1), C)
    with pytest.raises(NotNestedError):
        rp.rdip_profile(C, LinearCode.from_generator(F8, [[1, 0, 0]]))


def test_scan_budget(F8):
    with pytest.raises(BudgetExceeded):
        rp.rdip_profile(gabidulin(F8, 3, 2), LinearCode.zero(F8, 3), budget=10)


def test_singleton_examples(F8):
    G2, G1, Z = gabidulin(F8, 3, 2), gabidulin(F8, 3, 1), LinearCode.zero(F8, 3)
    assert rp.singleton_bound(G2, Z, 1) == 2
    assert rp.singleton_bound(G2, G1, 1) == 2
    assert rp.singleton_bound(LinearCode.full(F8, 3), Z, 3) == 3
    F4 = field(2, 2)
    assert rp.singleton_bound(gabidulin(F4, 2, 1), LinearCode.zero(F4, 2), 1) == 2
    # m < n - dim C2 gives a fractional scaling
    C = LinearCode.from_generator(F4, [[1, 0, 0]])
    assert rp.singleton_bound(C, LinearCode.zero(F4, 3), 1) == Fraction(7, 3)
    assert rp.meets_singleton(G2, Z)


def test_monotone_in_c2(F8):
    C1, C2 = gabidulin(F8, 3, 2), gabidulin(F8, 3, 1)
    S = LinearCode.from_generator(F8, rp.complement(C1, C2))
    Z = LinearCode.zero(F8, 3)
    for i in range(1, 2):
        assert rp.rgrw(C1, C2, i) <= rp.rgrw(S, Z, i)


def test_equality_with_nonzero_c2_exists(F4):
    # full space over a proper subcode: the bound is met although C2 != {0}
    C1 = LinearCode.full(F4, 2)
    C2 = LinearCode.from_generator(F4, [[1, 1]])
    assert rp.meets_singleton(C1, C2)


def test_bound_fails_for_higher_weights_when_m_is_small(slow4):
    # M_{R,2} is the dimension of the Galois closure of C, here the whole
    # space, while the scaled bound gives (2/3)(3 - 2) + 2 = 8/3
    F = field(2, 2)
    C = LinearCode.from_generator(F, [[1, 0, 0], [0, 1, F.alpha]])
    Z = LinearCode.zero(F, 3)
    K = oracles.rdip_profile(slow4, code_set(F, C), code_set(F, Z), 3)
    assert K == [0, 1, 1, 2]
    assert list(rp.rgrw_profile(C, Z).values) == [0, 1, 3]
    assert rp.singleton_bound(C, Z, 2) == Fraction(8, 3)
    assert rp.rgrw(C, Z, 2) > rp.singleton_bound(C, Z, 2)


def test_structure_on_small_universe():
    for C1, C2 in nested_universe(ms=(1, 2), ns=(1, 2, 3)):
        K = rp.rdip_profile(C1, C2).values
        M = rp.rgrw_profile(C1, C2).values
        l = C1.k - C2.k
        assert K[0] == 0 and K[-1] == l
        assert all(0 <= b - a <= 1 for a, b in zip(K, K[1:]))
        assert all(b > a for a, b in zip(M, M[1:]))
        assert [rp.rgrw_scan(C1, C2, i) for i in range(l + 1)] == list(M)
        assert rp.rgrw_first_direct(C1, C2) == M[1]
        assert M[1] <= rp.singleton_bound(C1, C2, 1)
        if C1.field.m >= C1.n - C2.k:
            assert all(M[i] <= rp.singleton_bound(C1, C2, i) for i in range(1, l + 1))
        if C2.k == 0:
            assert M[1] == min_rank_distance(C1)
            assert rp.meets_singleton(C1, C2) == is_mrd(C1)


def test_profiles_match_oracle_on_sample(slow8):
    F = field(2, 3)
    pairs = [pc for pc in nested_universe(ms=(3,), ns=(3,))]
    rng = np.random.default_rng(11)
    for k in rng.choice(len(pairs), size=25, replace=False):
        C1, C2 = pairs[k]
        want = oracles.rdip_profile(slow8, code_set(F, C1), code_set(F, C2), 3)
        assert list(rp.rdip_profile(C1, C2).values) == want
