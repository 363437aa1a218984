from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from helpers import code_set, to_slow
from ranksec import linalg as la
from ranksec.codes import (
    LinearCode,
    codewords,
    complement,
    dual,
    gabidulin,
    is_mrd,
    min_rank_distance,
    puncture,
    shorten,
    singleton_rank_bound,
    subfield_subcode,
)
from ranksec.errors import BudgetExceeded
from ranksec.fields import field


def test_canonical_generator_equality(F8):
    a = F8.alpha
    C = LinearCode.from_generator(F8, [[1, a, 0], [0, 1, 1]])
    D = LinearCode.from_generator(F8, [[1, F8.add(a, 1), 1], [0, a, a]])
    assert C == D and C.k == 2
    with pytest.raises(ValueError):
        LinearCode.from_generator(F8, [[8, 0, 0]])


def test_gabidulin_examples(F8, slow8):
    a = F8.alpha
    C = gabidulin(F8, 3, 2)
    rows = [[1, a, F8.pow(a, 2)], [1, F8.pow(a, 2), F8.pow(a, 4)]]
    assert C == LinearCode.from_generator(F8, rows)
    assert min_rank_distance(C) == 2 == oracles.min_rank_distance(slow8, code_set(F8, C))
    C1 = gabidulin(F8, 3, 1)
    assert min_rank_distance(C1) == 3 == oracles.min_rank_distance(slow8, code_set(F8, C1))
    assert gabidulin(F8, 3, 3) == LinearCode.full(F8, 3)
    with pytest.raises(ValueError):
        gabidulin(F8, 4, 2)
    with pytest.raises(ValueError):
        gabidulin(F8, 3, 2, g=[1, 1, a])


def test_min_rank_distance_examples(F8):
    assert min_rank_distance(LinearCode.from_generator(F8, [[1, 1, 1]])) == 1
    assert min_rank_distance(LinearCode.full(F8, 3)) == 1
    with pytest.raises(ValueError):
        min_rank_distance(LinearCode.zero(F8, 3))


def test_mrd_examples(F8):
    for k in (1, 2, 3):
        assert is_mrd(gabidulin(F8, 3, k))
    assert not is_mrd(LinearCode.from_generator(F8, [[1, 1, 0]]))
    assert is_mrd(LinearCode.full(F8, 3))
    assert singleton_rank_bound(field(2, 2), 3, 1) == Fraction(7, 3)


def test_dual_examples(F4, F8, slow4):
    assert dual(LinearCode.full(F8, 3)).k == 0
    C = LinearCode.from_generator(F4, [[1, F4.alpha]])
    assert dual(C) == LinearCode.from_generator(F4, [[F4.alpha, 1]])
    assert code_set(F4, dual(C)) == oracles.dual_set(slow4, code_set(F4, C), 2)


def test_dual_of_gabidulin_is_gabidulin_dimension(F8):
    for k in range(4):
        D = dual(gabidulin(F8, 3, k))
        assert D.k == 3 - k
        if D.k:
            assert is_mrd(D)


def test_shorten_example():
    F2 = field(2)
    C = LinearCode.from_generator(F2, [[1, 1, 0], [1, 0, 1]])
    assert set(map(tuple, codewords(C))) == {(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)}
    S = shorten(C, [1, 2])
    assert S == LinearCode.from_generator(F2, [[1, 1]])
    assert puncture(C, range(3)) == C


def test_shorten_matches_definition(F4, slow4):
    rng = np.random.default_rng(4)
    for _ in range(20):
        C = LinearCode.from_generator(F4, rng.integers(0, 4, size=(2, 3)))
        J = sorted(rng.choice(3, size=2, replace=False))
        rest = [j for j in range(3) if j not in J]
        ref = {tuple(w[j] for j in J) for w in code_set(F4, C) if all(w[r] == slow4.zero for r in rest)}
        assert code_set(F4, shorten(C, J)) == ref
        assert puncture(C, J).contains_code(shorten(C, J))
        assert code_set(F4, puncture(C, J)) == {tuple(w[j] for j in J) for w in code_set(F4, C)}


def test_subfield_subcode_examples(F8):
    a = F8.alpha
    assert subfield_subcode(LinearCode.from_generator(F8, [[1, a, 0]])).shape[0] == 0
    assert subfield_subcode(LinearCode.full(F8, 3)).shape[0] == 3
    C = LinearCode.from_generator(F8, [[1, 0, 1], [0, 1, 1]])
    assert subfield_subcode(C).shape[0] == 2


def test_subfield_subcode_counts(F4):
    rng = np.random.default_rng(8)
    for _ in range(20):
        C = LinearCode.from_generator(F4, rng.integers(0, 4, size=(2, 3)))
        base = [w for w in codewords(C) if (w < 2).all()]
        assert len(base) == 2 ** subfield_subcode(C).shape[0]


def test_complement_completes_basis(F8):
    C1, C2 = gabidulin(F8, 3, 2), gabidulin(F8, 3, 1)
    S = complement(C1, C2)
    assert S.shape == (1, 3)
    assert la.rank(F8, np.vstack([S, C2.G])) == 2
    with pytest.raises(ValueError):
        complement(C2, C1)


def test_codeword_budget(F8):
    with pytest.raises(BudgetExceeded):
        codewords(LinearCode.full(F8, 3), budget=100)


def test_encode_and_membership(F8):
    C = gabidulin(F8, 3, 2)
    x = C.encode([3, 5])
    assert x in C
    assert [1, 0, 0] not in C


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(0, 3))
def test_dual_is_involution(seed, k):
    F = field(2, 2)
    rng = np.random.default_rng(seed)
    C = LinearCode.from_generator(F, rng.integers(0, 4, size=(k, 3)), 3)
    assert dual(dual(C)) == C
    assert dual(C).k == 3 - C.k
    if C.k and dual(C).k:
        assert not F.matmul(C.G, dual(C).G.T).any()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_min_distance_matches_oracle(seed):
    F = field(2, 2)
    S = oracles.SlowField(2, 2, F.params.modulus)
    rng = np.random.default_rng(seed)
    C = LinearCode.from_generator(F, rng.integers(0, 4, size=(2, 3)))
    if C.k:
        assert min_rank_distance(C) == oracles.min_rank_distance(S, {to_slow(F, w) for w in codewords(C)})
