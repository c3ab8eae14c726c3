import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from wavetile.errors import NegativeEntry, NoDiagonal, NotSquare, TooLarge
from wavetile.matching import (
    brute_force_diagonals, is_doubly_stochastic, matrix_from_json, matrix_to_json, maximum_matching,
    positive_diagonal,
)

H = F(1, 2)
MATRIXREP = [[H, H, 0], [0, H, H], [H, 0, H]]


def test_doubly_stochastic_examples():
    assert is_doubly_stochastic([[1, 0, 0], [0, 1, 0], [0, 0, 1]])[0]
    assert is_doubly_stochastic(MATRIXREP)[0]
    ok, witness = is_doubly_stochastic([[H, F(1, 3)], [H, F(2, 3)]])
    assert not ok and witness == {"kind": "row", "index": 0, "sum": F(5, 6)}


def test_input_validation():
    with pytest.raises(NotSquare):
        is_doubly_stochastic([[1, 0]])
    with pytest.raises(NegativeEntry):
        positive_diagonal([[1, -1], [0, 1]])
    with pytest.raises(TooLarge):
        brute_force_diagonals([[F(1, 9)] * 9 for _ in range(9)])


def test_positive_diagonal_examples():
    assert positive_diagonal([[0, 1], [1, 0]]).perm == (1, 0)
    assert positive_diagonal(MATRIXREP).perm == (0, 1, 2)
    with pytest.raises(NoDiagonal):
        positive_diagonal([[1, 0], [1, 0]])


def test_brute_force_examples():
    assert [d.perm for d in brute_force_diagonals([[1, 0], [0, 1]])] == [(0, 1)]
    assert len(brute_force_diagonals([[F(1, 3)] * 3] * 3)) == 6
    assert sorted(d.perm for d in brute_force_diagonals(MATRIXREP)) == [(0, 1, 2), (1, 2, 0)]


def random_doubly_stochastic(rng, n, terms):
    weights = [F(rng.randint(1, 9)) for _ in range(terms)]
    total = sum(weights)
    a = [[F(0)] * n for _ in range(n)]
    for w in weights:
        perm = list(range(n))
        rng.shuffle(perm)
        for i, j in enumerate(perm):
            a[i][j] += w / total
    return a


def test_two_hundred_random_doubly_stochastic_matrices():
    rng = random.Random(20261016)
    for _ in range(200):
        n = rng.randint(1, 7)
        a = random_doubly_stochastic(rng, n, rng.randint(1, 5))
        assert is_doubly_stochastic(a)[0]
        d = positive_diagonal(a)
        assert all(a[i][d[i]] > 0 for i in range(n))
        assert d in brute_force_diagonals(a)


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([0, 0, 1, F(1, 2)]), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_diagonal_is_lexicographically_first(a):
    found = brute_force_diagonals(a)
    if not found:
        with pytest.raises(NoDiagonal):
            positive_diagonal(a)
        return
    assert positive_diagonal(a).perm == min(d.perm for d in found)


def test_maximum_matching_size():
    adj = [[0, 1], [0], [0]]
    match = maximum_matching(adj, 2)
    assert sorted(c for c in match if c != -1) == [0, 1]


def test_matrix_json_round_trip():
    assert matrix_from_json(matrix_to_json(MATRIXREP)) == MATRIXREP
