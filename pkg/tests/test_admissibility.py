import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cube_oracle, existential_mismatches

from dormant_degree.admissibility import (
    AdmissibilityKernel,
    GuardExceeded,
    LevelParams,
    ZeroModulus,
    base_admissible,
    count_admissible,
    enumerate_admissible,
    hat,
    is_admissible,
    is_admissible_hat,
    remainder,
)


@pytest.mark.parametrize("a,m,expected", [(10, 9, 1), (7, 3, 1), (0, 5, 0), (0, 1, 0)])
def test_remainder(a, m, expected):
    assert remainder(a, m) == expected


@pytest.mark.parametrize("a,m,expected", [(5, 9, 3), (4, 9, 4), (9, 9, 0), (8, 9, 0), (13, 9, 4)])
def test_hat(a, m, expected):
    assert hat(a, m) == expected


def test_zero_modulus():
    with pytest.raises(ZeroModulus):
        remainder(3, 0)
    with pytest.raises(ZeroModulus):
        hat(3, 0)


@given(st.integers(0, 10**6), st.integers(1, 10**4).filter(lambda m: m % 2 == 1))
def test_hat_matches_absolute_value_form_for_odd_modulus(a, m):
    # (m-1)/2 - |a - m*floor(a/m) - (m-1)/2|
    half = (m - 1) // 2
    assert hat(a, m) == half - abs(a - m * (a // m) - half)


@pytest.mark.parametrize("t,M,expected", [((0, 0, 0), 1, True), ((1, 1, 0), 3, True), ((2, 0, 1), 3, False),
                                          ((1, 1, 1), 2, False), ((0, 0, 0), -1, False)])
def test_base_admissible(t, M, expected):
    assert base_admissible(t, M) is expected


@pytest.mark.parametrize("t,p,N,expected", [
    ((0, 0, 0), 3, 2, True),
    ((2, 2, 3), 3, 2, True),
    ((1, 1, 1), 3, 2, False),
    ((1, 1, 0), 5, 1, True),
])
def test_is_admissible_examples(t, p, N, expected):
    lp = LevelParams(p, N)
    assert is_admissible(t, lp) is expected
    assert is_admissible_hat(t, lp) is expected


@pytest.mark.parametrize("p,N,expected", [(3, 1, 1), (5, 1, 5), (7, 1, 14), (3, 2, 11)])
def test_enumerate_cardinality(p, N, expected):
    lp = LevelParams(p, N)
    triples = list(enumerate_admissible(lp))
    assert len(triples) == expected
    assert triples == cube_oracle(p, N)
    assert triples == sorted(triples)


@pytest.mark.parametrize("p", [3, 5, 7, 9, 11, 13])
def test_level_one_count_closed_form_odd(p):
    assert count_admissible(LevelParams(p, 1)) * 24 == p * (p * p - 1)


@pytest.mark.parametrize("p,N", [(2, 2), (2, 3), (4, 2), (5, 2), (6, 2), (3, 3), (4, 3)])
def test_enumerate_matches_cube_oracle(p, N):
    assert list(enumerate_admissible(LevelParams(p, N))) == cube_oracle(p, N)


def test_guard():
    with pytest.raises(GuardExceeded):
        list(enumerate_admissible(LevelParams(101, 2)))
    assert count_admissible(LevelParams(3, 2), guard=9) == 11


@pytest.mark.parametrize("p", [0, 1])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_empty_for_tiny_p(p, N):
    assert list(enumerate_admissible(LevelParams(p, N))) == []
    assert not is_admissible((0, 0, 0), LevelParams(p, N))


@pytest.mark.parametrize("p", range(2, 10))
@pytest.mark.parametrize("N", [1, 2, 3])
def test_formulations_agree_exhaustively(p, N):
    """Existential and folded-residue forms agree on the whole label cube [0, p^N-2]^3."""
    lp = LevelParams(p, N)
    L = lp.labels
    kernel = AdmissibilityKernel(lp)  # folded-residue form, vectorised
    assert existential_mismatches(p, N, kernel) == []
    # scalar entry points on a strided sample of the cube
    step = max(1, L // 10)
    for t in itertools.product(range(0, L, step), repeat=3):
        assert is_admissible_hat(t, lp) == is_admissible(t, lp)


def test_level_one_is_base():
    for p in range(2, 12):
        lp = LevelParams(p, 1)
        for t in itertools.product(range(p), repeat=3):
            assert is_admissible(t, lp) == is_admissible_hat(t, lp) == base_admissible(t, p - 2)


triples = st.tuples(st.integers(0, 200), st.integers(0, 200), st.integers(0, 200))
params = st.builds(LevelParams, st.integers(0, 9), st.integers(1, 3))


@settings(max_examples=300)
@given(triples, params, st.permutations(range(3)))
def test_permutation_invariance(t, lp, perm):
    s = tuple(t[i] for i in perm)
    assert is_admissible(t, lp) == is_admissible(s, lp)
    assert is_admissible_hat(t, lp) == is_admissible_hat(s, lp)
    assert base_admissible(t, lp.bound) == base_admissible(s, lp.bound)


@settings(max_examples=300)
@given(triples, params)
def test_membership_bounds_labels(t, lp):
    if is_admissible(t, lp):
        assert max(t) <= lp.bound


def test_label_sizes_exact():
    lp = LevelParams(10**4, 6)
    assert lp.modulus == 10**24
    assert lp.bound == 10**24 - 2
