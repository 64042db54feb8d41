from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from srs_sdof.formulas import (
    corollary2,
    optimality_gap,
    theorem1,
    upper_bound_region,
    upper_bound_sum,
    zf_bound,
)

ALPHAS = [Fraction(k, 10) for k in range(11)]
GRID = [(M, N, a) for M in range(1, 9) for N in range(1, 5) for a in ALPHAS]


@pytest.mark.parametrize(
    "args, want",
    [((2, 2, Fraction(7, 10)), 2), ((3, 2, Fraction(1, 2)), Fraction(5, 2)), ((6, 2, Fraction(1, 2)), 3)],
)
def test_theorem1_examples(args, want):
    assert theorem1(*args) == want


@pytest.mark.parametrize(
    "args, want",
    [((2, 2, Fraction(9, 10)), 0), ((3, 2, Fraction(1, 2)), 1), ((6, 2, 1), 4)],
)
def test_zf_examples(args, want):
    assert zf_bound(*args) == want


def test_zf_meets_srs_only_with_perfect_csit_and_many_antennas():
    assert zf_bound(6, 2, 1) == theorem1(6, 2, 1) == 4


def test_corollary2_examples():
    assert corollary2(3, 2, Fraction(1, 2), 6) == 4
    assert corollary2(2, 2, 1, 4) == 4 == theorem1(4, 2, 1)
    for K in range(1, 7):
        assert corollary2(K, 2, 0, 2 * K + 3) == 2


def test_corollary2_validity_region():
    with pytest.raises(ValueError):
        corollary2(3, 2, 0.5, 5)


def test_region_examples():
    c = upper_bound_region(4, 2, Fraction(1, 2))
    assert [(x.coeff_d1, x.coeff_d2, x.bound) for x in c] == [(1, 0, 2), (0, 1, 2), (1, 1, 3)]
    assert upper_bound_region(1, 2, Fraction(1, 3))[2].bound == 1
    assert upper_bound_region(6, 2, 1)[2].bound == 4
    assert c[2].holds(Fraction(3, 2), Fraction(3, 2)) and not c[2].holds(2, 2)


def test_upper_bound_sum_examples():
    assert upper_bound_sum(3, 2, Fraction(1, 2)) == Fraction(5, 2)
    assert upper_bound_sum(2, 2, Fraction(3, 7)) == 2
    assert upper_bound_sum(5, 2, Fraction(1, 4)) == Fraction(5, 2)


def _region_max_sum(M, N, a):
    """Largest d1 + d2 over the region, by direct evaluation of its corners."""
    c = upper_bound_region(M, N, a)
    single, total = c[0].bound, c[2].bound
    return min(2 * single, total)


def test_exhaustive_optimality():
    for M, N, a in GRID:
        assert optimality_gap(M, N, a) == 0
        assert upper_bound_sum(M, N, a) == upper_bound_region(M, N, a)[2].bound
        assert theorem1(M, N, a) == _region_max_sum(M, N, a)


def test_float_inputs_match_exact():
    for M, N, a in GRID:
        for fn in (theorem1, zf_bound, upper_bound_sum):
            assert abs(fn(M, N, float(a)) - float(fn(M, N, a))) <= 1e-12


def test_continuity_at_boundaries():
    for N in range(1, 5):
        for a in ALPHAS:
            # both branch expressions agree at M = N and M = 2N
            assert N + a * (N - N) == N
            assert N + a * (2 * N - N) == N * (1 + a)
            assert theorem1(N, N, a) == N
            assert theorem1(2 * N, N, a) == N * (1 + a)


def test_dominates_zf_and_equality_set():
    equal = set()
    for M, N, a in GRID:
        t, z = theorem1(M, N, a), zf_bound(M, N, a)
        assert t >= z
        if t == z:
            equal.add((M, N, a))
    assert equal == {(M, N, a) for M, N, a in GRID if a == 1 and M >= 2 * N}


def test_monotone_in_alpha_and_M():
    for N in range(1, 5):
        for M in range(1, 9):
            vals = [theorem1(M, N, a) for a in ALPHAS]
            assert vals == sorted(vals)
        for a in ALPHAS:
            vals = [theorem1(M, N, a) for M in range(1, 9)]
            assert vals == sorted(vals)


def test_corollary2_alpha_increment_grows_with_k():
    steps = [Fraction(k, 4) for k in range(5)]
    incs = []
    for K in range(1, 7):
        vals = [corollary2(K, 2, a, 2 * K) for a in steps]
        assert vals == sorted(vals)
        incs.append(vals[1] - vals[0])
    assert all(b > a for a, b in zip(incs, incs[1:]))


@given(st.integers(1, 40), st.integers(1, 20), st.fractions(0, 1))
def test_gap_zero_property(M, N, a):
    assert optimality_gap(M, N, a) == 0


@pytest.mark.parametrize("fn", [theorem1, zf_bound, upper_bound_sum, upper_bound_region])
def test_domain_errors(fn):
    with pytest.raises(ValueError):
        fn(0, 2, 0.5)
    with pytest.raises(ValueError):
        fn(2, 2, 1.5)
    with pytest.raises(ValueError):
        fn(2.5, 2, 0.5)
