"""Exact counting against independent brute-force oracles."""

from functools import lru_cache
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partiti import (
    N_MAX_EXACT,
    InputRangeError,
    count_distinct_partitions,
    count_odd_partitions,
    count_partitions,
    enumerate_bounded_distinct_partitions,
    p_asymptotic,
    q_asymptotic,
)

# First terms of the distinct-part counting sequence (OEIS A000009),
# recomputed below by the brute-force oracle before use.
DISTINCT_PREFIX = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15]


def brute_count_partitions(n, max_part=None):
    """Count by enumerating non-increasing part lists."""
    if max_part is None:
        max_part = n
    if n == 0:
        return 1
    return sum(
        brute_count_partitions(n - k, k) for k in range(1, min(n, max_part) + 1)
    )


def brute_count_distinct(n, min_part=1):
    """Count by enumerating strictly increasing part lists."""
    if n == 0:
        return 1
    return sum(brute_count_distinct(n - k, k + 1) for k in range(min_part, n + 1))


def brute_count_odd(n, min_part=1):
    if n == 0:
        return 1
    total = 0
    for k in range(min_part, n + 1, 2):
        total += brute_count_odd(n - k, k)
    return total


@lru_cache(maxsize=None)
def bounded_recurrence(n, k):
    """p(n) via the parts<=k recurrence, a different part-order DP than the
    implementation's coin-change loop."""
    if n == 0:
        return 1
    if k == 0:
        return 0
    k = min(k, n)
    return bounded_recurrence(n, k - 1) + bounded_recurrence(n - k, k)


def subsets_by_sum():
    table = {n: [] for n in range(46)}
    for r in range(10):
        for combo in combinations(range(1, 10), r):
            table[sum(combo)].append(combo)
    return table


class TestCountPartitions:
    def test_empty_partition(self):
        assert count_partitions(0) == 1

    def test_small_value_against_enumeration(self):
        assert count_partitions(5) == brute_count_partitions(5) == 7

    def test_against_independent_recurrence(self):
        assert count_partitions(100) == bounded_recurrence(100, 100) == 190569292

    @pytest.mark.parametrize("n", range(0, 31))
    def test_matches_naive_enumeration(self, n):
        assert count_partitions(n) == brute_count_partitions(n)

    def test_rejects_out_of_range(self):
        with pytest.raises(InputRangeError, match=str(N_MAX_EXACT)):
            count_partitions(N_MAX_EXACT + 1)
        with pytest.raises(InputRangeError):
            count_partitions(-1)


class TestCountDistinctPartitions:
    def test_point_values(self):
        assert count_distinct_partitions(5) == 3
        assert count_distinct_partitions(0) == 1

    def test_small_against_enumeration(self):
        assert count_distinct_partitions(10) == brute_count_distinct(10) == 10

    def test_prefix(self):
        assert [brute_count_distinct(n) for n in range(len(DISTINCT_PREFIX))] \
            == DISTINCT_PREFIX
        assert [count_distinct_partitions(n) for n in range(len(DISTINCT_PREFIX))] \
            == DISTINCT_PREFIX


class TestCountOddPartitions:
    def test_point_values(self):
        assert count_odd_partitions(5) == 3
        assert count_odd_partitions(0) == 1

    def test_small_against_enumeration(self):
        assert count_odd_partitions(10) == brute_count_odd(10) == 10
        assert count_odd_partitions(10) == count_distinct_partitions(10)

    def test_distinct_odd_equality_to_200(self):
        for n in range(201):
            assert count_distinct_partitions(n) == count_odd_partitions(n)


class TestEnumerateBounded:
    def test_forced_cases(self):
        assert enumerate_bounded_distinct_partitions(2, 9) == [(2,)]
        assert enumerate_bounded_distinct_partitions(45, 9) == [
            (1, 2, 3, 4, 5, 6, 7, 8, 9)
        ]

    def test_seven_against_subset_scan(self):
        expected = sorted(subsets_by_sum()[7])
        got = enumerate_bounded_distinct_partitions(7, 9)
        assert len(got) == 5
        assert got == expected

    def test_lexicographic_order_and_counts_match_subset_scan(self):
        table = subsets_by_sum()
        for n in range(1, 46):
            parts = enumerate_bounded_distinct_partitions(n, 9)
            assert parts == sorted(parts)
            assert len(parts) == len(table[n])
            assert all(sum(p) == n for p in parts)
            assert all(len(set(p)) == len(p) for p in parts)

    def test_subset_symmetry_and_total(self):
        table = subsets_by_sum()
        assert sum(len(v) for v in table.values()) == 512
        for n in range(46):
            assert len(table[n]) == len(table[45 - n])

    def test_unbounded_matches_distinct_count_for_small_n(self):
        # parts <= 9 is vacuous when n <= 9
        for n in range(1, 10):
            assert len(enumerate_bounded_distinct_partitions(n, 9)) \
                == count_distinct_partitions(n)

    @given(st.integers(1, 30), st.integers(1, 12))
    def test_enumeration_is_exhaustive(self, n, max_part):
        parts = enumerate_bounded_distinct_partitions(n, max_part)
        assert len(parts) == len(set(parts))
        for p in parts:
            assert list(p) == sorted(set(p))
            assert sum(p) == n
            assert max(p) <= max_part

    def test_empty_result_is_a_value(self):
        assert enumerate_bounded_distinct_partitions(46, 9) == []

    def test_rejects_bad_input(self):
        with pytest.raises(InputRangeError):
            enumerate_bounded_distinct_partitions(0, 9)
        with pytest.raises(InputRangeError):
            enumerate_bounded_distinct_partitions(5, 0)


class TestAsymptotics:
    def test_p_ratio_at_100(self):
        est = p_asymptotic(100)
        exact = count_partitions(100)
        assert 1.0 <= est.value / exact <= 1.1

    def test_q_ratio_at_100(self):
        est = q_asymptotic(100)
        exact = count_distinct_partitions(100)
        assert 0.95 <= est.value / exact <= 1.1

    def test_p_direct_substitution_at_1(self):
        import math

        est = p_asymptotic(1)
        expected = math.pi * math.sqrt(2 / 3) - math.log(4 * math.sqrt(3))
        assert est.log_value == pytest.approx(expected, rel=1e-15)

    def test_q_direct_substitution_at_1(self):
        import math

        est = q_asymptotic(1)
        expected = math.pi / math.sqrt(3) - math.log(4 * 3**0.25)
        assert est.log_value == pytest.approx(expected, rel=1e-15)

    def test_log_value_survives_huge_n(self):
        import math

        est = p_asymptotic(10_000)
        assert math.isfinite(est.log_value)
        # value may saturate but must stay consistent with log_value
        if math.isfinite(est.value):
            assert abs(math.exp(est.log_value) - est.value) / est.value <= 1e-12

    def test_q_log_strictly_increasing(self):
        assert q_asymptotic(400).log_value > q_asymptotic(100).log_value

    def test_log_gap_shrinks(self):
        import math

        gaps = [
            abs(p_asymptotic(n).log_value - math.log(count_partitions(n)))
            for n in (100, 200, 400)
        ]
        assert gaps[0] >= gaps[1] >= gaps[2]

    @given(st.integers(1, 2000))
    def test_exp_log_consistency(self, n):
        import math

        for est in (p_asymptotic(n), q_asymptotic(n)):
            if math.isfinite(est.value):
                assert abs(math.exp(est.log_value) - est.value) <= 1e-12 * est.value

    def test_rejects_nonpositive(self):
        with pytest.raises(InputRangeError):
            p_asymptotic(0)
        with pytest.raises(InputRangeError):
            q_asymptotic(0)
