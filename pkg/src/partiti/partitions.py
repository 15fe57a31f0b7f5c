"""Exact integer-partition counting plus leading-order growth estimates.

All counting functions use exact integer arithmetic (Python integers never
round or wrap), so results are exact for every ``n`` up to ``N_MAX_EXACT``.
The cap is a policy bound, not an arithmetic one: it keeps worst-case costs
predictable and is high enough that the counts still fit in 64 signed bits,
so ports with fixed-width integers can reproduce every value bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputRangeError

#: Largest n accepted by the exact counting functions.  p(400) is about
#: 6.7e18 and still fits in a signed 64-bit integer.
N_MAX_EXACT = 400

PartitionCount = int
BoundedPartition = tuple[int, ...]


def _check_count_range(n: int) -> None:
    if not 0 <= n <= N_MAX_EXACT:
        raise InputRangeError(
            f"n must be in [0, {N_MAX_EXACT}] for exact counting, got {n}"
        )


def count_partitions(n: int) -> PartitionCount:
    """Number of unordered partitions of ``n`` into positive integers.

    Dynamic programming over parts 1..n (unbounded use of each part);
    the empty partition gives a count of 1 for n = 0.
    """
    _check_count_range(n)
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for amount in range(part, n + 1):
            table[amount] += table[amount - part]
    return table[n]


def count_distinct_partitions(n: int) -> PartitionCount:
    """Number of partitions of ``n`` whose parts are pairwise different.

    0/1 knapsack over parts 1..n: the inner loop runs high-to-low so each
    part is used at most once.  By convention the count for n = 0 is 1.
    """
    _check_count_range(n)
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for amount in range(n, part - 1, -1):
            table[amount] += table[amount - part]
    return table[n]


def count_odd_partitions(n: int) -> PartitionCount:
    """Number of partitions of ``n`` using only odd parts (repeats allowed).

    Deliberately a separate dynamic program over odd parts, not an alias of
    :func:`count_distinct_partitions`, so the classical equality of the two
    counts stays an observable fact rather than a tautology.
    """
    _check_count_range(n)
    table = [1] + [0] * n
    for part in range(1, n + 1, 2):
        for amount in range(part, n + 1):
            table[amount] += table[amount - part]
    return table[n]


def enumerate_bounded_distinct_partitions(
    n: int, max_part: int = 9
) -> list[BoundedPartition]:
    """All strictly increasing part sequences with parts <= ``max_part``
    summing to ``n``, in lexicographic order of the sequence.

    An empty list is a value (no such partition), not an error.
    """
    if n < 1:
        raise InputRangeError(f"n must be >= 1, got {n}")
    if max_part < 1:
        raise InputRangeError(f"max_part must be >= 1, got {max_part}")

    out: list[BoundedPartition] = []
    prefix: list[int] = []

    def extend(remaining: int, smallest: int) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(smallest, min(max_part, remaining) + 1):
            prefix.append(part)
            extend(remaining - part, part + 1)
            prefix.pop()

    extend(n, 1)
    return out


@dataclass(frozen=True)
class AsymptoticEstimate:
    """A growth estimate carried in log space.

    ``value`` is exp(log_value) when that is representable as a double and
    +inf otherwise; ``log_value`` itself never overflows for any practical n.
    """

    log_value: float
    value: float


def _estimate(log_value: float) -> AsymptoticEstimate:
    try:
        value = math.exp(log_value)
    except OverflowError:
        value = math.inf
    return AsymptoticEstimate(log_value=log_value, value=value)


def p_asymptotic(n: int) -> AsymptoticEstimate:
    """Leading-order estimate of the unrestricted partition count:
    exp(pi*sqrt(2n/3)) / (4*n*sqrt(3)).  The ratio to the exact count
    tends to one as n grows."""
    if n < 1:
        raise InputRangeError(f"n must be >= 1, got {n}")
    log_value = math.pi * math.sqrt(2.0 * n / 3.0) - math.log(4.0 * n * math.sqrt(3.0))
    return _estimate(log_value)


def q_asymptotic(n: int) -> AsymptoticEstimate:
    """Leading-order estimate of the distinct-part partition count:
    exp(pi*sqrt(n/3)) / (4*(3*n^3)^(1/4)) -- a visibly slower growth rate
    than the unrestricted count."""
    if n < 1:
        raise InputRangeError(f"n must be >= 1, got {n}")
    log_value = math.pi * math.sqrt(n / 3.0) - math.log(4.0) - 0.25 * math.log(3.0 * n**3)
    return _estimate(log_value)
