"""Truncated formal power series over the integers.

These series are the independent oracle for the partition counters: the
product of (1 + x^k) factors counts distinct-part partitions coefficient by
coefficient, and the product of odd-exponent geometric factors counts
odd-part partitions.  Coefficients are exact Python integers, so arithmetic
never rounds and never wraps; the classical overflow failure mode of
fixed-width coefficient rings cannot occur here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputRangeError


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer coefficients c[0..degree_cap], inclusive."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise InputRangeError("a truncated series needs at least c[0]")

    @property
    def degree_cap(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def truncate(self, cap: int) -> "TruncatedSeries":
        if cap < 0:
            raise InputRangeError(f"degree cap must be >= 0, got {cap}")
        if cap >= self.degree_cap:
            return self
        return TruncatedSeries(self.coeffs[: cap + 1])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return multiply(self, other)


def series_from_coeffs(coeffs, cap: int | None = None) -> TruncatedSeries:
    """Build a series from any iterable, zero-padding up to ``cap``."""
    cs = list(coeffs)
    if cap is not None:
        if cap < 0:
            raise InputRangeError(f"degree cap must be >= 0, got {cap}")
        cs = cs[: cap + 1] + [0] * (cap + 1 - len(cs))
    if not cs:
        cs = [0]
    return TruncatedSeries(tuple(int(c) for c in cs))


def one(cap: int) -> TruncatedSeries:
    """The multiplicative identity truncated at ``cap``."""
    return series_from_coeffs([1], cap)


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller of the two caps."""
    cap = min(a.degree_cap, b.degree_cap)
    out = [0] * (cap + 1)
    for i, ai in enumerate(a.coeffs[: cap + 1]):
        if ai == 0:
            continue
        for j in range(cap + 1 - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(tuple(out))


def geometric_factor(m: int, cap: int) -> TruncatedSeries:
    """1 + x^m + x^(2m) + ... truncated at ``cap`` (expansion of 1/(1-x^m))."""
    if m < 1:
        raise InputRangeError(f"m must be >= 1, got {m}")
    if cap < 0:
        raise InputRangeError(f"degree cap must be >= 0, got {cap}")
    out = [0] * (cap + 1)
    for k in range(0, cap + 1, m):
        out[k] = 1
    return TruncatedSeries(tuple(out))


def distinct_parts_product(cap: int) -> TruncatedSeries:
    """Product of (1 + x^k) for k = 1..cap, truncated at ``cap``.

    Factors with k > cap only touch coefficients beyond the cap, so the
    finite prefix of the infinite product is exact up to degree ``cap``.
    The coefficient of x^n counts partitions of n into distinct parts.
    """
    if cap < 0:
        raise InputRangeError(f"degree cap must be >= 0, got {cap}")
    acc = one(cap)
    for k in range(1, cap + 1):
        factor = [0] * (cap + 1)
        factor[0] = 1
        if k <= cap:
            factor[k] = 1
        acc = multiply(acc, TruncatedSeries(tuple(factor)))
    return acc


def odd_parts_product(cap: int) -> TruncatedSeries:
    """Product of 1/(1-x^m) over odd m <= cap, truncated at ``cap``.

    The coefficient of x^n counts partitions of n into odd parts; it equals
    the distinct-part coefficient for every n, which the test suite checks
    term by term.
    """
    if cap < 0:
        raise InputRangeError(f"degree cap must be >= 0, got {cap}")
    acc = one(cap)
    for m in range(1, cap + 1, 2):
        acc = multiply(acc, geometric_factor(m, cap))
    return acc
