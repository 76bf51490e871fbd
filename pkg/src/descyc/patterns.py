"""Permutations and n-cycles avoiding monotone consecutive patterns.

Avoiding an increasing run of length k means no k-1 adjacent ascents,
i.e. every gap in the descent composition is smaller than k.  The two
closed-form cycle counts for k = 3 combine the avoider sequences gamma
(no double ascent) and gamma-star (no double descent, bounded by ascents
on both ends) through signed divisor sums split by residue mod 3.
"""

from __future__ import annotations

import math
from typing import Iterator

from .core import (
    CapacityError,
    Count,
    DomainError,
    divisors,
    exact_div,
    mobius,
)
from .cyclic import beta_cyc_mask
from .linear import beta_mask

# Bounded-part composition scans stay comfortably under a second up to here.
CYCLE_SCAN_CAP = 24


def chi(r: int, k: int = 3) -> int:
    """+1 on residue 1, -1 on residue 0 (mod k), else 0."""
    if r % k == 1 % k:
        return 1
    if r % k == 0:
        return -1
    return 0


def chi_star(r: int) -> int:
    """+1 on residue 2, -1 on residue 0 (mod 3), else 0."""
    if r % 3 == 2:
        return 1
    if r % 3 == 0:
        return -1
    return 0


_gamma_values: list[Count] = [1]
_gamma_star_values: list[Count] = [1, 0]


def gamma(n: int) -> Count:
    """Permutations of n with no two adjacent ascents."""
    if n < 0:
        raise DomainError(f"gamma needs n >= 0, got {n}")
    while len(_gamma_values) <= n:
        m = len(_gamma_values)
        total = 0
        for r in range(1, m + 1):
            c = chi(r)
            if c:
                total += c * math.comb(m, r) * _gamma_values[m - r]
        _gamma_values.append(total)
    return _gamma_values[n]


def gamma_star(n: int) -> Count:
    """Permutations of n with no two adjacent descents that start and end
    with an ascent; 1 and 0 for n = 0 and 1 by convention."""
    if n < 0:
        raise DomainError(f"gamma* needs n >= 0, got {n}")
    while len(_gamma_star_values) <= n:
        m = len(_gamma_star_values)
        total = 0
        for r in range(2, m + 1):
            c = chi_star(r)
            if c:
                sign = -1 if r & 1 else 1
                total += sign * c * math.comb(m, r) * _gamma_star_values[m - r]
        _gamma_star_values.append(total)
    return _gamma_star_values[n]


def theta(n: int) -> int:
    """1 on powers of three, -2 on twice powers of three, else 0."""
    if n % 3 == 0:
        m = n
        while m % 3 == 0:
            m //= 3
        if m == 1:
            return 1
        if m == 2:
            return -2
    return 0


def theta_tilde(n: int) -> int:
    """1 on powers of three (exponent >= 1), else 0."""
    if n % 3 == 0:
        m = n
        while m % 3 == 0:
            m //= 3
        if m == 1:
            return 1
    return 0


def theta_divisor_sum(n: int) -> int:
    """Direct evaluation of the signed divisor sum theta() closes."""
    return sum(
        mobius(d) * (-1) ** (n // d)
        for d in divisors(n)
        if d % 3 == 0
    )


def theta_tilde_divisor_sum(n: int) -> int:
    """Direct evaluation of the divisor sum theta_tilde() closes."""
    sign = -1 if n & 1 else 1
    return sign * sum(mobius(d) for d in divisors(n) if d % 3 == 0)


def cycles_avoiding_incr3(n: int) -> Count:
    """n-cycles with no two adjacent ascents."""
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    total = theta(n)
    for d in divisors(n):
        mu = mobius(d)
        if not mu:
            continue
        if d % 3 == 1:
            total += mu * gamma(n // d)
        elif d % 3 == 2:
            sign = -1 if (n // d) & 1 else 1
            total += mu * sign * gamma_star(n // d)
    return exact_div(total, n, "cycles_avoiding_incr3")


def cycles_avoiding_decr3(n: int) -> Count:
    """n-cycles with no two adjacent descents."""
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    total = theta_tilde(n)
    outer_sign = -1 if n & 1 else 1
    for d in divisors(n):
        mu = mobius(d)
        if not mu:
            continue
        if d % 3 == 1:
            sign = -1 if ((d - 1) * (n // d)) & 1 else 1
            total += mu * sign * gamma(n // d)
        elif d % 3 == 2:
            total += outer_sign * mu * gamma_star(n // d)
    return exact_div(total, n, "cycles_avoiding_decr3")


def bounded_composition_masks(n: int, max_part: int) -> Iterator[int]:
    """Descent-set masks whose gap compositions have all parts <= max_part.

    Ascending mask order is not guaranteed; the order is the depth-first
    composition order, which is deterministic.
    """
    if max_part < 1:
        return
    stack = [(0, 0)]
    while stack:
        acc, mask = stack.pop()
        remaining = n - acc
        if remaining <= max_part:
            yield mask
        top = min(max_part, remaining - 1)
        for part in range(top, 0, -1):
            stack.append((acc + part, mask | 1 << (acc + part - 1)))


def spaced_composition_masks(n: int, min_part: int = 2) -> Iterator[int]:
    """Descent-set masks whose gap compositions have all parts >= min_part."""
    stack = [(0, 0)]
    while stack:
        acc, mask = stack.pop()
        remaining = n - acc
        if remaining >= min_part:
            yield mask
        for part in range(remaining - min_part, min_part - 1, -1):
            stack.append((acc + part, mask | 1 << (acc + part - 1)))


def monotone_avoiders(n: int, k: int, direction: str = "incr") -> Count:
    """Permutations of n with no k-1 adjacent ascents (incr) or descents.

    Both directions agree through the bijection that reads the one-line
    word backwards, so the descending count reuses the ascending sum.
    """
    if n < 0 or k < 2:
        raise DomainError(f"needs n >= 0 and k >= 2, got {n}, {k}")
    if direction not in ("incr", "decr"):
        raise DomainError(f"direction must be incr or decr, got {direction!r}")
    if n == 0:
        return 1
    if k > n:
        return math.factorial(n)
    return sum(beta_mask(n, mask) for mask in bounded_composition_masks(n, k - 1))


def cycles_avoiding_monotone(n: int, k: int, direction: str = "incr") -> Count:
    """n-cycles avoiding a monotone run of length k, by direct family sums.

    Ascending runs sum beta_cyc over small-gap descent sets; descending
    runs sum over their complements.  For k = 3 this must agree with the
    closed forms, which the verification suite asserts.
    """
    if n < 1 or k < 2:
        raise DomainError(f"needs n >= 1 and k >= 2, got {n}, {k}")
    if direction not in ("incr", "decr"):
        raise DomainError(f"direction must be incr or decr, got {direction!r}")
    if n > CYCLE_SCAN_CAP:
        raise CapacityError(f"cycle scan capped at n = {CYCLE_SCAN_CAP}")
    if k > n:
        return math.factorial(n - 1)
    full = (1 << (n - 1)) - 1
    total = 0
    for mask in bounded_composition_masks(n, k - 1):
        member = mask if direction == "incr" else full ^ mask
        total += beta_cyc_mask(n, member)
    return total
