"""Counting all permutations by descent set: alpha, beta, and the classical
specializations (Eulerian numbers, zigzag numbers, generalized zigzags).

Two independent routes to beta are kept deliberately separate so that one
can validate the other: a rank-prefix dynamic program, and
inclusion-exclusion over subsets of multinomial coefficients.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

from .core import Composition, Count, DescentSet, DomainError, composition_of

DEFAULT_CACHE_SIZE = 1 << 20

# Bulk per-ambient tables are memoized up to this size; larger ones are
# rebuilt on demand to keep memory bounded.
_TABLE_CACHE_MAX_N = 16


class Strategy(enum.Enum):
    DP = "dp"
    INCLUSION_EXCLUSION = "inclusion-exclusion"


def multinomial(n: int, parts) -> Count:
    """n! / prod(p!) over the parts, which must sum to n."""
    acc = 1
    total = 0
    for p in parts:
        total += p
        acc *= math.comb(total, p)
    if total != n:
        raise DomainError(f"parts sum to {total}, expected {n}")
    return acc


def alpha(I: DescentSet) -> Count:
    """Permutations of the ambient n whose descent set is contained in I."""
    return alpha_mask(I.n, I.mask)


def alpha_mask(n: int, mask: int) -> Count:
    """alpha on a raw mask: the multinomial of the gap composition."""
    acc = 1
    prev = 0
    m = mask
    while m:
        low = m & -m
        i = low.bit_length()
        acc *= math.comb(i, i - prev)
        prev = i
        m ^= low
    return acc * math.comb(n, n - prev)


def _beta_dp(n: int, mask: int) -> Count:
    # psi[j] = arrangements of a length-i prefix pattern whose last entry has
    # relative rank j+1; an ascent step needs r < j, a descent step r >= j.
    psi = [1]
    for pos in range(1, n):
        if mask >> (pos - 1) & 1:
            acc = 0
            suffix = [0] * (pos + 1)
            for j in range(pos - 1, -1, -1):
                acc += psi[j]
                suffix[j] = acc
            psi = suffix
        else:
            prefix = [0]
            acc = 0
            for j in range(pos):
                acc += psi[j]
                prefix.append(acc)
            psi = prefix
    return sum(psi)


def _beta_inclusion_exclusion(n: int, mask: int) -> Count:
    # Signed sum of alpha over all subsets of the mask; shares no code with
    # the DP route.
    size = mask.bit_count()
    total = 0
    sub = mask
    while True:
        sign = -1 if (size - sub.bit_count()) & 1 else 1
        total += sign * alpha_mask(n, sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return total


_beta_dp_cached = functools.lru_cache(maxsize=DEFAULT_CACHE_SIZE)(_beta_dp)
_beta_ie_cached = functools.lru_cache(maxsize=DEFAULT_CACHE_SIZE)(_beta_inclusion_exclusion)


def set_beta_cache_size(size: int) -> None:
    """Rebuild the (n, mask)-keyed memo caches with a new LRU budget."""
    global _beta_dp_cached, _beta_ie_cached
    _beta_dp_cached = functools.lru_cache(maxsize=size)(_beta_dp)
    _beta_ie_cached = functools.lru_cache(maxsize=size)(_beta_inclusion_exclusion)


def beta(I: DescentSet, strategy: Strategy = Strategy.DP) -> Count:
    """Permutations of the ambient n with descent set exactly I."""
    return beta_mask(I.n, I.mask, strategy)


def beta_mask(n: int, mask: int, strategy: Strategy = Strategy.DP) -> Count:
    if strategy is Strategy.DP:
        return _beta_dp_cached(n, mask)
    return _beta_ie_cached(n, mask)


@dataclass
class BetaEngine:
    """A beta evaluator pinned to one strategy with its own memo."""

    strategy: Strategy = Strategy.DP
    cache_size: int = DEFAULT_CACHE_SIZE
    _memo: dict = field(default_factory=dict, repr=False)

    def count(self, I: DescentSet) -> Count:
        key = (I.n, I.mask)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if self.strategy is Strategy.DP:
            value = _beta_dp(I.n, I.mask)
        else:
            value = _beta_inclusion_exclusion(I.n, I.mask)
        if len(self._memo) >= self.cache_size:
            self._memo.clear()
        self._memo[key] = value
        return value


def alpha_table(n: int) -> list[Count]:
    """alpha for every mask of ambient n, indexed by mask."""
    return [alpha_mask(n, mask) for mask in range(1 << (n - 1))]


def _beta_table(n: int) -> list[Count]:
    # Moebius transform over the subset lattice turns alpha into beta; the
    # slice form keeps the inner loop in C.
    table = alpha_table(n)
    for b in range(n - 1):
        bit = 1 << b
        step = bit << 1
        for base in range(bit, len(table), step):
            block = table[base:base + bit]
            lower = table[base - bit:base]
            table[base:base + bit] = [x - y for x, y in zip(block, lower)]
    return table


_small_beta_tables: dict[int, list[Count]] = {}


def beta_table(n: int) -> list[Count]:
    """beta for every mask of ambient n, indexed by mask."""
    if n <= _TABLE_CACHE_MAX_N:
        cached = _small_beta_tables.get(n)
        if cached is None:
            cached = _beta_table(n)
            _small_beta_tables[n] = cached
        return cached
    return _beta_table(n)


@functools.lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[Count, ...]:
    # row[j] = permutations of n with exactly j descents
    row = (1,)
    for m in range(2, n + 1):
        prev = row
        row = tuple(
            (j + 1) * (prev[j] if j < m - 1 else 0)
            + (m - j) * (prev[j - 1] if j >= 1 else 0)
            for j in range(m)
        )
    return row


def eulerian(n: int, k: int) -> Count:
    """Permutations of n with exactly k-1 descents."""
    if not 1 <= k <= n:
        raise DomainError(f"eulerian index k={k} outside 1..{n}")
    return _eulerian_row(n)[k - 1]


def _zigzag_values(limit: int) -> list[Count]:
    # Boustrophedon: each row is built by summing the previous row reversed.
    values = [1]
    row = [1]
    for _ in range(limit):
        new = [0]
        for x in reversed(row):
            new.append(new[-1] + x)
        row = new
        values.append(row[-1])
    return values


_zigzag_cache: list[Count] = _zigzag_values(32)


def euler_zigzag(n: int) -> Count:
    """Alternating (up-down) permutations of n; index 0 is 1 by convention."""
    if n < 0:
        raise DomainError(f"zigzag undefined for {n}")
    global _zigzag_cache
    if n >= len(_zigzag_cache):
        _zigzag_cache = _zigzag_values(n + 16)
    return _zigzag_cache[n]


def kz_mask(n: int, k: int) -> int:
    """Mask of the multiples of k inside {1, ..., n-1}."""
    mask = 0
    for i in range(k, n, k):
        mask |= 1 << (i - 1)
    return mask


def kz_set(n: int, k: int) -> DescentSet:
    return DescentSet(n, kz_mask(n, k))


def generalized_euler(n: int, k: int) -> Count:
    """Permutations of n whose descent set is exactly the multiples of k."""
    if n < 1 or k < 1:
        raise DomainError(f"generalized zigzag needs n, k >= 1, got {n}, {k}")
    return beta_mask(n, kz_mask(n, k))


def descent_composition(I: DescentSet) -> Composition:
    """Convenience re-export of the gap composition of a descent set."""
    return composition_of(I)
