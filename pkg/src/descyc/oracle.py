"""Exhaustive ground truth by direct enumeration of the symmetric group.

Nothing here reuses the counting code of the formula modules: descents,
cycle types, pattern containment, and word factorization are recomputed
from first principles, so agreement with the formulas is meaningful
evidence rather than a tautology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import CapacityError, Count, CountTable, DescentSet, DomainError

# 10! records stream in comfortably; anything larger is a different tool.
ENUMERATION_CAP = 10
WORD_CAP = 10**7


@dataclass(frozen=True, slots=True)
class PermRecord:
    """One permutation with its recomputed descent and cycle data."""

    one_line: tuple[int, ...]
    descent_mask: int
    cycle_type: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.one_line)

    @property
    def descents(self) -> DescentSet:
        return DescentSet(self.n, self.descent_mask)

    @property
    def is_n_cycle(self) -> bool:
        return self.cycle_type == (self.n,)


def _descent_mask(perm: tuple[int, ...]) -> int:
    mask = 0
    for i in range(len(perm) - 1):
        if perm[i] > perm[i + 1]:
            mask |= 1 << i
    return mask


def _cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(perm)
    seen = 0
    lengths = []
    for start in range(n):
        if seen >> start & 1:
            continue
        length = 0
        j = start
        while not seen >> j & 1:
            seen |= 1 << j
            j = perm[j] - 1
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def _check_cap(n: int) -> None:
    if n < 1:
        raise DomainError(f"enumeration needs n >= 1, got {n}")
    if n > ENUMERATION_CAP:
        raise CapacityError(
            f"enumeration capped at n = {ENUMERATION_CAP}, got {n}")


def enumerate_permutations(n: int) -> Iterator[PermRecord]:
    """All permutations of {1, ..., n} in lexicographic order, streamed."""
    _check_cap(n)
    for perm in itertools.permutations(range(1, n + 1)):
        yield PermRecord(perm, _descent_mask(perm), _cycle_type(perm))


def brute_tables(
    n: int,
) -> tuple[CountTable, CountTable, dict[tuple[int, ...], CountTable]]:
    """Exact-descent counts overall, for n-cycles, and per cycle type."""
    _check_cap(n)
    size = 1 << (n - 1)
    betas = [0] * size
    by_type: dict[tuple[int, ...], list[int]] = {}
    for perm in itertools.permutations(range(1, n + 1)):
        mask = 0
        for i in range(n - 1):
            if perm[i] > perm[i + 1]:
                mask |= 1 << i
        ctype = _cycle_type(perm)
        betas[mask] += 1
        row = by_type.get(ctype)
        if row is None:
            row = by_type[ctype] = [0] * size
        row[mask] += 1
    n_cycles = by_type.get((n,), [0] * size)
    typed = {
        ctype: CountTable(n, f"beta[type={ctype}]", tuple(row))
        for ctype, row in sorted(by_type.items())
    }
    return (
        CountTable(n, "beta", tuple(betas)),
        CountTable(n, "beta_cyc", tuple(n_cycles)),
        typed,
    )


def _has_run(perm: tuple[int, ...], k: int, descending: bool) -> bool:
    # a run of k-1 adjacent ascents (or descents) is k monotone entries
    run = 0
    for i in range(len(perm) - 1):
        step_down = perm[i] > perm[i + 1]
        if step_down == descending:
            run += 1
            if run >= k - 1:
                return True
        else:
            run = 0
    return False


def brute_avoiders(
    n: int,
    k: int,
    direction: str = "incr",
    cyclic_only: bool = False,
    ascent_boundary: bool = False,
) -> Count:
    """Count permutations with no k-1 adjacent ascents (or descents).

    cyclic_only restricts to n-cycles; ascent_boundary additionally demands
    that the first and last steps ascend (so n = 1 never qualifies).
    """
    _check_cap(n)
    if k < 2:
        raise DomainError(f"pattern length must be >= 2, got {k}")
    if direction not in ("incr", "decr"):
        raise DomainError(f"direction must be incr or decr, got {direction!r}")
    descending = direction == "decr"
    count = 0
    for perm in itertools.permutations(range(1, n + 1)):
        if _has_run(perm, k, descending):
            continue
        if ascent_boundary:
            if n < 2 or perm[0] > perm[1] or perm[-2] > perm[-1]:
                continue
        if cyclic_only and _cycle_type(perm) != (n,):
            continue
        count += 1
    return count


def brute_pattern_profile(n: int, k: int) -> dict[str, Count]:
    """All six avoider statistics for pattern length k in one sweep.

    Keys: incr / decr (full counts), incr_cyc / decr_cyc (n-cycles only),
    incr_boundary / decr_boundary (avoiders whose first and last steps
    both ascend).
    """
    _check_cap(n)
    if k < 2:
        raise DomainError(f"pattern length must be >= 2, got {k}")
    tally = dict.fromkeys(
        ("incr", "decr", "incr_cyc", "decr_cyc",
         "incr_boundary", "decr_boundary"), 0)
    for perm in itertools.permutations(range(1, n + 1)):
        asc_free = not _has_run(perm, k, False)
        desc_free = not _has_run(perm, k, True)
        if not (asc_free or desc_free):
            continue
        cyc = _cycle_type(perm) == (n,)
        boundary = n >= 2 and perm[0] < perm[1] and perm[-2] < perm[-1]
        if asc_free:
            tally["incr"] += 1
            tally["incr_cyc"] += cyc
            tally["incr_boundary"] += boundary
        if desc_free:
            tally["decr"] += 1
            tally["decr_cyc"] += cyc
            tally["decr_boundary"] += boundary
    return tally


def is_lyndon_slow(word: tuple[int, ...]) -> bool:
    """Strictly smaller than every nontrivial rotation, checked directly."""
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def is_primitive_slow(word: tuple[int, ...]) -> bool:
    """Distinct from every nontrivial rotation, checked directly."""
    return all(word != word[i:] + word[:i] for i in range(1, len(word)))


def slow_factorization(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Factor greedily into longest Lyndon prefixes (quadratic, no Duval)."""
    if not word:
        raise DomainError("cannot factor the empty word")
    factors = []
    i = 0
    while i < len(word):
        for j in range(len(word), i, -1):
            if is_lyndon_slow(word[i:j]):
                factors.append(word[i:j])
                i = j
                break
    return factors


def brute_words(
    n: int, alphabet_size: int
) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Count]:
    """Tally all length-n words over {1..q} by (type, evaluation).

    The type comes from the slow factorization; evaluations are padded to
    the alphabet size.
    """
    if n < 1 or alphabet_size < 1:
        raise DomainError("need n >= 1 and alphabet_size >= 1")
    if alphabet_size**n > WORD_CAP:
        raise CapacityError(
            f"{alphabet_size}^{n} words exceed the cap of {WORD_CAP}")
    tally: dict[tuple[tuple[int, ...], tuple[int, ...]], Count] = {}
    for word in itertools.product(range(1, alphabet_size + 1), repeat=n):
        factors = slow_factorization(word)
        ctype = tuple(sorted((len(f) for f in factors), reverse=True))
        ev = [0] * alphabet_size
        for letter in word:
            ev[letter - 1] += 1
        key = (ctype, tuple(ev))
        tally[key] = tally.get(key, 0) + 1
    return tally
