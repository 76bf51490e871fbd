"""Number-theoretic primitives and the subset/composition codecs.

A descent set lives inside an ambient size n: it is a subset of
{1, ..., n-1}, stored as a bitmask with bit i-1 set exactly when i is a
member.  Everything downstream (divisor sums, quotient sets, composition
codecs) is built on this encoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

# Exact counts are plain Python integers throughout; no counting path may
# touch floating point.
Count = int

# Masks are kept inside one machine word; every practical scan is n <= ~24.
MAX_N = 64


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


class CapacityError(DomainError):
    """A request exceeds a documented size cap."""


class InvariantViolation(RuntimeError):
    """A proven identity failed to hold: an implementation bug, not bad input."""


def exact_div(total: int, n: int, what: str) -> int:
    """Divide asserting zero remainder; the integrality is a theorem."""
    q, r = divmod(total, n)
    if r:
        raise InvariantViolation(f"{what}: {total} not divisible by {n}")
    return q


def mobius(d: int) -> int:
    """Number-theoretic Mobius function, by trial factorization.

    Returns 0 if d has a squared prime factor, otherwise (-1)**(number of
    prime factors).  Intended range is d <= 10**6 or so; no sieve is kept.
    """
    if d < 1:
        raise DomainError(f"mobius undefined for {d}")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if d > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise DomainError(f"divisors undefined for {n}")
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class DescentSet:
    """A subset of {1, ..., n-1} with its ambient size n.

    Bit i-1 of ``mask`` is set exactly when i is in the set.  The empty
    mask is valid for every n, including n = 1 where {1, ..., 0} is empty.
    """

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise DomainError(f"ambient size {self.n} outside 1..{MAX_N}")
        if self.mask < 0 or self.mask >> max(self.n - 1, 0):
            raise DomainError(
                f"mask {self.mask:#x} has bits outside [1, {self.n - 1}]")

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "DescentSet":
        mask = 0
        for i in elements:
            if not 1 <= i <= n - 1:
                raise DomainError(f"element {i} outside [1, {n - 1}]")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    @classmethod
    def from_text(cls, n: int, text: str) -> "DescentSet":
        """Parse the canonical encoding: comma-separated ascending integers.

        The empty string denotes the empty set.  Duplicates, descending
        order, or out-of-range elements are rejected rather than repaired.
        """
        text = text.strip()
        if not text:
            return cls(n, 0)
        elements = []
        for token in text.split(","):
            try:
                value = int(token.strip())
            except ValueError:
                raise DomainError(f"bad set element {token!r}") from None
            elements.append(value)
        for a, b in zip(elements, elements[1:]):
            if a >= b:
                raise DomainError(
                    f"set elements must be strictly ascending, got {text!r}")
        return cls.from_elements(n, elements)

    def to_text(self) -> str:
        """Canonical encoding: comma-separated ascending, '' for the empty set."""
        return ",".join(str(i) for i in self.elements())

    def elements(self) -> tuple[int, ...]:
        mask = self.mask
        result = []
        while mask:
            low = mask & -mask
            result.append(low.bit_length())
            mask ^= low
        return tuple(result)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n - 1 and self.mask >> (i - 1) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def complement(self) -> "DescentSet":
        full = (1 << (self.n - 1)) - 1
        return DescentSet(self.n, full ^ self.mask)

    def gcd(self) -> int:
        return descent_gcd(self)

    def quotient(self, d: int) -> "DescentSet":
        return subset_quotient(self, d)

    def alternation(self) -> tuple[tuple[int, ...], int]:
        return alternation(self)


def descent_gcd(I: DescentSet) -> int:
    """gcd of all elements of I together with the ambient n.

    The empty set gives n itself.
    """
    g = I.n
    for i in I.elements():
        g = math.gcd(g, i)
        if g == 1:
            break
    return g


def quotient_mask(mask: int, d: int, n: int) -> int:
    """Mask of {i/d : i in I, d | i} inside ambient n/d, for raw masks."""
    if d == 1:
        return mask
    q = 0
    for j in range(1, n // d):
        if mask >> (d * j - 1) & 1:
            q |= 1 << (j - 1)
    return q


def subset_quotient(I: DescentSet, d: int) -> DescentSet:
    """The set {i/d : i in I, d | i} inside ambient n/d.  Requires d | n."""
    if d < 1 or I.n % d != 0:
        raise DomainError(f"{d} does not divide ambient size {I.n}")
    return DescentSet(I.n // d, quotient_mask(I.mask, d, I.n))


@dataclass(frozen=True)
class Composition:
    """An ordered tuple of positive parts; n is their sum."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise DomainError("composition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise DomainError(f"composition parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def quotient(self, d: int) -> "Composition":
        """Divide every part by d; requires d to divide each part."""
        if any(p % d for p in self.parts):
            raise DomainError(f"{d} does not divide all parts of {self.parts}")
        return Composition(tuple(p // d for p in self.parts))


def composition_of(I: DescentSet) -> Composition:
    """The gap sequence of I within its ambient n.

    {i1 < i2 < ...} maps to (i1, i2 - i1, ..., n - i_last); the empty set
    maps to the single part (n).
    """
    parts = []
    prev = 0
    for i in I.elements():
        parts.append(i - prev)
        prev = i
    parts.append(I.n - prev)
    return Composition(tuple(parts))


def set_of(mu: Composition) -> DescentSet:
    """Inverse of composition_of: partial sums of all but the last part."""
    mask = 0
    acc = 0
    for p in mu.parts[:-1]:
        acc += p
        mask |= 1 << (acc - 1)
    return DescentSet(mu.n, mask)


def alternation_mask(mask: int, n: int) -> int:
    """Mask over {1, ..., n-2} of positions where membership flips."""
    return (mask ^ (mask >> 1)) & ((1 << max(n - 2, 0)) - 1)


def alternation(I: DescentSet) -> tuple[tuple[int, ...], int]:
    """Positions i in {1, ..., n-2} with exactly one of i, i+1 in I.

    Returns the position tuple and its cardinality.  For n = 1 there are
    no eligible positions and the result is ((), 0).
    """
    alt = alternation_mask(I.mask, I.n)
    if I.n <= 2:
        return (), 0
    return DescentSet(I.n - 1, alt).elements(), alt.bit_count()


def csv_field(text: str) -> str:
    """Quote a CSV field exactly when it contains a comma."""
    return f'"{text}"' if "," in text else text


@dataclass(frozen=True)
class CountTable:
    """Counts indexed by descent-set mask at one ambient size."""

    n: int
    statistic: str
    counts: tuple[Count, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != 1 << (self.n - 1):
            raise DomainError(
                f"table for n={self.n} needs {1 << (self.n - 1)} entries")

    def get(self, I: DescentSet) -> Count:
        if I.n != self.n:
            raise DomainError(f"ambient mismatch: table n={self.n}, set n={I.n}")
        return self.counts[I.mask]

    def to_csv(self) -> str:
        """Render as mask-ascending CSV with a header row.

        The set column is quoted whenever it holds more than one element,
        since the canonical encoding uses commas.
        """
        lines = ["mask,set,count"]
        for mask, count in enumerate(self.counts):
            text = csv_field(DescentSet(self.n, mask).to_text())
            lines.append(f"{mask},{text},{count}")
        return "\n".join(lines) + "\n"
