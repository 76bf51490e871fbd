"""Deviation scans and inequality sweeps behind the 1/n-fraction heuristic.

The quantity of interest is |n * beta_cyc(I) / beta(I) - 1|, held as an
exact rational: numerators come straight out of the signed divisor sum, so
no comparison ever rounds.  Scans over all proper subsets shard the mask
range into fixed chunks; the merge uses a total order (deviation, then the
element tuple of the argmax), so worker count cannot change the result.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .core import (
    CapacityError,
    Count,
    DescentSet,
    DomainError,
    InvariantViolation,
    divisors,
    mobius,
    quotient_mask,
)
from .cyclic import beta_cyc_table
from .linear import alpha_mask, beta_table, euler_zigzag

SCAN_CAP = 24
_CHUNK_BITS = 6  # 64 fixed chunks; independent of the worker count


@dataclass(frozen=True)
class Family:
    """A scan family of descent sets at one ambient size.

    kind is one of:
      all-proper     every nonempty proper subset of {1, ..., n-1}
      periodic       the single set {i : i mod ell in pattern} cut to [n-1]
      alt-threshold  subsets whose alternation number exceeds
                     n/2 - n**(1 - epsilon)
    """

    n: int
    kind: str
    ell: int = 0
    pattern: tuple[int, ...] = ()
    epsilon: Optional[Fraction] = None

    @classmethod
    def all_proper(cls, n: int) -> "Family":
        if n < 3:
            raise DomainError(f"no proper nonempty subsets at n = {n}")
        return cls(n, "all-proper")

    @classmethod
    def periodic(cls, n: int, ell: int, pattern) -> "Family":
        pat = tuple(sorted(set(pattern)))
        if ell < 1 or not pat or any(not 1 <= r <= ell for r in pat):
            raise DomainError(f"pattern {pattern} not inside [1, {ell}]")
        if len(pat) == ell:
            raise DomainError("pattern must be proper within its period")
        return cls(n, "periodic", ell=ell, pattern=pat)

    @classmethod
    def alt_threshold(cls, n: int, epsilon: Fraction) -> "Family":
        epsilon = Fraction(epsilon)
        if not 0 < epsilon < Fraction(1, 2):
            raise DomainError(f"epsilon must be in (0, 1/2), got {epsilon}")
        return cls(n, "alt-threshold", epsilon=epsilon)

    def describe(self) -> str:
        if self.kind == "periodic":
            residues = ",".join(str(r) for r in self.pattern)
            return f"periodic:{self.ell}:{residues}"
        if self.kind == "alt-threshold":
            return f"alt-threshold:{self.epsilon}"
        return self.kind

    def _periodic_mask(self) -> int:
        mask = 0
        for i in range(1, self.n):
            if (i - 1) % self.ell + 1 in self.pattern:
                mask |= 1 << (i - 1)
        return mask

    def member_count(self) -> Count:
        if self.kind == "all-proper":
            return (1 << (self.n - 1)) - 2
        if self.kind == "periodic":
            return 1
        if self.n == 1:
            return 1
        width = self.n - 2
        return 2 * sum(
            math.comb(width, a)
            for a in range(width + 1)
            if _alt_qualifies(a, self.n, self.epsilon)
        )

    def members(self) -> Iterator[int]:
        """Member masks, ascending."""
        n = self.n
        if self.kind == "all-proper":
            return iter(range(1, (1 << (n - 1)) - 1))
        if self.kind == "periodic":
            return iter((self._periodic_mask(),))
        return self._alt_members(0, 1 << (n - 1))

    def _alt_members(self, start: int, stop: int) -> Iterator[int]:
        n, eps = self.n, self.epsilon
        width = (1 << max(n - 2, 0)) - 1
        for mask in range(start, stop):
            alt = ((mask ^ (mask >> 1)) & width).bit_count()
            if _alt_qualifies(alt, n, eps):
                yield mask

    def member_range(self, start: int, stop: int) -> Iterator[int]:
        """Members within [start, stop), for sharded scans."""
        if self.kind == "all-proper":
            lo = max(start, 1)
            hi = min(stop, (1 << (self.n - 1)) - 1)
            return iter(range(lo, hi))
        if self.kind == "periodic":
            mask = self._periodic_mask()
            return iter((mask,) if start <= mask < stop else ())
        return self._alt_members(start, stop)


def _alt_qualifies(alt: int, n: int, epsilon: Fraction) -> bool:
    # alt > n/2 - n**(1 - eps), compared exactly via integer powers
    deficit2 = n - 2 * alt
    if deficit2 <= 0:
        return True
    p, q = epsilon.numerator, epsilon.denominator
    return deficit2**q < 2**q * n ** (q - p)


def almost_all_fraction(n: int, epsilon: Fraction) -> Fraction:
    """Fraction of subsets whose alternation number clears the threshold."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < Fraction(1, 2):
        raise DomainError(f"epsilon must be in (0, 1/2), got {epsilon}")
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    if n > SCAN_CAP:
        raise CapacityError(f"capped at n = {SCAN_CAP}")
    if n == 1:
        return Fraction(1)
    # The alternation map sends subsets of [n-1] two-to-one onto subsets of
    # [n-2], so the tally collapses to binomial sums.
    width = n - 2
    hits = sum(
        math.comb(width, a)
        for a in range(width + 1)
        if _alt_qualifies(a, n, epsilon)
    )
    return Fraction(hits, 1 << width)


@dataclass(frozen=True)
class ScanReport:
    """Outcome of one deviation scan.

    chunks records the fixed shard count of the mask partition; it does
    not vary with the worker count, so reports stay comparable.
    """

    n: int
    family: str
    max_deviation: Fraction
    argmax: Optional[DescentSet]
    member_count: Count
    elapsed_s: float
    chunks: int = 1

    def to_json_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "n": self.n,
            "family": self.family,
            "max_deviation_num": self.max_deviation.numerator,
            "max_deviation_den": self.max_deviation.denominator,
            "argmax_set": "" if self.argmax is None else self.argmax.to_text(),
            "member_count": self.member_count,
        }
        if include_timing:
            doc["elapsed_ms"] = int(self.elapsed_s * 1000)
        return doc


_Candidate = tuple[int, int, int]  # (num, den, argmax mask)


def _elements(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def _better(a: Optional[_Candidate], b: Optional[_Candidate]) -> Optional[_Candidate]:
    if a is None:
        return b
    if b is None:
        return a
    left = a[0] * b[1]
    right = b[0] * a[1]
    if left != right:
        return a if left > right else b
    # exact tie: keep the lexicographically smaller element tuple
    return a if _elements(a[2]) <= _elements(b[2]) else b


# Shared read-only scan state, inherited by forked workers.
_SCAN_STATE: dict = {}


def _beta_dev_chunk(bounds: tuple[int, int]) -> tuple[Optional[_Candidate], int]:
    family: Family = _SCAN_STATE["family"]
    terms = _SCAN_STATE["terms"]
    betas = _SCAN_STATE["betas"]
    n = family.n
    best: Optional[_Candidate] = None
    seen = 0
    for mask in family.member_range(*bounds):
        seen += 1
        size = mask.bit_count()
        acc = 0
        for d, mu, table in terms:
            q = quotient_mask(mask, d, n)
            sign = -1 if (size - q.bit_count()) & 1 else 1
            acc += mu * sign * table[q]
        num = -acc if acc < 0 else acc
        best = _better(best, (num, betas[mask], mask))
    return best, seen


def beta_deviation_scan(family: Family, jobs: int = 1) -> ScanReport:
    """Exact max of |n * beta_cyc / beta - 1| over the family.

    Sharded over fixed mask ranges; merging uses the total order
    (deviation, then lexicographically smallest argmax), so any worker
    count produces the same report.
    """
    n = family.n
    if n > SCAN_CAP:
        raise CapacityError(f"scan capped at n = {SCAN_CAP}")
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs}")
    start = time.monotonic()
    terms = [
        (d, mobius(d), beta_table(n // d))
        for d in divisors(n)
        if d > 1 and mobius(d)
    ]
    betas = beta_table(n)
    _SCAN_STATE.update(family=family, terms=terms, betas=betas)
    try:
        size = 1 << (n - 1)
        chunks = min(size, 1 << _CHUNK_BITS)
        step = size // chunks
        bounds = [(i * step, (i + 1) * step if i < chunks - 1 else size)
                  for i in range(chunks)]
        pool_cls = None
        if jobs > 1 and size > 1 << 12:
            try:
                pool_cls = multiprocessing.get_context("fork").Pool
            except ValueError:
                pool_cls = None  # no fork on this platform; same result either way
        if pool_cls is not None:
            with pool_cls(jobs) as pool:
                results = pool.map(_beta_dev_chunk, bounds, chunksize=1)
        else:
            results = [_beta_dev_chunk(b) for b in bounds]
    finally:
        _SCAN_STATE.clear()
    best: Optional[_Candidate] = None
    scanned = 0
    for cand, seen in results:
        best = _better(best, cand)
        scanned += seen
    if best is None:
        raise DomainError(f"family {family.describe()} has no members at n = {n}")
    expected = family.member_count()
    if scanned != expected:
        raise InvariantViolation(
            f"scanned {scanned} members, expected {expected}")
    num, den, mask = best
    return ScanReport(
        n=n,
        family=family.describe(),
        max_deviation=Fraction(num, den),
        argmax=DescentSet(n, mask),
        member_count=expected,
        elapsed_s=time.monotonic() - start,
        chunks=len(bounds),
    )


def _shared_prime_masks(n: int) -> list[int]:
    # masks supported on multiples of a prime divisor of n; every other
    # nonempty set has gcd 1 with n and contributes deviation exactly 0
    primes = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    masks: set[int] = set()
    for p in primes:
        positions = [i - 1 for i in range(p, n, p)]
        for sub in range(1, 1 << len(positions)):
            mask = 0
            for b, pos in enumerate(positions):
                if sub >> b & 1:
                    mask |= 1 << pos
            masks.add(mask)
    return sorted(masks)


def alpha_deviation_scan(n: int) -> tuple[ScanReport, bool]:
    """Exact max of |n * alpha_cyc / alpha - 1| over nonempty subsets.

    Sets whose gcd with n is 1 deviate by exactly 0, so only masks
    supported on multiples of a shared prime are enumerated.  Also reports
    whether the max respects the divisor-count bound d(n) / sqrt(n).
    """
    if not 2 <= n <= SCAN_CAP:
        raise DomainError(f"needs 2 <= n <= {SCAN_CAP}, got {n}")
    start = time.monotonic()
    best: _Candidate = (0, 1, 1)  # {1} is always coprime to n, deviation 0
    for mask in _shared_prime_masks(n):
        m = n
        work = mask
        while work:
            low = work & -work
            m = math.gcd(m, low.bit_length())
            work ^= low
        acc = 0
        for d in divisors(m):
            mu = mobius(d)
            if mu and d > 1:
                acc += mu * alpha_mask(n // d, quotient_mask(mask, d, n))
        num = -acc if acc < 0 else acc
        best = _better(best, (num, alpha_mask(n, mask), mask))
    num, den, mask = best
    d_n = len(divisors(n))
    holds = num * num * n <= d_n * d_n * den * den
    report = ScanReport(
        n=n,
        family="alpha-nonempty",
        max_deviation=Fraction(num, den),
        argmax=DescentSet(n, mask),
        member_count=(1 << (n - 1)) - 1,
        elapsed_s=time.monotonic() - start,
    )
    return report, holds


@dataclass(frozen=True)
class BoundReport:
    """Outcome of the inequality sweep at one ambient size."""

    n: int
    checked: int
    passed: bool
    failures: tuple[str, ...]


def _even_run_mask(k: int) -> int:
    # {2, 4, ..., 2k}
    mask = 0
    for i in range(1, k + 1):
        mask |= 1 << (2 * i - 1)
    return mask


def _odd_run_mask(k: int) -> int:
    # {1, 3, ..., 2k-1}
    mask = 0
    for i in range(1, k + 1):
        mask |= 1 << (2 * i - 2)
    return mask


def bound_checks(n: int) -> BoundReport:
    """Sweep the proven inequalities over every subset at ambient n.

    Covers: the floor(n/2)! gap bound; minimization of beta by the
    alternating staircase of the same alternation number; its truncation
    to any shorter even staircase; the half-binomial zigzag lower bound;
    and the two-term staircase identity it rests on.
    """
    if n < 2:
        raise DomainError(f"needs n >= 2, got {n}")
    if n > 20:
        raise CapacityError("bound sweep capped at n = 20")
    betas = beta_table(n)
    beta_cycs = beta_cyc_table(n)
    failures: list[str] = []
    half_fact = math.factorial(n // 2)
    width = (1 << max(n - 2, 0)) - 1
    checked = 0
    for mask in range(1 << (n - 1)):
        checked += 1
        witness = DescentSet(n, mask).to_text
        gap = n * beta_cycs[mask] - betas[mask]
        if 2 * abs(gap) > n * half_fact:
            failures.append(f"gap bound: I={{{witness()}}} gap={gap}")
        alt = ((mask ^ (mask >> 1)) & width).bit_count()
        stair = _even_run_mask(alt // 2) if alt % 2 == 0 else _odd_run_mask((alt + 1) // 2)
        if betas[mask] < betas[stair]:
            failures.append(f"staircase minimization: I={{{witness()}}} alt={alt}")
        for k in range(alt // 2 + 1):
            if betas[mask] < betas[_even_run_mask(k)]:
                failures.append(f"even staircase 2k={2 * k}: I={{{witness()}}}")
    for k in range(n // 4 + 1):
        lhs = 2 * betas[_even_run_mask(k)]
        rhs = math.comb(n, 2 * k) * euler_zigzag(2 * k)
        if lhs < rhs:
            failures.append(f"half-binomial zigzag bound at 2k={2 * k}")
    for i in range(1, (n - 1) // 2 + 1):
        lhs = betas[_even_run_mask(i - 1)] + betas[_even_run_mask(i)]
        if lhs != math.comb(n, 2 * i) * euler_zigzag(2 * i):
            failures.append(f"staircase pair identity at 2i={2 * i}")
    return BoundReport(n, checked, not failures, tuple(failures))
