"""Counting n-cycles by descent set.

Every formula here reduces cycle counts to the all-permutation counts of
``linear`` through signed divisor sums, plus the closed forms those sums
specialize to for structured descent sets (Eulerian-by-count, alternating,
multiples of k).  All divisions by n check the remainder: the integrality
is a theorem, so a nonzero remainder means a bug and aborts loudly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    CapacityError,
    Count,
    DescentSet,
    DomainError,
    InvariantViolation,
    descent_gcd,
    divisors,
    exact_div,
    mobius,
    quotient_mask,
)
from .linear import (
    alpha_mask,
    alpha_table,
    beta_mask,
    beta_table,
    eulerian,
    euler_zigzag,
    generalized_euler,
    kz_mask,
)


class FormulaKind(enum.Enum):
    """The distinct cycle-counting formulas exposed by this module.

    docs/formula_kinds.md maps each kind to its formula and entry point.
    """

    CYCLE_CONTAINED_DESCENTS = "alpha-cyc"
    CYCLE_EXACT_DESCENTS = "beta-cyc"
    CYCLE_EULERIAN = "eulerian-cyc"
    CYCLE_ALTERNATING = "alt-cycles"
    CYCLE_MULTIPLES_OF_K = "kz-cycles"
    CYCLE_MULTIPLES_ODD_PRIME = "kz-cycles-odd-prime"


def _square_free_divisors(n: int) -> list[tuple[int, int]]:
    """(d, mobius(d)) for the divisors of n that contribute to Moebius sums."""
    out = []
    for d in divisors(n):
        mu = mobius(d)
        if mu:
            out.append((d, mu))
    return out


def alpha_cyc_mask(n: int, mask: int) -> Count:
    m = n
    work = mask
    while work:
        low = work & -work
        m = math.gcd(m, low.bit_length())
        if m == 1:
            break
        work ^= low
    total = 0
    for d, mu in _square_free_divisors(m):
        total += mu * alpha_mask(n // d, quotient_mask(mask, d, n))
    return exact_div(total, n, "alpha_cyc")


def alpha_cyc(I: DescentSet) -> Count:
    """n-cycles whose descent set is contained in I."""
    return alpha_cyc_mask(I.n, I.mask)


def beta_cyc_mask(n: int, mask: int) -> Count:
    size = mask.bit_count()
    total = 0
    for d, mu in _square_free_divisors(n):
        q = quotient_mask(mask, d, n)
        sign = -1 if (size - q.bit_count()) & 1 else 1
        total += mu * sign * beta_mask(n // d, q)
    value = exact_div(total, n, "beta_cyc")
    if value < 0:
        raise InvariantViolation(f"beta_cyc negative: n={n} mask={mask:#x}")
    return value


def beta_cyc(I: DescentSet) -> Count:
    """n-cycles with descent set exactly I."""
    return beta_cyc_mask(I.n, I.mask)


_small_beta_cyc_tables: dict[int, list[Count]] = {}


def beta_cyc_table(n: int) -> list[Count]:
    """beta_cyc for every mask of ambient n, indexed by mask."""
    if n <= 16:
        cached = _small_beta_cyc_tables.get(n)
        if cached is not None:
            return cached
    terms = [(d, mu, beta_table(n // d)) for d, mu in _square_free_divisors(n)]
    out = []
    for mask in range(1 << (n - 1)):
        size = mask.bit_count()
        total = 0
        for d, mu, table in terms:
            q = quotient_mask(mask, d, n)
            sign = -1 if (size - q.bit_count()) & 1 else 1
            total += mu * sign * table[q]
        value = exact_div(total, n, "beta_cyc_table")
        if value < 0:
            raise InvariantViolation(f"beta_cyc negative: n={n} mask={mask:#x}")
        out.append(value)
    if n <= 16:
        _small_beta_cyc_tables[n] = out
    return out


@dataclass(frozen=True)
class InversionReport:
    """Outcome of the exhaustive cross-inversion check at one ambient size."""

    n: int
    checked: int
    ok: bool
    counterexample: Optional[tuple[str, str, Count, Count]] = None


def verify_main_inversions(n: int) -> InversionReport:
    """Check both inverse identities for every subset of {1, ..., n-1}.

    For each I: alpha equals the divisor sum of scaled alpha_cyc values over
    d | gcd(I u {n}), and beta equals the signed divisor sum of scaled
    beta_cyc values over d | n.  Returns the first counterexample, if any.
    """
    if not 1 <= n <= 20:
        raise CapacityError(f"exhaustive inversion check capped at n = 20, got {n}")
    alphas = alpha_table(n)
    betas = beta_table(n)
    checked = 0
    for mask in range(1 << (n - 1)):
        size = mask.bit_count()
        m = n
        work = mask
        while work:
            low = work & -work
            m = math.gcd(m, low.bit_length())
            work ^= low
        lhs_a = 0
        for d in divisors(m):
            lhs_a += (n // d) * alpha_cyc_mask(n // d, quotient_mask(mask, d, n))
        if lhs_a != alphas[mask]:
            witness = DescentSet(n, mask).to_text()
            return InversionReport(n, checked, False,
                                   ("alpha-from-alpha-cyc", witness, lhs_a, alphas[mask]))
        lhs_b = 0
        for d in divisors(n):
            q = quotient_mask(mask, d, n)
            sign = -1 if (size - q.bit_count()) & 1 else 1
            lhs_b += sign * (n // d) * beta_cyc_mask(n // d, q)
        if lhs_b != betas[mask]:
            witness = DescentSet(n, mask).to_text()
            return InversionReport(n, checked, False,
                                   ("beta-from-beta-cyc", witness, lhs_b, betas[mask]))
        checked += 1
    return InversionReport(n, checked, True)


def cyclic_eulerian(n: int, k: int) -> Count:
    """n-cycles with exactly k-1 descents."""
    if not 1 <= k <= n:
        raise DomainError(f"cyclic eulerian index k={k} outside 1..{n}")
    total = 0
    for d, mu in _square_free_divisors(n):
        nd = n // d
        extra = n - nd
        for j in range(1, min(k, nd) + 1):
            if k - j > extra:
                continue
            sign = -1 if (k - j) & 1 else 1
            total += mu * sign * math.comb(extra, k - j) * eulerian(nd, j)
    value = exact_div(total, n, "cyclic_eulerian")
    if value < 0:
        raise InvariantViolation(f"cyclic_eulerian negative: n={n} k={k}")
    return value


def fixed_prefix_identity(n: int, I: DescentSet) -> tuple[Count, Count, bool]:
    """Pair beta_cyc over {I, I u {n-1}} against beta at size n-1.

    I must avoid n-1; returns (left side, right side, equality flag).
    """
    if n < 2:
        raise DomainError("fixed prefix identity needs n >= 2")
    if I.n != n or (n >= 2 and (n - 1) in I):
        raise DomainError(f"set {I.to_text()} must lie inside [1, {n - 2}]")
    lhs = beta_cyc_mask(n, I.mask) + beta_cyc_mask(n, I.mask | 1 << (n - 2))
    rhs = beta_mask(n - 1, I.mask)
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class GcdShortcuts:
    """Closed-form check results where a gcd hypothesis holds.

    contained: (alpha, n * alpha_cyc) when gcd(I u {n}) = 1.
    exact: (beta, n * beta_cyc + (-1)**|I|) when every element is coprime to n.
    """

    contained: Optional[tuple[Count, Count]] = None
    exact: Optional[tuple[Count, Count]] = None


def gcd_one_shortcuts(I: DescentSet) -> Optional[GcdShortcuts]:
    """Evaluate the coprime shortcut identities; None if neither applies."""
    n = I.n
    contained = None
    exact = None
    if descent_gcd(I) == 1:
        lhs = alpha_mask(n, I.mask)
        rhs = n * alpha_cyc_mask(n, I.mask)
        if lhs != rhs:
            raise InvariantViolation(
                f"coprime alpha shortcut failed at n={n} I={I.to_text()}")
        contained = (lhs, rhs)
    # the exact-count shortcut needs the divisors 1 and n distinct
    if n >= 2 and all(math.gcd(i, n) == 1 for i in I.elements()):
        lhs = beta_mask(n, I.mask)
        sign = -1 if len(I) & 1 else 1
        rhs = n * beta_cyc_mask(n, I.mask) + sign
        if lhs != rhs:
            raise InvariantViolation(
                f"coprime beta shortcut failed at n={n} I={I.to_text()}")
        exact = (lhs, rhs)
    if contained is None and exact is None:
        return None
    return GcdShortcuts(contained, exact)


def alternating_cycles(n: int) -> Count:
    """n-cycles whose descent set is the even positions (up-down cycles)."""
    if n < 1:
        raise DomainError(f"alternating cycles needs n >= 1, got {n}")
    if n % 2 == 1:
        total = 0
        for d, mu in _square_free_divisors(n):
            sign = -1 if ((d - 1) // 2) & 1 else 1
            total += mu * sign * euler_zigzag(n // d)
        return exact_div(total, n, "alternating_cycles")
    if n & (n - 1) == 0:
        return exact_div(euler_zigzag(n) - 1, n, "alternating_cycles")
    total = 0
    for d, mu in _square_free_divisors(n):
        if d % 2 == 1:
            total += mu * euler_zigzag(n // d)
    return exact_div(total, n, "alternating_cycles")


def _kz_general(n: int, k: int) -> Count:
    base = (n - 1) // k
    total = 0
    for d, mu in _square_free_divisors(n):
        lcm = k * d // math.gcd(k, d)
        sign = -1 if (base - (n - d) // lcm) & 1 else 1
        total += mu * sign * generalized_euler(n // d, k // math.gcd(k, d))
    return exact_div(total, n, "kz_cycles")


def _kz_coprime(n: int, k: int) -> Count:
    base = (n - 1) // k
    total = 0
    for d, mu in _square_free_divisors(n):
        sign = -1 if (base - (n - d) // (k * d)) & 1 else 1
        total += mu * sign * generalized_euler(n // d, k)
    return exact_div(total, n, "kz_cycles coprime branch")


def _is_odd_prime(k: int) -> bool:
    if k < 3 or k % 2 == 0:
        return False
    return all(k % p for p in range(3, math.isqrt(k) + 1, 2))


def _kz_odd_prime(n: int, p: int) -> Count:
    if n % p:
        return _kz_coprime(n, p)
    m = n
    while m % p == 0:
        m //= p
    if m == 1:
        return exact_div(generalized_euler(n, p) - 1, n, "kz prime-power branch")
    if m == 2:
        value = generalized_euler(n, p) + generalized_euler(n // 2, p) - 2
        return exact_div(value, n, "kz twice-prime-power branch")
    total = 0
    for d, mu in _square_free_divisors(m):
        sign = -1 if (n * (d - 1) // d) & 1 else 1
        total += mu * sign * generalized_euler(n // d, p)
    return exact_div(total, n, "kz odd-prime branch")


def kz_cycles(n: int, k: int, check_corollaries: bool = False) -> Count:
    """n-cycles whose descent set is the multiples of k below n.

    The general signed divisor sum is the single fast path; with
    check_corollaries the simplified coprime and odd-prime forms are also
    evaluated where their hypotheses hold and must agree.
    """
    if n < 1 or k < 1:
        raise DomainError(f"kz cycles needs n, k >= 1, got {n}, {k}")
    value = _kz_general(n, k)
    if check_corollaries:
        if math.gcd(k, n) == 1:
            other = _kz_coprime(n, k)
            if other != value:
                raise InvariantViolation(
                    f"kz coprime branch disagrees at n={n} k={k}: {other} != {value}")
        if _is_odd_prime(k):
            other = _kz_odd_prime(n, k)
            if other != value:
                raise InvariantViolation(
                    f"kz odd-prime branch disagrees at n={n} k={k}: {other} != {value}")
    return value


def complement_delta(I: DescentSet) -> Count:
    """beta_cyc difference between I and its complement, for n = 2 mod 4.

    Requires I to carry an odd number of odd elements; the difference then
    equals beta_cyc of I/2 at ambient n/2, which is returned.
    """
    n = I.n
    if n % 4 != 2:
        raise DomainError(f"complement delta needs n = 2 mod 4, got {n}")
    odd_elements = sum(1 for i in I.elements() if i % 2)
    if odd_elements % 2 == 0:
        raise DomainError(
            f"set {I.to_text()!r} must contain an odd number of odd elements")
    delta = beta_cyc_mask(n, I.mask) - beta_cyc_mask(n, I.complement().mask)
    value = beta_cyc_mask(n // 2, quotient_mask(I.mask, 2, n))
    if delta != value:
        raise InvariantViolation(
            f"complement delta mismatch at n={n} I={I.to_text()}: {delta} != {value}")
    if n >= 6:
        # At n = 2 the half-size empty set contributes 1, so the zero test
        # below only characterizes equality from n = 6 on.
        evens = I.mask & _even_mask(n)
        no_evens = evens == 0 or evens == _even_mask(n)
        if (delta == 0) != no_evens:
            raise InvariantViolation(
                f"complement equality criterion failed at n={n} I={I.to_text()}")
    return value


def _even_mask(n: int) -> int:
    return kz_mask(n, 2)
