import math

import pytest

from descyc.core import DescentSet, DomainError, divisors, mobius, quotient_mask
from descyc.cyclic import (
    alpha_cyc,
    alpha_cyc_mask,
    alternating_cycles,
    beta_cyc,
    beta_cyc_mask,
    beta_cyc_table,
    complement_delta,
    cyclic_eulerian,
    fixed_prefix_identity,
    gcd_one_shortcuts,
    kz_cycles,
    verify_main_inversions,
)
from descyc.linear import alpha_mask, beta_mask, kz_mask


def test_alpha_cyc_values():
    assert alpha_cyc(DescentSet.from_elements(3, [1])) == 1
    assert alpha_cyc(DescentSet(1)) == 1
    assert alpha_cyc(DescentSet.from_elements(2, [1])) == 1


def test_beta_cyc_values():
    assert beta_cyc(DescentSet.from_elements(3, [1])) == 1
    assert beta_cyc(DescentSet.from_elements(3, [1, 2])) == 0
    assert beta_cyc(DescentSet.from_elements(6, [3])) == 3
    assert beta_cyc_table(3) == [0, 1, 1, 0]
    # the empty descent set only admits the one-point cycle
    assert beta_cyc(DescentSet(1)) == 1
    for n in range(2, 12):
        assert beta_cyc_mask(n, 0) == 0


def test_tables_match_oracle(oracle_tables):
    for n in range(1, 9):
        b_table, bc_table, _ = oracle_tables(n)
        assert beta_cyc_table(n) == list(bc_table.counts)
        for mask in range(1 << (n - 1)):
            sub, a_sum, ac_sum = mask, 0, 0
            while True:
                a_sum += b_table.counts[sub]
                ac_sum += bc_table.counts[sub]
                if sub == 0:
                    break
                sub = (sub - 1) & mask
            assert alpha_mask(n, mask) == a_sum
            assert alpha_cyc_mask(n, mask) == ac_sum


def test_alpha_cyc_is_subset_sum_of_beta_cyc():
    for n in range(1, 11):
        table = beta_cyc_table(n)
        for mask in range(1 << (n - 1)):
            sub, acc = mask, 0
            while True:
                acc += table[sub]
                if sub == 0:
                    break
                sub = (sub - 1) & mask
            assert acc == alpha_cyc_mask(n, mask)


def test_main_inversions():
    for n in (1, 2, 3, 6, 12):
        report = verify_main_inversions(n)
        assert report.ok, report.counterexample
        assert report.checked == 1 << (n - 1)


def test_cyclic_eulerian():
    assert cyclic_eulerian(4, 2) == 3
    for n in range(2, 13):
        assert cyclic_eulerian(n, 1) == 0
    for n in range(1, 15):
        assert (sum(cyclic_eulerian(n, k) for k in range(1, n + 1))
                == math.factorial(n - 1))
    with pytest.raises(DomainError):
        cyclic_eulerian(4, 0)
    with pytest.raises(DomainError):
        cyclic_eulerian(4, 5)


def test_cyclic_eulerian_matches_descent_sums():
    for n in range(1, 13):
        table = beta_cyc_table(n)
        by_size = [0] * n
        for mask in range(1 << (n - 1)):
            by_size[mask.bit_count()] += table[mask]
        for k in range(1, n + 1):
            assert cyclic_eulerian(n, k) == by_size[k - 1]


def test_fixed_prefix_identity():
    lhs, rhs, ok = fixed_prefix_identity(4, DescentSet.from_elements(4, [2]))
    assert (lhs, rhs, ok) == (2, 2, True)
    assert fixed_prefix_identity(2, DescentSet(2)) == (1, 1, True)
    lhs, rhs, ok = fixed_prefix_identity(9, DescentSet.from_elements(9, [3, 6]))
    assert ok and lhs == rhs
    for n in range(2, 15):
        for mask in range(1 << (n - 2)):
            lhs, rhs, ok = fixed_prefix_identity(n, DescentSet(n, mask))
            assert ok, (n, mask, lhs, rhs)
    with pytest.raises(DomainError):
        fixed_prefix_identity(4, DescentSet.from_elements(4, [3]))


def test_gcd_shortcuts():
    both = gcd_one_shortcuts(DescentSet.from_elements(5, [2]))
    assert both.contained is not None and both.exact is not None
    assert gcd_one_shortcuts(DescentSet.from_elements(4, [2])) is None
    both_again = gcd_one_shortcuts(DescentSet.from_elements(6, [5]))
    assert both_again.contained == (6, 6)
    assert both_again.exact == (5, 5)
    only_contained = gcd_one_shortcuts(DescentSet.from_elements(6, [2, 3]))
    assert only_contained.contained is not None
    assert only_contained.exact is None
    for n in range(2, 15):
        for mask in range(1 << (n - 1)):
            I = DescentSet(n, mask)
            result = gcd_one_shortcuts(I)  # self-asserting
            elements = I.elements()
            applies = (math.gcd(n, *elements) if elements else n) == 1 or all(
                math.gcd(i, n) == 1 for i in elements)
            assert (result is not None) == applies


def test_alternating_cycles():
    assert alternating_cycles(1) == 1
    assert alternating_cycles(4) == 1
    assert alternating_cycles(8) == 173
    for n in range(1, 19):
        assert alternating_cycles(n) == beta_cyc_mask(n, kz_mask(n, 2)), n


def test_kz_cycles():
    assert kz_cycles(5, 3) == 2
    assert kz_cycles(6, 3) == 3
    for n in range(1, 19):
        for k in range(1, 6):
            expected = beta_cyc_mask(n, kz_mask(n, k))
            assert kz_cycles(n, k, check_corollaries=True) == expected, (n, k)
        # pattern longer than the word: the empty descent set
        assert kz_cycles(n, n + 1) == (1 if n == 1 else 0)
    with pytest.raises(DomainError):
        kz_cycles(0, 3)


def test_complement_equality_off_two_mod_four():
    for n in range(1, 13):
        if n % 4 == 2:
            continue
        table = beta_cyc_table(n)
        full = (1 << (n - 1)) - 1
        for mask in range(1 << (n - 1)):
            assert table[mask] == table[full ^ mask], (n, mask)


def test_complement_delta():
    assert complement_delta(DescentSet.from_elements(6, [1, 2])) == 1
    assert complement_delta(DescentSet.from_elements(6, [3])) == 0
    assert complement_delta(DescentSet.from_elements(2, [1])) == 1
    assert beta_cyc(DescentSet.from_elements(6, [1, 2])) == 2
    assert beta_cyc(DescentSet.from_elements(6, [3, 4, 5])) == 1
    for n in (6, 10):
        table = beta_cyc_table(n)
        full = (1 << (n - 1)) - 1
        for mask in range(1 << (n - 1)):
            I = DescentSet(n, mask)
            odd_count = sum(1 for i in I.elements() if i % 2)
            if odd_count % 2 == 0:
                with pytest.raises(DomainError):
                    complement_delta(I)
                continue
            value = complement_delta(I)  # self-asserting
            assert value == table[mask] - table[full ^ mask]
            assert value >= 0
    with pytest.raises(DomainError):
        complement_delta(DescentSet.from_elements(4, [1]))


def test_divisor_sum_definitions_directly():
    # beta_cyc and alpha_cyc written out longhand, as one more guard against
    # sign or quotient slips in the optimized paths
    for n in range(1, 11):
        for mask in range(1 << (n - 1)):
            total = 0
            for d in divisors(n):
                q = quotient_mask(mask, d, n)
                sign = (-1) ** (mask.bit_count() - q.bit_count())
                total += mobius(d) * sign * beta_mask(n // d, q)
            assert total == n * beta_cyc_mask(n, mask)
