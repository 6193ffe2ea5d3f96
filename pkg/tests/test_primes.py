from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from config.settings import PRIME_LIMIT_BUDGET
from core.primes import is_prime, next_prime, prime_limit_for_index, sieve_primes
from utils.errors import BudgetExceededError, DomainError, TableTooSmallError

SMALL_TABLE = sieve_primes(10_000)
SMALL_SET = set(SMALL_TABLE.as_list())


def test_first_primes():
    assert sieve_primes(30).as_list() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize(
    "limit,count",
    (
        (0, 0),
        (1, 0),
        (2, 1),
        (3, 2),
        (100, 25),
        (1000, 168),
        (10 ** 6, 78498),
    ),
)
def test_prime_counts(limit, count):
    assert len(sieve_primes(limit)) == count


def test_segmentation_does_not_change_result():
    whole = sieve_primes(200_000)
    segmented = sieve_primes(200_000, segment_odds=1000)
    assert np.array_equal(whole.primes, segmented.primes)


def test_table_is_read_only():
    with pytest.raises(ValueError):
        SMALL_TABLE.primes[0] = 4


def test_table_queries():
    table = sieve_primes(100)
    assert table.nth(1) == 2
    assert table.nth(25) == 97
    assert table.count_upto(50) == 15
    assert table.between(10, 20).tolist() == [11, 13, 17, 19]
    assert table.upto(10).tolist() == [2, 3, 5, 7]


def test_table_limits():
    table = sieve_primes(100)
    with pytest.raises(TableTooSmallError):
        table.nth(26)
    with pytest.raises(TableTooSmallError):
        table.count_upto(101)
    with pytest.raises(DomainError):
        table.nth(0)


def test_sieve_budget():
    with pytest.raises(BudgetExceededError):
        sieve_primes(PRIME_LIMIT_BUDGET + 1)
    with pytest.raises(DomainError):
        sieve_primes(-1)


@pytest.mark.parametrize(
    "n,expected",
    (
        (0, False),
        (1, False),
        (2, True),
        (561, False),                       # Carmichael
        (3215031751, False),                # strong pseudoprime to bases 2, 3, 5, 7
        (2 ** 31 - 1, True),
        (2 ** 61 - 1, True),
        (4294967291, True),
        (18446744073709551557, True),       # largest prime below 2^64
        (18446744073709551615, False),
        (29_996_208_012_611, True),
    ),
)
def test_is_prime_known_values(n, expected):
    assert is_prime(n) is expected


def test_is_prime_range():
    with pytest.raises(DomainError):
        is_prime(2 ** 64)


@given(st.integers(min_value=0, max_value=10_000))
def test_is_prime_agrees_with_sieve(n):
    assert is_prime(n) == (n in SMALL_SET)


@given(st.integers(min_value=0, max_value=9000))
def test_next_prime(n):
    p = next_prime(n)
    assert p > n and p in SMALL_SET
    assert not any(q in SMALL_SET for q in range(n + 1, p))


@settings(max_examples=50)
@given(st.integers(min_value=1, max_value=len(SMALL_TABLE)))
def test_prime_limit_for_index_bounds_p_k(k):
    assert SMALL_TABLE.nth(k) <= prime_limit_for_index(k)
