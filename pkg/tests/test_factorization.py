import math

from hypothesis import given, settings, strategies as st
import pytest

from core.factorization import Factorization, factorize
from core.primes import is_prime
from utils.errors import DomainError


@pytest.mark.parametrize(
    "n,factors",
    (
        (1, ()),
        (2, ((2, 1),)),
        (12, ((2, 2), (3, 1))),
        (5040, ((2, 4), (3, 2), (5, 1), (7, 1))),
        (2 ** 63, ((2, 63),)),
        ((2 ** 31 - 1) * 4294967291, ((2 ** 31 - 1, 1), (4294967291, 1))),
        (4294967291 ** 2, ((4294967291, 2),)),
        (18446744073709551557, ((18446744073709551557, 1),)),
    ),
)
def test_known_factorizations(n, factors):
    assert factorize(n).factors == factors


@pytest.mark.parametrize("n", (0, -5, 2 ** 64))
def test_factorize_domain(n):
    with pytest.raises(DomainError):
        factorize(n)


def test_str_and_lookup():
    f = factorize(720)
    assert str(f) == "2^4 * 3^2 * 5"
    assert f.exponent(3) == 2
    assert f.exponent(7) == 0
    assert f.primes() == (2, 3, 5)
    assert str(factorize(1)) == "1"


def test_from_pairs_merges():
    f = Factorization.from_pairs([(3, 1), (2, 2), (3, 1), (5, 0)])
    assert f.n == 36
    assert f.factors == ((2, 2), (3, 2))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=2 ** 64 - 1))
def test_factorization_reconstructs(n):
    f = factorize(n)
    assert math.prod(p ** e for p, e in f) == n
    assert all(is_prime(p) and e >= 1 for p, e in f)
    assert list(f.primes()) == sorted(f.primes())
