# core/factorization.py

"""
Exact prime-power factorization of 64-bit naturals.
Trial division by small primes, deterministic Miller-Rabin, then
Pollard-Brent splitting with a fixed sequence of polynomial constants
(so every run follows the same path).
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

from core.primes import is_prime, _small_sieve
from utils.errors import DomainError

_U64_LIMIT = 1 << 64
_TRIAL_PRIMES = tuple(int(p) for p in _small_sieve(1000))


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: Tuple[Tuple[int, int], ...]     # (prime, exponent), primes strictly increasing

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.factors)

    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    @classmethod
    def from_pairs(cls, pairs) -> "Factorization":
        """Build from (prime, exponent) pairs; n is recomputed."""
        merged: Dict[int, int] = {}
        for p, e in pairs:
            if e < 0:
                raise DomainError(f"negative exponent for {p}")
            if e:
                merged[p] = merged.get(p, 0) + e
        n = 1
        for p, e in merged.items():
            n *= p ** e
        return cls(n=n, factors=tuple(sorted(merged.items())))


# =========================
# Pollard-Brent
# =========================

def _brent(n: int, c: int) -> int:
    """
    One Pollard-Brent attempt with f(x) = x^2 + c. Returns a divisor of n
    (possibly n itself on failure).
    """
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> int:
    """A proper divisor of the composite n."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        d = _brent(n, c)
        if 1 < d < n:
            return d
        c += 1


def _factor_into(n: int, acc: Dict[int, int]):
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _factor_into(r, acc)
        _factor_into(r, acc)
        return
    d = _split(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


def factorize(n: int) -> Factorization:
    """
    Prime-power decomposition of 1 <= n < 2^64; n = 1 gives no factors.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"factorize expects a positive integer, got {n!r}")
    if n >= _U64_LIMIT:
        raise DomainError(f"factorize is limited to n < 2^64, got {n}")

    acc: Dict[int, int] = {}
    m = n
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            acc[p] = e

    if m > 1:
        _factor_into(m, acc)

    return Factorization(n=n, factors=tuple(sorted(acc.items())))
