# core/primes.py

"""
Prime generation and deterministic primality.

- sieve_primes: odd-only segmented sieve of Eratosthenes on numpy arrays
- PrimeTable: immutable, shareable table of all primes <= limit
- is_prime: deterministic Miller-Rabin for n < 2^64
"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from config.settings import PRIME_LIMIT_BUDGET
from utils.errors import BudgetExceededError, DomainError, TableTooSmallError
from utils.log import get_logger

log = get_logger("PrimeSieve")

# Witnesses 2..37 are a proven deterministic set for every n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_U64_LIMIT = 1 << 64

_SEGMENT_ODDS = 1 << 22


# =========================
# Deterministic primality
# =========================

def is_prime(n: int) -> bool:
    """
    Deterministic Miller-Rabin for 0 <= n < 2^64.
    """
    if n >= _U64_LIMIT:
        raise DomainError(f"is_prime is deterministic only below 2^64, got {n}")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p

    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    candidate = max(n + 1, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


# =========================
# Prime table
# =========================

@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray     # int64, strictly increasing, read-only

    def __len__(self) -> int:
        return int(self.primes.size)

    def count_upto(self, x: int) -> int:
        """pi(x) for x <= limit."""
        self.require(x)
        return int(np.searchsorted(self.primes, x, side="right"))

    def upto(self, x: int) -> np.ndarray:
        """Read-only view of the primes <= x."""
        return self.primes[: self.count_upto(x)]

    def between(self, lo: int, hi: int) -> np.ndarray:
        """Primes p with lo < p <= hi."""
        self.require(hi)
        a = int(np.searchsorted(self.primes, lo, side="right"))
        b = int(np.searchsorted(self.primes, hi, side="right"))
        return self.primes[a:b]

    def nth(self, k: int) -> int:
        """p_k, 1-based (p_1 = 2)."""
        if k < 1:
            raise DomainError(f"prime index must be >= 1, got {k}")
        if k > self.primes.size:
            raise TableTooSmallError(f"table up to {self.limit} holds {self.primes.size} primes, asked for p_{k}")
        return int(self.primes[k - 1])

    def require(self, x: int):
        if x > self.limit:
            raise TableTooSmallError(f"prime table limit {self.limit} < {x}")

    def as_list(self) -> List[int]:
        return self.primes.tolist()


def _small_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve_primes(limit: int, segment_odds: int = _SEGMENT_ODDS) -> PrimeTable:
    """
    All primes <= limit.
    Odd-only segmented sieve: each segment covers 2*segment_odds integers,
    base primes up to sqrt(limit) clear their strided multiples.
    """
    if limit < 0:
        raise DomainError(f"limit must be >= 0, got {limit}")
    if limit > PRIME_LIMIT_BUDGET:
        raise BudgetExceededError(f"sieve limit {limit} exceeds budget {PRIME_LIMIT_BUDGET}")

    if limit < 2:
        return _freeze(limit, np.array([], dtype=np.int64))

    base = _small_sieve(math.isqrt(limit) + 1)
    chunks = [np.array([2], dtype=np.int64)]

    span = 2 * segment_odds
    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)            # exclusive, low odd
        odd_count = (high - low + 1) // 2
        mask = np.ones(odd_count, dtype=bool)

        for p in base[1:]:
            p = int(p)
            p2 = p * p
            if p2 >= high:
                break
            start = max(p2, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2:: p] = False

        idx = np.flatnonzero(mask)
        if idx.size:
            chunks.append(low + 2 * idx.astype(np.int64))
        low = high if high % 2 == 1 else high + 1

    primes = np.concatenate(chunks)
    primes = primes[primes <= limit]
    log.debug(f"sieved {primes.size} primes up to {limit}")
    return _freeze(limit, primes)


def _freeze(limit: int, primes: np.ndarray) -> PrimeTable:
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    primes.flags.writeable = False
    return PrimeTable(limit=limit, primes=primes)


def prime_limit_for_index(k: int) -> int:
    """
    Upper bound for p_k: k(log k + log log k) for k >= 6 (Rosser).
    """
    if k < 6:
        return 13
    lk = math.log(k)
    return int(k * (lk + math.log(lk))) + 3
