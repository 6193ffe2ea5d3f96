# primorial/chebyshev.py

"""
Chebyshev theta and Mertens products over a prime table.

Both are built from exact integer products over fixed-size chunks of
ascending primes; each chunk is converted to an enclosure once and the
chunk results are combined left to right. Chunking depends only on the
prime list, so the enclosure is the same whatever the worker count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, List, Sequence

import numpy as np

from config.settings import DEFAULT_PRECISION_BITS
from core.primes import PrimeTable
from rigor.enclosure import Enclosure
from utils.errors import DomainError

# Target size of one exact chunk product, in bits.
CHUNK_BITS = 1 << 16


def prime_chunks(primes: np.ndarray, bits_per_prime: int) -> Iterator[List[int]]:
    """Ascending slices of the prime list, each product ~CHUNK_BITS wide."""
    size = max(16, CHUNK_BITS // max(1, bits_per_prime))
    for start in range(0, primes.size, size):
        yield [int(p) for p in primes[start:start + size]]


def _bits(primes: np.ndarray, exponent: int = 1) -> int:
    if primes.size == 0:
        return 1
    return exponent * int(primes[-1]).bit_length()


def combine_in_order(parts: Sequence[Enclosure], op: Callable, start: Enclosure) -> Enclosure:
    acc = start
    for part in parts:
        acc = op(acc, part)
    return acc


def chunked_log_sum(
    primes: np.ndarray,
    chunk_ratio: Callable[[List[int]], tuple],
    bits_per_prime: int,
    precision: int,
    workers: int = 1
) -> Enclosure:
    """
    sum over chunks of log(num/den), where (num, den) = chunk_ratio(chunk).
    """
    chunks = list(prime_chunks(primes, bits_per_prime))

    def one(chunk):
        num, den = chunk_ratio(chunk)
        return Enclosure.from_ratio(num, den, precision).log()

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, chunks))
    else:
        parts = [one(c) for c in chunks]

    return combine_in_order(parts, lambda a, b: a + b, Enclosure.from_int(0, precision))


def chunked_product(
    primes: np.ndarray,
    chunk_ratio: Callable[[List[int]], tuple],
    bits_per_prime: int,
    precision: int
) -> Enclosure:
    """
    Product over chunks of num/den (exact per chunk, enclosed once).
    """
    parts = [Enclosure.from_ratio(*chunk_ratio(c), precision) for c in prime_chunks(primes, bits_per_prime)]
    return combine_in_order(parts, lambda a, b: a * b, Enclosure.from_int(1, precision))


# =========================
# Theta and Mertens
# =========================

def theta(x: int, table: PrimeTable, precision: int = DEFAULT_PRECISION_BITS, workers: int = 1) -> Enclosure:
    """
    theta(x) = sum_{p <= x} log p.
    """
    if x < 2:
        raise DomainError(f"theta needs x >= 2, got {x}")
    primes = table.upto(x)
    return chunked_log_sum(
        primes,
        lambda chunk: (math.prod(chunk), 1),
        _bits(primes),
        precision,
        workers
    )


def mertens_product(x: int, table: PrimeTable, precision: int = DEFAULT_PRECISION_BITS) -> Enclosure:
    """
    prod_{p <= x} p / (p - 1).
    """
    if x < 2:
        raise DomainError(f"mertens_product needs x >= 2, got {x}")
    primes = table.upto(x)
    return chunked_product(
        primes,
        lambda chunk: (math.prod(chunk), math.prod(p - 1 for p in chunk)),
        _bits(primes),
        precision
    )
