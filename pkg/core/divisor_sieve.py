# core/divisor_sieve.py

"""
Segmented divisor-sum sieve.

For a segment [lo, hi) every divisor pair (d, m/d) with d <= sqrt(m) is
added once: d runs over 1..isqrt(hi-1) and clears its multiples m >= d^2
with one strided numpy slice. Square terms (m = d^2) add d only once.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from config.settings import DEFAULT_SEGMENT_SIZE, MIN_SEGMENT_SIZE, SIGMA_RANGE_BUDGET
from utils.errors import BudgetExceededError, DomainError

# sigma(n) < 7n below this, so every value fits int64
INT64_SIGMA_LIMIT = 10 ** 18


def sigma_segment(lo: int, hi: int) -> np.ndarray:
    """
    sigma(n) for n in [lo, hi) as int64. Segments reaching past
    INT64_SIGMA_LIMIT are refused rather than silently overflowing.
    """
    if lo < 1 or hi <= lo:
        raise DomainError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if hi - 1 > INT64_SIGMA_LIMIT:
        raise DomainError(f"sieve values overflow int64 past n = {INT64_SIGMA_LIMIT}, got hi = {hi}")

    size = hi - lo
    out = np.zeros(size, dtype=np.int64)

    for d in range(1, math.isqrt(hi - 1) + 1):
        d2 = d * d
        start = max(d2, ((lo + d - 1) // d) * d)
        if start >= hi:
            continue
        q0 = start // d
        count = (hi - 1 - start) // d + 1
        cofactors = np.arange(q0, q0 + count, dtype=np.int64)
        out[start - lo:: d] += cofactors + d
        if start == d2:
            out[start - lo] -= d

    return out


def sigma_range(
    lo: int,
    hi: int,
    segment_size: Optional[int] = None,
    workers: int = 1
) -> np.ndarray:
    """
    sigma(lo + i) for i in range(hi - lo).
    Segments may run concurrently; they are merged by index, so the
    output does not depend on segment size or worker count.
    """
    if lo < 1 or hi <= lo:
        raise DomainError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > SIGMA_RANGE_BUDGET:
        raise BudgetExceededError(f"range of {hi - lo} values exceeds budget {SIGMA_RANGE_BUDGET}")

    segment_size = segment_size or DEFAULT_SEGMENT_SIZE
    if segment_size < 1:
        raise DomainError("segment_size must be positive")

    bounds = segment_bounds(lo, hi, segment_size)
    if workers <= 1 or len(bounds) == 1:
        parts = [sigma_segment(a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: sigma_segment(*ab), bounds))

    return np.concatenate(parts)


def segment_bounds(lo: int, hi: int, segment_size: int) -> List[tuple]:
    return [(a, min(a + segment_size, hi)) for a in range(lo, hi, segment_size)]


def check_segment_size(segment_size: int):
    if segment_size < MIN_SEGMENT_SIZE:
        raise DomainError(f"segment_size must be >= {MIN_SEGMENT_SIZE}, got {segment_size}")
