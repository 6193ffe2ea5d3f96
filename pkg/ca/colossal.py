# ca/colossal.py

"""
Colossally abundant numbers in log space.

For a prime p and k >= 1 the critical value

    eps(p, k) = log(1 + 1/(p + p^2 + ... + p^k)) / log p

is where the exponent of p in the CA number for eps moves from k-1 to k
as eps decreases. eps(p, k) decreases in both p and k, so the CA sequence
is the list of all (p, k) events sorted by decreasing eps(p, k).

Exponents are non-increasing in p, so a record is stored by its levels:
levels[j] = number of primes with exponent >= j + 1.
"""

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from config.settings import DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS, PRIME_LIMIT_BUDGET
from core.primes import PrimeTable, sieve_primes
from primorial.chebyshev import chunked_log_sum
from rigor.enclosure import Enclosure, Verdict3, greater_than
from utils.errors import BudgetExceededError, CriticalEpsilonError, DomainError
from utils.log import get_logger

log = get_logger("ColossalAbundant")

# ca_sequence works on primes up to about log n
MAX_LOG_N_BUDGET = 1_000_000
_FLOAT_TIE_TOL = 1e-12


@dataclass(frozen=True)
class CAExponentVector:
    epsilon: Optional[Enclosure]       # critical value that produced the record, or the given epsilon
    levels: Tuple[int, ...]            # levels[j] = #primes with exponent >= j+1
    log_n: Enclosure                   # sum a_p log p
    log_sigma_ratio: Enclosure         # log(sigma(n)/n)
    primes: np.ndarray                 # shared prime list (read-only)
    index: int = 0                     # position in the generated sequence
    tie: bool = False                  # epsilon could not be separated from the neighbouring event

    @property
    def exponents(self) -> List[Tuple[int, int]]:
        """(p, a_p) for every prime with a_p >= 1, increasing p."""
        if not self.levels:
            return []
        out = []
        for i in range(self.levels[0]):
            a = sum(1 for count in self.levels if count > i)
            out.append((int(self.primes[i]), a))
        return out

    def exponent_map(self) -> Dict[int, int]:
        return dict(self.exponents)

    @property
    def largest_prime(self) -> int:
        return int(self.primes[self.levels[0] - 1]) if self.levels else 1

    def materializable(self, max_bits: int = 4096) -> bool:
        return self.log_n.hi_float() < max_bits * math.log(2)

    @property
    def n(self) -> Optional[int]:
        if not self.materializable():
            return None
        out = 1
        for p, a in self.exponents:
            out *= p ** a
        return out

    def recompute(self, precision: int) -> "CAExponentVector":
        """Same vector with log_n and log_sigma_ratio rebuilt at a new precision."""
        log_n, log_ratio = log_statistics(self.exponents, precision)
        return CAExponentVector(
            epsilon=self.epsilon,
            levels=self.levels,
            log_n=log_n,
            log_sigma_ratio=log_ratio,
            primes=self.primes,
            index=self.index,
            tie=self.tie,
        )


# =========================
# Critical values
# =========================

def critical_epsilon(p: int, k: int, precision: int) -> Enclosure:
    """eps(p, k) = log((p^(k+1) - 1) / (p^(k+1) - p)) / log p."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    q = p ** (k + 1)
    return Enclosure.from_ratio(q - 1, q - p, precision).log() / Enclosure.from_int(p, precision).log()


def _critical_float(p: int, k: int) -> float:
    s = (p ** (k + 1) - p) // (p - 1)       # p + p^2 + ... + p^k
    return math.log1p(1.0 / s) / math.log(p)


def _increment(p: int, k: int) -> Tuple[int, int]:
    """sigma(p^k)/p^k divided by sigma(p^(k-1))/p^(k-1), as (num, den)."""
    return p ** (k + 1) - 1, p * (p ** k - 1)


def log_statistics(exponents: List[Tuple[int, int]], precision: int) -> Tuple[Enclosure, Enclosure]:
    """(log n, log sigma(n)/n) from (p, a_p) pairs, exact per chunk."""
    if not exponents:
        zero = Enclosure.from_int(0, precision)
        return zero, zero
    exp_of = dict(exponents)
    primes = np.array([p for p, _ in exponents], dtype=np.int64)
    top = max(a for _, a in exponents)
    bits = (top + 1) * int(primes[-1]).bit_length()
    log_n = chunked_log_sum(
        primes,
        lambda chunk: (math.prod(p ** exp_of[p] for p in chunk), 1),
        bits,
        precision,
    )
    log_ratio = chunked_log_sum(
        primes,
        lambda chunk: (
            math.prod(p ** (exp_of[p] + 1) - 1 for p in chunk),
            math.prod(p ** exp_of[p] * (p - 1) for p in chunk),
        ),
        bits,
        precision,
    )
    return log_n, log_ratio


def log_objective(exponents: List[Tuple[int, int]], epsilon: Union[Fraction, str], precision: int) -> Enclosure:
    """log(sigma(n) / n^(1+eps)) = log(sigma(n)/n) - eps log n."""
    log_n, log_ratio = log_statistics([(p, a) for p, a in exponents if a > 0], precision)
    return log_ratio - Enclosure.exact(epsilon, precision) * log_n


def _levels_from(exponents: List[int]) -> Tuple[int, ...]:
    top = max(exponents, default=0)
    return tuple(sum(1 for a in exponents if a >= j + 1) for j in range(top))


# =========================
# Single epsilon
# =========================

def _exceeds(p: int, k: int, epsilon: Fraction, precision: int) -> bool:
    """eps(p, k) > epsilon, escalating precision; raises on a tie."""
    while True:
        verdict = greater_than(critical_epsilon(p, k, precision), epsilon)
        if not verdict.is_undecided:
            return verdict.is_true
        if precision >= MAX_PRECISION_BITS:
            raise CriticalEpsilonError(f"epsilon {epsilon} is critical for p={p}, k={k} at {precision} bits")
        precision = min(2 * precision, MAX_PRECISION_BITS)


def ca_exponents(
    epsilon: Union[Fraction, str, int],
    prime_limit: int = 100_000,
    precision: int = DEFAULT_PRECISION_BITS
) -> CAExponentVector:
    """
    Exponent vector maximizing sigma(n)/n^(1+epsilon):
        a_p = floor(log_p((p^(1+eps) - 1)/(p^eps - 1))) - 1, clamped at 0.
    CA numbers start at 2, so any epsilon >= eps(2, 1) gives n = 2.
    """
    eps = Fraction(epsilon) if not isinstance(epsilon, Fraction) else epsilon
    if eps <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")

    table = sieve_primes(prime_limit)
    primes = table.as_list()

    exps: List[int] = []
    for p in primes:
        k = 0
        while _exceeds(p, k + 1, eps, precision):
            k += 1
        if k == 0:
            break
        exps.append(k)
    else:
        nxt = table.limit + 1
        raise BudgetExceededError(f"epsilon {epsilon} still assigns exponents to primes beyond {prime_limit} (from {nxt})")

    if not exps:
        exps = [1]     # n = 2

    exponents = list(zip(primes, exps))
    log_n, log_ratio = log_statistics(exponents, precision)
    return CAExponentVector(
        epsilon=Enclosure.exact(eps, precision),
        levels=_levels_from(exps),
        log_n=log_n,
        log_sigma_ratio=log_ratio,
        primes=table.primes,
    )


# =========================
# Sequence
# =========================

def _prime_table_for_log(max_log_n: float) -> PrimeTable:
    limit = int(1.2 * max_log_n) + 100
    if limit > PRIME_LIMIT_BUDGET:
        raise BudgetExceededError(f"prime limit {limit} exceeds budget")
    return sieve_primes(limit)


def _order_events(first, heap, primes, precision) -> Tuple[tuple, bool]:
    """
    The heap is ordered by float keys. Re-check the popped event against the
    new top with enclosures and swap when the floats had them misordered.
    """
    tie = False
    while heap and abs(heap[0][0] - first[0]) <= _FLOAT_TIE_TOL * abs(first[0]):
        top = heap[0]
        prec = precision
        while True:
            verdict: Verdict3 = greater_than(
                critical_epsilon(int(primes[top[1]]), top[2], prec),
                critical_epsilon(int(primes[first[1]]), first[2], prec),
            )
            if not verdict.is_undecided or prec >= MAX_PRECISION_BITS:
                break
            prec = min(2 * prec, MAX_PRECISION_BITS)
        if verdict.is_true:
            heapq.heapreplace(heap, first)
            first = top
            continue
        if verdict.is_undecided:
            tie = True
            log.warning(f"critical values of p={int(primes[first[1]])}, k={first[2]} and "
                        f"p={int(primes[top[1]])}, k={top[2]} not separated; both numbers are emitted")
        break
    return first, tie


def ca_sequence(
    max_log_n: float,
    precision: int = DEFAULT_PRECISION_BITS
) -> List[CAExponentVector]:
    """
    CA numbers with log n <= max_log_n, in increasing order.
    Each record is the previous one times a single prime.
    """
    if max_log_n <= 0:
        return []
    if max_log_n > MAX_LOG_N_BUDGET:
        raise BudgetExceededError(f"max_log_n {max_log_n} exceeds budget {MAX_LOG_N_BUDGET}")

    table = _prime_table_for_log(max_log_n)
    primes = table.primes
    n_primes = int(primes.size)

    levels: List[int] = []                    # mutable working copy
    log_n = Enclosure.from_int(0, precision)
    log_ratio = Enclosure.from_int(0, precision)
    log_n_float = 0.0

    # (-eps, prime index, k)
    heap = [(-_critical_float(2, 1), 0, 1)]
    records: List[CAExponentVector] = []

    while heap:
        event = heapq.heappop(heap)
        event, tie = _order_events(event, heap, primes, precision)
        neg_eps, i, k = event
        p = int(primes[i])

        log_p_float = math.log(p)
        if log_n_float + log_p_float > max_log_n:
            break

        # apply: exponent of primes[i] goes from k-1 to k
        if len(levels) < k:
            levels.append(0)
        levels[k - 1] += 1
        log_n = log_n + Enclosure.from_int(p, precision).log()
        log_ratio = log_ratio + Enclosure.from_ratio(*_increment(p, k), precision).log()
        log_n_float += log_p_float

        records.append(CAExponentVector(
            epsilon=critical_epsilon(p, k, precision),
            levels=tuple(levels),
            log_n=log_n,
            log_sigma_ratio=log_ratio,
            primes=primes,
            index=len(records),
            tie=tie,
        ))

        # next prime at the same level becomes available once it has exponent k-1
        if k == 1 and i + 1 >= n_primes:
            raise BudgetExceededError(f"prime table up to {table.limit} exhausted before log n = {max_log_n}")
        if k == 1 or levels[k - 2] > i + 1:
            heapq.heappush(heap, (-_critical_float(int(primes[i + 1]), k), i + 1, k))
        # next level for this prime becomes available once the previous prime has it
        if i == 0 or (len(levels) > k and levels[k] >= i):
            heapq.heappush(heap, (-_critical_float(p, k + 1), i, k + 1))

    log.info(f"{len(records)} CA records up to log n = {max_log_n}")
    return records
