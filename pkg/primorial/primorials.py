# primorial/primorials.py

"""
Primorials N_k and the normalized ratio

    R_t(N_k) = Psi_t(N_k) / (N_k log theta(p_k)),

evaluated directly (product over p <= p_k) and through the zeta identity

    R_t(N_k) = prod_{p > p_k} (1 - p^-t)^-1 / (zeta(t) log theta(p_k))
               * prod_{p <= p_k} p / (p - 1).

N_k itself is only materialized for small k; everything else works from
the prime list.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional

from config.settings import DEFAULT_PRECISION_BITS, PRIME_LIMIT_BUDGET, PRIMORIAL_MATERIALIZE_MAX
from core.primes import PrimeTable, is_prime, prime_limit_for_index, sieve_primes
from primorial.chebyshev import chunked_log_sum, chunked_product, mertens_product, theta
from rigor.constants import exp_euler_gamma, tail_product_upper_at, zeta_int
from rigor.enclosure import Enclosure
from utils.errors import BudgetExceededError, DomainError, TableTooSmallError
from utils.log import get_logger

log = get_logger("Primorials")

# Prime indices whose p_k is known from the literature but lies far beyond
# any desk-scale sieve.
EXTERNAL_PRIME_ANCHORS: Dict[int, int] = {
    999_999_476_056: 29_996_208_012_611,
}


@dataclass(frozen=True)
class PrimorialRecord:
    k: int
    p_k: int
    theta_pk: Optional[Enclosure]   # log N_k; None when p_k comes from an external anchor
    mertens: Optional[Enclosure]    # prod_{p <= p_k} p / (p - 1)
    n_k: Optional[int]              # only for k <= PRIMORIAL_MATERIALIZE_MAX
    provenance: str = "sieve"       # sieve | external


@lru_cache(maxsize=4)
def shared_table(limit: int) -> PrimeTable:
    """Prime tables are immutable, so one per limit is enough."""
    return sieve_primes(limit)


def table_for_index(k: int) -> PrimeTable:
    limit = prime_limit_for_index(k)
    if limit > PRIME_LIMIT_BUDGET:
        raise BudgetExceededError(f"p_{k} is beyond the sieve budget {PRIME_LIMIT_BUDGET}")
    return shared_table(limit)


def _resolve_table(k: int, table: Optional[PrimeTable]) -> PrimeTable:
    if table is None:
        return table_for_index(k)
    if k > len(table):
        raise TableTooSmallError(f"table up to {table.limit} holds {len(table)} primes, asked for p_{k}")
    return table


# =========================
# Primorial records
# =========================

def primorial(
    k: int,
    table: Optional[PrimeTable] = None,
    precision: int = DEFAULT_PRECISION_BITS
) -> PrimorialRecord:
    if k < 1:
        raise DomainError(f"primorial index must be >= 1, got {k}")

    if k in EXTERNAL_PRIME_ANCHORS and (table is None or k > len(table)):
        p_k = EXTERNAL_PRIME_ANCHORS[k]
        if not is_prime(p_k):
            raise DomainError(f"anchor p_{k} = {p_k} is not prime")
        log.info(f"p_{k} = {p_k} taken from external anchor")
        return PrimorialRecord(k=k, p_k=p_k, theta_pk=None, mertens=None, n_k=None, provenance="external")

    table = _resolve_table(k, table)
    p_k = table.nth(k)
    n_k = None
    if k <= PRIMORIAL_MATERIALIZE_MAX:
        n_k = math.prod(int(p) for p in table.primes[:k])

    return PrimorialRecord(
        k=k,
        p_k=p_k,
        theta_pk=theta(p_k, table, precision),
        mertens=mertens_product(p_k, table, precision),
        n_k=n_k,
    )


# =========================
# R_t(N_k)
# =========================

def _check_rt_args(k: int, t: int):
    if k < 2:
        raise DomainError(f"R_t(N_k) needs k >= 2 (log log N_1 < 0), got k={k}")
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")


def log_log_primorial(k: int, table: PrimeTable, precision: int) -> Enclosure:
    return theta(table.nth(k), table, precision).log()


def r_t_direct(
    k: int,
    t: int,
    table: Optional[PrimeTable] = None,
    precision: int = DEFAULT_PRECISION_BITS
) -> Enclosure:
    """
    exp(sum_{p <= p_k} log(1 + 1/p + ... + 1/p^(t-1))) / log theta(p_k)
    """
    _check_rt_args(k, t)
    table = _resolve_table(k, table)
    primes = table.primes[:k]

    # 1 + 1/p + ... + 1/p^(t-1) = (p^t - 1) / (p^(t-1) (p - 1))
    log_psi = chunked_log_sum(
        primes,
        lambda chunk: (
            math.prod(p ** t - 1 for p in chunk),
            math.prod(p ** (t - 1) * (p - 1) for p in chunk),
        ),
        t * int(primes[-1]).bit_length(),
        precision,
    )
    return log_psi.exp() / log_log_primorial(k, table, precision)


def finite_euler_factor(t: int, lo: int, hi: int, table: PrimeTable, precision: int) -> Enclosure:
    """prod_{lo < p <= hi} (1 - p^-t)^-1."""
    primes = table.between(lo, hi)
    if primes.size == 0:
        return Enclosure.from_int(1, precision)
    return chunked_product(
        primes,
        lambda chunk: (math.prod(p ** t for p in chunk), math.prod(p ** t - 1 for p in chunk)),
        t * int(primes[-1]).bit_length(),
        precision,
    )


def r_t_formula(
    k: int,
    t: int,
    table: PrimeTable,
    tail_cutoff: int,
    precision: int = DEFAULT_PRECISION_BITS
) -> Enclosure:
    """
    R_t(N_k) through zeta(t). The tail over p > p_k is enclosed by
    [finite product up to tail_cutoff, same product * tail_product_upper].
    """
    _check_rt_args(k, t)
    table = _resolve_table(k, table)
    p_k = table.nth(k)
    if tail_cutoff < p_k:
        raise DomainError(f"tail_cutoff {tail_cutoff} must be >= p_k = {p_k}")
    table.require(tail_cutoff)

    finite = finite_euler_factor(t, p_k, tail_cutoff, table, precision)
    upper = finite * tail_product_upper_at(t, max(tail_cutoff, 2), precision)
    tail = Enclosure(finite.lo, upper.hi, precision)

    denominator = zeta_int(t, precision) * log_log_primorial(k, table, precision)
    return tail / denominator * mertens_product(p_k, table, precision)


def r_t_limit(t: int, precision: int = DEFAULT_PRECISION_BITS) -> Enclosure:
    """lim_k R_t(N_k) = e^gamma / zeta(t)."""
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
    return exp_euler_gamma(precision) / zeta_int(t, precision)
