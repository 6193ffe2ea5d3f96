# primorial/champions.py

"""
Champions of n -> Psi_t(n)/n and the primorial maximality check for R_t.

Psi_t(n)/n = prod_{p | n} (1 + 1/p + ... + 1/p^(t-1)) depends only on the
radical of n. A float log-sum sieve finds the candidates; anything within
the float tolerance of the running maximum is settled with exact rationals
or enclosures.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from config.settings import DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS, SCAN_LIMIT_BUDGET
from core.factorization import factorize
from core.primes import sieve_primes
from rigor.enclosure import Enclosure, less_than
from utils.errors import BudgetExceededError, DomainError
from utils.log import get_logger

log = get_logger("Champions")

# absolute tolerance on log values; float error of the log sums is far below it
_LOG_TOL = 1e-9


def log_psi_ratio_segment(lo: int, hi: int, t: int) -> np.ndarray:
    """
    Float log(Psi_t(n)/n) for n in [lo, hi).
    """
    if lo < 1 or hi <= lo:
        raise DomainError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    out = np.zeros(hi - lo, dtype=np.float64)
    primes = sieve_primes(hi - 1).primes
    if primes.size == 0:
        return out
    pf = primes.astype(np.float64)
    # log((1 - p^-t) / (1 - 1/p))
    weights = np.log1p(-(pf ** -t)) - np.log1p(-1.0 / pf)
    for p, w in zip(primes.tolist(), weights.tolist()):
        start = ((lo + p - 1) // p) * p
        if start < hi:
            out[start - lo:: p] += w
    return out


def psi_ratio_exact(n: int, t: int) -> Fraction:
    out = Fraction(1)
    for p, _ in factorize(n):
        out *= Fraction(p ** t - 1, p ** (t - 1) * (p - 1))
    return out


def _check_limit(limit: int):
    if limit > SCAN_LIMIT_BUDGET:
        raise BudgetExceededError(f"limit {limit} exceeds scan budget {SCAN_LIMIT_BUDGET}")


# =========================
# Champion scan
# =========================

def champion_scan(limit: int, t: int, strict: bool = True) -> List[int]:
    """
    All n <= limit with Psi_t(n)/n above (strict) or at least (weak) every
    earlier value. n = 1 is always the first champion.
    """
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
    if limit < 1:
        return []
    _check_limit(limit)

    vals = log_psi_ratio_segment(1, limit + 1, t)
    running = np.maximum.accumulate(vals)
    previous = np.concatenate(([-np.inf], running[:-1]))
    candidates = np.flatnonzero(vals >= previous - _LOG_TOL) + 1

    champions: List[int] = []
    best: Optional[Fraction] = None
    for n in candidates.tolist():
        value = psi_ratio_exact(n, t)
        if best is None or value > best or (not strict and value == best):
            champions.append(n)
        if best is None or value > best:
            best = value

    log.debug(f"{len(champions)} champions up to {limit} (t={t}, strict={strict}, {candidates.size} candidates)")
    return champions


# =========================
# Primorial maximality of R_t on [N_k, N_{k+1})
# =========================

@dataclass(frozen=True)
class MaximalityOutcome:
    k: int
    t: int
    holds: bool              # max of R_t over [N_k, N_{k+1}) is attained at N_k
    tie: bool                # some competitor could not be separated from N_k
    argmax: int
    max_value: Enclosure     # R_t(argmax)
    scanned: int

    def __bool__(self) -> bool:
        return self.holds


def r_t_exact_point(n: int, t: int, precision: int) -> Enclosure:
    """R_t(n) = (Psi_t(n)/n) / log log n for n >= 3."""
    ratio = psi_ratio_exact(n, t)
    loglog = Enclosure.from_int(n, precision).log().log()
    return Enclosure.from_ratio(ratio.numerator, ratio.denominator, precision) / loglog


def lemma202_check(k: int, t: int, precision: int = DEFAULT_PRECISION_BITS) -> MaximalityOutcome:
    """
    Exhaustive check that R_t(n) <= R_t(N_k) for N_k <= n < N_{k+1}.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")

    primes = sieve_primes(1000).as_list()[: k + 1]
    n_k = math.prod(primes[:k])
    n_next = n_k * primes[k]
    _check_limit(n_next)

    logs = log_psi_ratio_segment(n_k, n_next, t)
    ns = np.arange(n_k, n_next, dtype=np.float64)
    r_float = np.exp(logs) / np.log(np.log(ns))

    top = float(r_float.max())
    close = np.flatnonzero(r_float >= top * (1 - 1e-9)) + n_k

    reference = r_t_exact_point(n_k, t, precision)
    holds, tie = True, False
    argmax, max_value = n_k, reference
    for n in close.tolist():
        if n == n_k:
            continue
        verdict, value = _compare_to_primorial(n, n_k, t, precision)
        if verdict.is_false:
            holds = False
            if not less_than(value, max_value).is_true:
                argmax, max_value = n, value
        elif verdict.is_undecided:
            tie = True
            log.info(f"R_{t}({n}) not separated from R_{t}(N_{k}) at {MAX_PRECISION_BITS} bits")

    return MaximalityOutcome(k=k, t=t, holds=holds, tie=tie, argmax=argmax, max_value=max_value, scanned=n_next - n_k)


def _compare_to_primorial(n: int, n_k: int, t: int, precision: int):
    """Verdict of R_t(n) < R_t(N_k), doubling precision while undecided."""
    while True:
        value = r_t_exact_point(n, t, precision)
        verdict = less_than(value, r_t_exact_point(n_k, t, precision))
        if not verdict.is_undecided or precision >= MAX_PRECISION_BITS:
            return verdict, value
        precision = min(2 * precision, MAX_PRECISION_BITS)
