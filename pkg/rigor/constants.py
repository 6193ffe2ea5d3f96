# rigor/constants.py

"""
Rigorous enclosures of the constants the inequality checks need.

euler_gamma
    Euler-Maclaurin expansion of the harmonic numbers,
        gamma = H_N - log N - 1/(2N) + sum_{k=1..m} B_2k / (2k N^2k) + R,
    |R| <= |B_(2m+2)| / ((2m+2) N^(2m+2)) (first omitted term).
    H_N and the Bernoulli terms are exact rationals; only log N is rounded.

zeta_int
    Euler-Maclaurin for zeta at an integer s >= 2,
        zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
                  + sum_{k=1..m} B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k) + R,
    with |R| bounded by the first omitted correction. Every term is an exact
    rational, so the only rounding is the final conversion.

tail_product_upper
    prod_{p > x} (1 - p^-t)^-1 <= exp(t / ((t-1) x^(t-1))).
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

from config.settings import MIN_PRECISION_BITS
from rigor.enclosure import Enclosure
from utils.errors import DomainError

# guard bits for intermediate rounding
_GUARD = 16


def _bernoulli(n: int) -> Fraction:
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


def _bracket(lo: Fraction, hi: Fraction, precision: int) -> Enclosure:
    """Outward enclosure of the exact interval [lo, hi]."""
    return Enclosure(Enclosure.exact(lo, precision).lo, Enclosure.exact(hi, precision).hi, precision)


def _check_precision(precision: int):
    if precision < MIN_PRECISION_BITS:
        raise DomainError(f"precision must be >= {MIN_PRECISION_BITS} bits, got {precision}")


# =========================
# Euler's constant
# =========================

@lru_cache(maxsize=None)
def euler_gamma(precision: int) -> Enclosure:
    """
    Enclosure of Euler's constant, width < 2^(4 - precision).
    """
    _check_precision(precision)
    wp = precision + _GUARD
    target = Fraction(1, 1 << (wp + 2))

    # the smallest Euler-Maclaurin term is about exp(-2 pi N) ~ 2^(-9N)
    n = (wp + 16) // 9 + 1

    harmonic = sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))
    series = harmonic - Fraction(1, 2 * n)
    k = 1
    while True:
        term = _bernoulli(2 * k) / (2 * k * Fraction(n) ** (2 * k))
        nxt = abs(_bernoulli(2 * k + 2)) / ((2 * k + 2) * Fraction(n) ** (2 * k + 2))
        series += term
        remainder = nxt
        if nxt < target or k > 4 * n:
            break
        k += 1

    exact_part = _bracket(series - remainder, series + remainder, wp)
    return exact_part - Enclosure.from_int(n, wp).log()


@lru_cache(maxsize=None)
def exp_euler_gamma(precision: int) -> Enclosure:
    """e^gamma."""
    return euler_gamma(precision + 4).exp()


# =========================
# Zeta at integers
# =========================

def _zeta_tail_terms(s: int, n: int, target: Fraction):
    """
    Exact Euler-Maclaurin tail at N = n: (value, remainder bound).
    """
    nf = Fraction(n)
    value = nf ** (1 - s) / (s - 1) + nf ** (-s) / 2
    rising = s              # s (s+1) ... (s+2k-2)
    k = 1
    while True:
        term = _bernoulli(2 * k) / factorial(2 * k) * rising / nf ** (s + 2 * k - 1)
        rising_next = rising * (s + 2 * k - 1) * (s + 2 * k)
        nxt = abs(_bernoulli(2 * k + 2)) / factorial(2 * k + 2) * rising_next / nf ** (s + 2 * k + 1)
        value += term
        if nxt < target or k > 2 * n:
            return value, nxt
        rising = rising_next
        k += 1


@lru_cache(maxsize=None)
def zeta_int(t: int, precision: int) -> Enclosure:
    """
    Enclosure of zeta(t) for an integer t >= 2.
    """
    if t < 2:
        raise DomainError(f"zeta_int needs t >= 2, got {t}")
    _check_precision(precision)
    wp = precision + _GUARD
    target = Fraction(1, 1 << (wp + 2))

    n = max(8, wp // 8 + 8)
    head = sum((Fraction(1, j ** t) for j in range(1, n)), Fraction(0))
    tail, remainder = _zeta_tail_terms(t, n, target)
    value = head + tail
    return _bracket(value - remainder, value + remainder, wp)


def zeta_partial_enclosure(t: int, n_terms: int, precision: int) -> Enclosure:
    """
    Plain partial sum over n <= N plus the integral tail
    [(N+1)^(1-t)/(t-1), N^(1-t)/(t-1)]. Width <= 2 N^(1-t)/(t-1).
    """
    if t < 2:
        raise DomainError(f"zeta needs t >= 2, got {t}")
    if n_terms < 1:
        raise DomainError("need at least one term")
    head = sum((Fraction(1, j ** t) for j in range(1, n_terms + 1)), Fraction(0))
    lo = head + Fraction(1, (t - 1) * (n_terms + 1) ** (t - 1))
    hi = head + Fraction(1, (t - 1) * n_terms ** (t - 1))
    return _bracket(lo, hi, precision)


# =========================
# Prime-product tails
# =========================

def tail_product_log_upper(t: int, x: Enclosure) -> Enclosure:
    """
    t / ((t-1) x^(t-1)) evaluated at x.lo; an upper bound for
    log prod_{p > x} (1 - p^-t)^-1.
    """
    if t < 2:
        raise DomainError(f"tail bound needs t >= 2, got {t}")
    if not x.lo_fraction() > 1:
        raise DomainError("tail bound needs x > 1")
    x_lo = Enclosure(x.lo, x.lo, x.precision)
    return Enclosure.from_int(t, x.precision) / ((t - 1) * x_lo ** (t - 1))


def tail_product_upper(t: int, x: Enclosure) -> Enclosure:
    """
    Upper bound U >= prod_{p > x} (1 - p^-t)^-1; callers use U.hi.
    """
    return tail_product_log_upper(t, x).exp()


def tail_product_upper_at(t: int, x: int, precision: int) -> Enclosure:
    return tail_product_upper(t, Enclosure.from_int(x, precision))
