# core/multiplicative.py

"""
Multiplicative functions on a Factorization.
All results are exact: arbitrary-precision ints or reduced Fractions.
Conventions for n = 1: sigma = phi = Psi_t = 1 (empty product).
"""

from fractions import Fraction

from core.factorization import Factorization
from core.primes import is_prime
from utils.errors import DomainError, NotPrimeError

# exact reduced rational; Fraction keeps gcd(num, den) = 1 and den >= 1
ExactRational = Fraction


def sigma(f: Factorization) -> int:
    """Sum of divisors, prod (p^(e+1) - 1) / (p - 1)."""
    out = 1
    for p, e in f:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def phi(f: Factorization) -> int:
    """Euler totient, n * prod (1 - 1/p)."""
    out = 1
    for p, e in f:
        out *= p ** (e - 1) * (p - 1)
    return out


def psi_t(f: Factorization, t: int) -> ExactRational:
    """
    Psi_t(n) = n * prod_{p|n} (1 + 1/p + ... + 1/p^(t-1)).
    Not integral in general: Psi_3(2) = 7/2.
    """
    _check_t(t)
    out = Fraction(f.n)
    for p, _ in f:
        # 1 + 1/p + ... + 1/p^(t-1) = (p^t - 1) / (p^(t-1) (p - 1))
        out *= Fraction(p ** t - 1, p ** (t - 1) * (p - 1))
    return out


def nu(n: int, p: int) -> int:
    """p-adic valuation of n."""
    if n < 1:
        raise DomainError(f"nu expects n >= 1, got {n}")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_t_free(f: Factorization, t: int) -> bool:
    """True iff no prime's t-th power divides n."""
    _check_t(t)
    return all(e <= t - 1 for _, e in f)


def sigma_over_n_totient_form(f: Factorization) -> ExactRational:
    """
    sigma(n)/n evaluated as (n / phi(n)) * prod (1 - 1/q^(1+e)).
    """
    out = Fraction(f.n, phi(f))
    for q, e in f:
        out *= 1 - Fraction(1, q ** (1 + e))
    return out


def sigma_ratio(f: Factorization) -> ExactRational:
    return Fraction(sigma(f), f.n)


def _check_t(t: int):
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
