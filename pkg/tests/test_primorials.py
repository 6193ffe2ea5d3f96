from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import mpmath
import pytest

from core.primes import sieve_primes
from primorial.chebyshev import chunked_log_sum, mertens_product, prime_chunks, theta
from primorial.primorials import (
    PrimorialRecord,
    finite_euler_factor,
    primorial,
    r_t_direct,
    r_t_formula,
    r_t_limit,
    shared_table,
)
from rigor.constants import exp_euler_gamma
from rigor.enclosure import Enclosure
from utils.errors import DomainError, TableTooSmallError

PREC = 128
TABLE = sieve_primes(10 ** 6)


def _log_fraction(n: int) -> Fraction:
    with mpmath.workprec(400):
        p, q = mpmath.libmp.to_rational(mpmath.log(n)._mpf_)
    return Fraction(int(p), int(q))


# =========================
# Chebyshev theta / Mertens
# =========================

def test_theta_small():
    assert theta(2, TABLE, PREC).contains(_log_fraction(2))
    assert theta(10, TABLE, PREC).contains(_log_fraction(210))
    assert abs(theta(10, TABLE, PREC).mid_float() - 5.347107530717468) < 1e-12


def test_theta_million():
    ratio = theta(10 ** 6, TABLE, 64) / 10 ** 6
    assert 0.995 < ratio.lo_float() and ratio.hi_float() < 1.0


def test_theta_independent_of_workers():
    a = theta(10 ** 6, TABLE, PREC, workers=1)
    b = theta(10 ** 6, TABLE, PREC, workers=4)
    assert a.lo == b.lo and a.hi == b.hi


def test_chunks_keep_order():
    primes = TABLE.upto(10 ** 5)
    flat = [p for chunk in prime_chunks(primes, 20) for p in chunk]
    assert flat == primes.tolist()


@pytest.mark.parametrize("x,expected", ((2, Fraction(2)), (10, Fraction(35, 8))))
def test_mertens_small(x, expected):
    assert mertens_product(x, TABLE, PREC).contains(expected)


def test_mertens_million_close_to_egamma_log():
    ratio = mertens_product(10 ** 6, TABLE, PREC) / Enclosure.from_int(10 ** 6, PREC).log()
    assert abs(ratio.mid_float() - exp_euler_gamma(PREC).mid_float()) < 0.01


@pytest.mark.parametrize("x", (10 ** 3, 10 ** 4, 10 ** 5))
def test_mertens_theta_consistency(x):
    # prod p/(p-1) * exp(-theta) = prod 1/(p-1)
    primes = TABLE.upto(x)
    log_inv = -chunked_log_sum(primes, lambda c: (math.prod(p - 1 for p in c), 1), 20, PREC)
    lhs = mertens_product(x, TABLE, PREC).log() - theta(x, TABLE, PREC)
    assert lhs.intersects(log_inv)


def test_theta_domain():
    with pytest.raises(DomainError):
        theta(1, TABLE, PREC)


# =========================
# Primorials
# =========================

@pytest.mark.parametrize("k,n_k", ((1, 2), (5, 2310), (10, 6469693230)))
def test_materialized_primorials(k, n_k):
    rec = primorial(k, TABLE, PREC)
    assert rec.n_k == n_k
    assert rec.provenance == "sieve"


@pytest.mark.parametrize("k", range(1, 21))
def test_theta_encloses_log_primorial(k):
    rec = primorial(k, TABLE, PREC)
    assert rec.theta_pk.contains(_log_fraction(rec.n_k))


def test_external_anchor():
    rec = primorial(999_999_476_056)
    assert rec == PrimorialRecord(
        k=999_999_476_056, p_k=29_996_208_012_611, theta_pk=None, mertens=None, n_k=None, provenance="external"
    )


def test_table_too_small():
    with pytest.raises(TableTooSmallError):
        primorial(200, sieve_primes(100))


def test_shared_table_is_cached():
    assert shared_table(1000) is shared_table(1000)


# =========================
# R_t(N_k)
# =========================

def test_r2_of_six():
    # Psi_2(6) / 6 = 2, over log log 6
    with mpmath.workprec(400):
        p, q = mpmath.libmp.to_rational((2 / mpmath.log(mpmath.log(6)))._mpf_)
    enc = r_t_direct(2, 2, TABLE, PREC)
    assert enc.contains(Fraction(int(p), int(q)))
    assert abs(enc.mid_float() - 3.4294) < 1e-3


@pytest.mark.parametrize("k", (2, 3, 5, 8))
def test_r_t_increasing_in_t(k):
    # every factor 1 + 1/p + ... + 1/p^(t-1) gains a term as t grows
    values = [r_t_direct(k, t, TABLE, PREC) for t in range(2, 22)]
    for a, b in zip(values, values[1:]):
        assert b.lo_fraction() > a.hi_fraction()


def test_r_t_by_t_at_fifth_primorial():
    values = {t: r_t_direct(5, t, TABLE, PREC).mid_float() for t in (2, 3, 21)}
    assert abs(values[2] - 1.4617) < 1e-3
    assert abs(values[3] - 1.9578) < 1e-3
    assert abs(values[21] - 2.3509) < 1e-3


@pytest.mark.parametrize("k", range(2, 9))
@pytest.mark.parametrize("t,cutoff", ((7, 1000), (21, 1000)))
def test_direct_and_formula_intersect(k, t, cutoff):
    direct = r_t_direct(k, t, TABLE, PREC)
    formula = r_t_formula(k, t, TABLE, cutoff, PREC)
    assert direct.intersects(formula)
    assert direct.width_float() < 1e-6 and formula.width_float() < 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("k", range(2, 9))
def test_direct_and_formula_intersect_t2(k):
    table = sieve_primes(10 ** 7)
    direct = r_t_direct(k, 2, table, PREC)
    formula = r_t_formula(k, 2, table, 10 ** 7, PREC)
    assert direct.intersects(formula)
    assert formula.width_float() < 1e-6


def test_formula_width_scale():
    # the explicit tail bound 2/x dominates the width at t = 2
    enc = r_t_formula(5, 2, TABLE, 10 ** 6, PREC)
    assert enc.width_float() < 1e-5
    assert enc.intersects(r_t_direct(5, 2, TABLE, PREC))


def test_formula_needs_cutoff_beyond_p_k():
    with pytest.raises(DomainError):
        r_t_formula(10, 2, TABLE, 20, PREC)


def test_finite_euler_factor_empty():
    assert finite_euler_factor(2, 10, 10, TABLE, PREC).contains(1)


@pytest.mark.parametrize("k,t", ((1, 2), (5, 1)))
def test_r_t_domain(k, t):
    with pytest.raises(DomainError):
        r_t_direct(k, t, TABLE, PREC)


def test_limit_value():
    assert abs(r_t_limit(2, PREC).mid_float() - 1.0828) < 1e-4


def test_limit_trend():
    limit = r_t_limit(2, PREC)
    table = sieve_primes(110_000)
    gaps = [abs((r_t_direct(k, 2, table, PREC) - limit).mid_float()) for k in (10, 100, 1000, 10_000)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.05


@pytest.mark.parametrize("k", (169, 1000, 10_000, 78_498))
def test_t21_ratio_still_above_egamma_at_desk_scale(k):
    # N_k/phi(N_k) > e^gamma log log N_k, and prod (1 - p^-21) only removes
    # about 4.8e-7; the t-free bound needs p_k far beyond 10^6
    value = r_t_direct(k, 21, TABLE, PREC) / exp_euler_gamma(PREC)
    assert value.lo_fraction() > 1
    assert value.hi_float() < 1.05


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=60), st.integers(min_value=2, max_value=21))
def test_r_t_positive_and_finite(k, t):
    enc = r_t_direct(k, t, TABLE, PREC)
    assert 0 < enc.lo_float() <= enc.hi_float() < 10
