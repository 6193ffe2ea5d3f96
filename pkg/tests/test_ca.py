import math
from fractions import Fraction

import pytest

from ca.colossal import (
    MAX_LOG_N_BUDGET,
    ca_exponents,
    ca_sequence,
    critical_epsilon,
    log_objective,
)
from ca.robin_ca import (
    chain_deductions,
    check_records,
    robin_check_ca,
    robin_interval_deduction,
)
from core.factorization import factorize
from core.multiplicative import sigma
from core.primes import is_prime, next_prime
from rigor.enclosure import Enclosure, positive
from utils.errors import BudgetExceededError, CriticalEpsilonError, DeductionRefusedError, DomainError
from verify.checker import FAILS, HOLDS, INAPPLICABLE, check_one
from verify.inequalities import ROBIN

CA_START = [2, 6, 12, 60, 120, 360, 2520, 5040, 55440]


@pytest.fixture(scope="module")
def records():
    return ca_sequence(200)


# =========================
# Critical values
# =========================

@pytest.mark.parametrize(
    "p,k,value",
    ((2, 1, 0.5849625007), (3, 1, 0.2618595071), (2, 2, 0.2223924213), (5, 1, 0.1132827526)),
)
def test_critical_epsilon(p, k, value):
    assert abs(critical_epsilon(p, k, 128).mid_float() - value) < 1e-7


def test_critical_epsilon_needs_positive_k():
    with pytest.raises(DomainError):
        critical_epsilon(2, 0, 128)


# =========================
# Single epsilon
# =========================

def test_ca_exponents_tenth():
    v = ca_exponents(Fraction(1, 10))
    assert v.exponent_map() == {2: 2, 3: 1, 5: 1}
    assert v.n == 60
    assert v.largest_prime == 5


@pytest.mark.parametrize("eps", (1, "0.6", Fraction(3, 4)))
def test_large_epsilon_gives_two(eps):
    assert ca_exponents(eps).n == 2


def test_ca_exponents_rejects_non_positive():
    with pytest.raises(DomainError):
        ca_exponents(0)
    with pytest.raises(DomainError):
        ca_exponents("-0.1")


def test_ca_exponents_prime_budget():
    # eps(97, 1) is still above 0.001
    with pytest.raises(BudgetExceededError):
        ca_exponents("0.001", prime_limit=100)


def test_epsilon_at_a_critical_value():
    crit = critical_epsilon(3, 1, 2048)
    eps = (crit.lo_fraction() + crit.hi_fraction()) / 2
    with pytest.raises(CriticalEpsilonError):
        ca_exponents(eps)


def _perturbations(exponents):
    base = dict(exponents)
    new_prime = next_prime(max(base))
    for p in list(base) + [new_prime]:
        for delta in (-1, 1):
            a = base.get(p, 0) + delta
            if a < 0:
                continue
            changed = dict(base)
            changed[p] = a
            yield sorted(changed.items())


@pytest.mark.parametrize("eps", ("1/10", "1/20", "1/100", "1/1000"))
def test_ca_vector_is_local_maximum(eps):
    v = ca_exponents(eps)
    best = log_objective(v.exponents, eps, 256)
    for other in _perturbations(v.exponents):
        assert positive(best - log_objective(other, eps, 256)).is_true, other


def test_exponents_non_increasing():
    v = ca_exponents("1/1000")
    exps = [a for _, a in v.exponents]
    assert exps == sorted(exps, reverse=True)
    assert [p for p, _ in v.exponents] == [p for p in range(2, v.largest_prime + 1) if is_prime(p)]


# =========================
# Sequence
# =========================

def test_sequence_start():
    assert [v.n for v in ca_sequence(11.5)] == CA_START


def test_empty_and_over_budget():
    assert ca_sequence(0) == []
    with pytest.raises(BudgetExceededError):
        ca_sequence(MAX_LOG_N_BUDGET + 1)


def test_records_grow_by_one_prime(records):
    for a, b in zip(records, records[1:]):
        assert b.n % a.n == 0 and is_prime(b.n // a.n)
        assert positive(b.log_n - a.log_n).is_true
        assert b.index == a.index + 1


def test_records_match_single_epsilon(records):
    # the record for eps(p, k) is the CA number just below that critical value
    for v in records[1:12]:
        eps = v.epsilon.lo_fraction() * (1 - Fraction(1, 10 ** 9))
        assert ca_exponents(eps).n == v.n


def test_log_statistics_enclose_exact_values(records):
    for v in records:
        if v.n > 10 ** 12:
            break
        assert v.log_n.intersects(Enclosure.from_int(v.n, 256).log())
        exact = Enclosure.from_ratio(sigma(factorize(v.n)), v.n, 256).log()
        assert v.log_sigma_ratio.intersects(exact)
        assert abs(v.log_n.mid_float() - math.log(v.n)) < 1e-9


def test_recompute_keeps_vector(records):
    v = records[20]
    w = v.recompute(512)
    assert w.levels == v.levels and w.index == v.index
    assert v.log_n.intersects(w.log_n)
    assert w.log_n.width() < v.log_n.width()


def test_no_ties_at_small_scale(records):
    assert not any(v.tie for v in records)


# =========================
# Robin on records
# =========================

def test_robin_on_small_records(records):
    by_n = {v.n: robin_check_ca(v) for v in records if v.n <= 5040}
    assert by_n[2].status == INAPPLICABLE
    assert by_n[5040].status == FAILS
    for n, verdict in by_n.items():
        assert verdict.status == check_one(n, ROBIN).status


def test_robin_holds_beyond_5040(records):
    verdicts = check_records([v for v in records if v.log_n.lo_float() > math.log(5040)], workers=2)
    assert verdicts and all(r.status == HOLDS for r in verdicts)


def test_check_records_keeps_order(records):
    single = check_records(records[:30])
    pooled = check_records(records[:30], workers=4)
    assert [r.n for r in single] == [r.n for r in pooled] == [v.n for v in records[:30]]
    assert [r.status for r in single] == [r.status for r in pooled]


# =========================
# Interval deductions
# =========================

def test_deduction_between_holding_records(records):
    d = robin_interval_deduction(records[8], records[9])
    assert (d.n_lo, d.n_hi) == (55440, 720720)
    assert "[55440, 720720]" in d.statement()


def test_deduction_refused_at_5040(records):
    with pytest.raises(DeductionRefusedError):
        robin_interval_deduction(records[7], records[8])


def test_deduction_refused_for_non_consecutive(records):
    with pytest.raises(DeductionRefusedError):
        robin_interval_deduction(records[8], records[10])


def test_chain_coverage(records):
    chain = chain_deductions(records)
    assert [(lo, hi) for lo, hi, _ in chain.refusals] == [(i, i + 1) for i in range(8)]
    assert len(chain.deductions) == len(records) - 9
    assert chain.contiguous
    assert chain.covered_from is records[8].log_n
    assert chain.covered_to is records[-1].log_n
    assert chain.as_dict()["deductions"] == len(chain.deductions)


def test_large_records_are_not_materialized():
    v = ca_sequence(3000)[-1]
    assert v.n is None
    assert v.largest_prime > 2000
    d = robin_check_ca(v)
    assert d.holds and d.n is None


@pytest.mark.slow
def test_robin_up_to_log_million():
    seq = ca_sequence(10 ** 6)
    chain = chain_deductions(seq, workers=4)
    assert chain.contiguous
    assert len(chain.refusals) == 8
    assert chain.covered_to.hi_float() <= 10 ** 6
