import pytest

from core.factorization import Factorization, factorize
from verify.valuation_class import EQ, LE, valuation_class


def _conditions(vc, rule_name):
    return {c.p: c for c in vc.by_name()[rule_name].conditions}


def test_power_of_two():
    vc = valuation_class(factorize(2 ** 21))
    assert not vc.by_name()["nu_2<=20"].satisfied
    assert vc.by_name()["nu_5<=8"].satisfied
    assert "hertlein nu_3<=12" in vc.satisfied_rules()


def test_5040():
    vc = valuation_class(factorize(5040))
    cond = _conditions(vc, "nu_2<=20")[2]
    assert cond.valuation == 4 and cond.satisfied


def test_thirteen_to_the_fifth():
    vc = valuation_class(factorize(13 ** 5))
    cond = _conditions(vc, "nu_p<=4 (11<p<=19)")[13]
    assert cond.valuation == 5 and not cond.satisfied
    assert vc.by_name()["nu_2<=20"].satisfied


def test_rule_prime_ranges():
    vc = valuation_class(factorize(5040))
    assert sorted(_conditions(vc, "nu_p<=4 (11<p<=19)")) == [13, 17, 19]
    assert sorted(_conditions(vc, "nu_p<=3 (19<p<=41)")) == [23, 29, 31, 37, 41]
    large = _conditions(vc, "nu_p<=1 (139<p<=1777)")
    assert min(large) == 149 and max(large) == 1777


def test_both_readings_of_the_last_rule():
    # nu_p = 0 for every p in (139, 1777]: only the LE reading is satisfied
    vc = valuation_class(factorize(5040))
    assert "nu_p<=1 (139<p<=1777)" in vc.satisfied_rules(LE)
    assert "nu_p=1 (139<p<=1777)" not in vc.satisfied_rules(EQ)

    vc = valuation_class(factorize(2 ** 30 * 149))
    assert "nu_p=1 (139<p<=1777)" in vc.satisfied_rules(EQ)
    assert "nu_p<=1 (139<p<=1777)" not in vc.satisfied_rules(EQ)


@pytest.mark.parametrize(
    "pairs,guaranteed",
    (
        (((2, 25), (3, 20), (5, 10), (7, 8), (11, 6), (13, 5), (17, 5), (19, 5)), True),   # nu_23 = 0
        (((2, 4), (3, 2), (5, 1), (7, 1)), False),                                           # n = 5040 < 5041
    ),
)
def test_robin_guaranteed(pairs, guaranteed):
    vc = valuation_class(Factorization.from_pairs(pairs))
    assert vc.robin_guaranteed(LE) is guaranteed
