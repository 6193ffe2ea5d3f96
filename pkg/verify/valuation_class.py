# verify/valuation_class.py

"""
Valuation families on which Robin's inequality is known to hold for
n >= 5041.

FAMILY rules (nu_p(n) bounded for one prime p from a range):
    nu_2 <= 20;  nu_5 <= 8;  nu_p <= 4 for 11 < p <= 19;
    nu_p <= 3 for 19 < p <= 41;  nu_p <= 2 for 41 < p <= 139;
    nu_p = 1 (EQ reading) or nu_p <= 1 (LE reading) for 139 < p <= 1777.
HERTLEIN rules: nu_2 <= 19, nu_3 <= 12, nu_5 <= 7, nu_7 <= 6, nu_11 <= 5.

Both readings of the last family rule are always reported.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from core.factorization import Factorization
from core.primes import sieve_primes

LE = "LE"
EQ = "EQ"


@dataclass(frozen=True)
class ValuationRule:
    name: str
    family: str              # FAMILY | HERTLEIN
    p_lo: int                # primes p with p_lo < p <= p_hi
    p_hi: int
    bound: int
    relation: str            # LE | EQ
    reading: str = "BOTH"    # BOTH | LE | EQ: which reading of the family the rule belongs to

    def primes(self) -> List[int]:
        return [p for p in _PRIMES if self.p_lo < p <= self.p_hi]

    def test(self, valuation: int) -> bool:
        if self.relation == EQ:
            return valuation == self.bound
        return valuation <= self.bound


@dataclass(frozen=True)
class Condition:
    rule: str
    p: int
    valuation: int
    satisfied: bool


@dataclass(frozen=True)
class RuleOutcome:
    rule: ValuationRule
    conditions: Tuple[Condition, ...]

    @property
    def satisfied(self) -> bool:
        return any(c.satisfied for c in self.conditions)


@dataclass(frozen=True)
class ValuationClass:
    n: int
    outcomes: Tuple[RuleOutcome, ...]

    def by_name(self) -> Dict[str, RuleOutcome]:
        return {o.rule.name: o for o in self.outcomes}

    def satisfied_rules(self, reading: str = LE) -> List[str]:
        return [
            o.rule.name for o in self.outcomes
            if o.satisfied and o.rule.reading in ("BOTH", reading)
        ]

    def robin_guaranteed(self, reading: str = LE) -> bool:
        """n >= 5041 and at least one rule of the reading applies."""
        return self.n >= 5041 and bool(self.satisfied_rules(reading))


_PRIMES = sieve_primes(2000).as_list()

FAMILY_RULES: Tuple[ValuationRule, ...] = (
    ValuationRule("nu_2<=20", "FAMILY", 1, 2, 20, LE),
    ValuationRule("nu_5<=8", "FAMILY", 4, 5, 8, LE),
    ValuationRule("nu_p<=4 (11<p<=19)", "FAMILY", 11, 19, 4, LE),
    ValuationRule("nu_p<=3 (19<p<=41)", "FAMILY", 19, 41, 3, LE),
    ValuationRule("nu_p<=2 (41<p<=139)", "FAMILY", 41, 139, 2, LE),
    ValuationRule("nu_p=1 (139<p<=1777)", "FAMILY", 139, 1777, 1, EQ, reading=EQ),
    ValuationRule("nu_p<=1 (139<p<=1777)", "FAMILY", 139, 1777, 1, LE, reading=LE),
)

HERTLEIN_RULES: Tuple[ValuationRule, ...] = (
    ValuationRule("hertlein nu_2<=19", "HERTLEIN", 1, 2, 19, LE),
    ValuationRule("hertlein nu_3<=12", "HERTLEIN", 2, 3, 12, LE),
    ValuationRule("hertlein nu_5<=7", "HERTLEIN", 4, 5, 7, LE),
    ValuationRule("hertlein nu_7<=6", "HERTLEIN", 6, 7, 6, LE),
    ValuationRule("hertlein nu_11<=5", "HERTLEIN", 10, 11, 5, LE),
)

ALL_RULES = FAMILY_RULES + HERTLEIN_RULES


def valuation_class(f: Factorization) -> ValuationClass:
    outcomes = []
    for rule in ALL_RULES:
        conditions = []
        for p in rule.primes():
            v = f.exponent(p)
            conditions.append(Condition(rule=rule.name, p=p, valuation=v, satisfied=rule.test(v)))
        outcomes.append(RuleOutcome(rule=rule, conditions=tuple(conditions)))
    return ValuationClass(n=f.n, outcomes=tuple(outcomes))
