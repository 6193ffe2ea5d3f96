# verify/checker.py

"""
Rigorous single-integer checks: exact sigma(n)/n against an enclosure of
the right-hand side, escalating precision while the comparison straddles.
"""

from dataclasses import dataclass
from typing import Optional

from config.settings import DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS
from core.factorization import factorize
from core.multiplicative import sigma
from rigor.constants import exp_euler_gamma
from rigor.enclosure import Enclosure, Verdict3, less_than, positive
from verify.inequalities import InequalitySpec, ROBIN_C0
from utils.errors import DomainError

HOLDS = "HOLDS"
FAILS = "FAILS"
INAPPLICABLE = "INAPPLICABLE"
UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Verdict:
    n: Optional[int]                   # None for CA records too large to materialize
    spec_id: str
    status: str                        # HOLDS | FAILS | INAPPLICABLE | UNDECIDED
    margin: Optional[Enclosure]        # rhs - sigma(n)/n; None when INAPPLICABLE
    precision: int

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS


def check_sigma(
    n: int,
    sigma_n: int,
    spec: InequalitySpec,
    precision: int = DEFAULT_PRECISION_BITS
) -> Verdict:
    """
    Same as check_one with sigma(n) already known (e.g. from the sieve).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n < 3:
        return Verdict(n, spec.id, INAPPLICABLE, None, precision)

    while True:
        ratio = Enclosure.from_ratio(sigma_n, n, precision)
        margin = spec.rhs(n, precision) - ratio
        verdict = positive(margin)
        if verdict.is_true:
            return Verdict(n, spec.id, HOLDS, margin, precision)
        if verdict.is_false:
            return Verdict(n, spec.id, FAILS, margin, precision)
        if precision >= MAX_PRECISION_BITS:
            return Verdict(n, spec.id, UNDECIDED, margin, precision)
        precision = min(2 * precision, MAX_PRECISION_BITS)


def check_one(n: int, spec: InequalitySpec, precision: int = DEFAULT_PRECISION_BITS) -> Verdict:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n < 3:
        return Verdict(n, spec.id, INAPPLICABLE, None, precision)
    return check_sigma(n, sigma(factorize(n)), spec, precision)


# =========================
# Where 0.6483 comes from
# =========================

@dataclass(frozen=True)
class ConstantOrigin:
    value: Enclosure          # (sigma(12)/12 - e^gamma log log 12) log log 12
    constant: str
    covers: Verdict3          # value < constant


def robin_c0_origin(precision: int = DEFAULT_PRECISION_BITS) -> ConstantOrigin:
    x = Enclosure.from_int(12, precision).log().log()
    ratio = Enclosure.from_ratio(sigma(factorize(12)), 12, precision)
    value = (ratio - exp_euler_gamma(precision) * x) * x
    constant = ROBIN_C0.constants_map["c"]
    return ConstantOrigin(value=value, constant=constant, covers=less_than(value, Enclosure.exact(constant, precision)))
