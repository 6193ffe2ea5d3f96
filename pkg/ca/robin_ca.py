# ca/robin_ca.py

"""
Robin's inequality on CA records, worked entirely in log space:

    log(sigma(n)/n) < gamma + log(log(log n))

and the interval rule: if two consecutive CA numbers satisfy it, so does
every n between them.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ca.colossal import CAExponentVector
from config.settings import DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS
from rigor.constants import euler_gamma
from rigor.enclosure import Enclosure, positive
from utils.errors import DeductionRefusedError
from utils.log import get_logger
from verify.checker import FAILS, HOLDS, INAPPLICABLE, UNDECIDED, Verdict

log = get_logger("RobinCA")

SPEC_ID = "ROBIN"
DEDUCTION_RULE = "consecutive CA numbers satisfying Robin's inequality bound every n between them"


def _margin(v: CAExponentVector, precision: int) -> Optional[Enclosure]:
    log_log_n = v.log_n.log()
    if not positive(log_log_n).is_true:
        return None
    return euler_gamma(precision) + log_log_n.log() - v.log_sigma_ratio


def robin_check_ca(v: CAExponentVector, precision: int = DEFAULT_PRECISION_BITS) -> Verdict:
    """
    HOLDS, FAILS or UNDECIDED for the record; INAPPLICABLE unless
    log log n is certainly positive (among CA numbers only n = 2).
    """
    current = v if v.log_n.precision == precision else v.recompute(precision)
    while True:
        margin = _margin(current, precision)
        if margin is None:
            return Verdict(v.n, SPEC_ID, INAPPLICABLE, None, precision)
        verdict = positive(margin)
        if verdict.is_true:
            return Verdict(v.n, SPEC_ID, HOLDS, margin, precision)
        if verdict.is_false:
            return Verdict(v.n, SPEC_ID, FAILS, margin, precision)
        if precision >= MAX_PRECISION_BITS:
            return Verdict(v.n, SPEC_ID, UNDECIDED, margin, precision)
        precision = min(2 * precision, MAX_PRECISION_BITS)
        current = v.recompute(precision)


def check_records(
    records: Sequence[CAExponentVector],
    precision: int = DEFAULT_PRECISION_BITS,
    workers: int = 1
) -> List[Verdict]:
    """robin_check_ca over a sequence, output in input order."""
    if workers > 1 and len(records) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda v: robin_check_ca(v, precision), records))
    return [robin_check_ca(v, precision) for v in records]


# =========================
# Interval deductions
# =========================

@dataclass(frozen=True)
class Deduction:
    index_lo: int
    index_hi: int
    n_lo: Optional[int]
    n_hi: Optional[int]
    log_n_lo: Enclosure
    log_n_hi: Enclosure
    rule: str = DEDUCTION_RULE

    def statement(self) -> str:
        lo = self.n_lo if self.n_lo is not None else f"exp({self.log_n_lo.lo_str(12)})"
        hi = self.n_hi if self.n_hi is not None else f"exp({self.log_n_hi.hi_str(12)})"
        return f"Robin's inequality holds for every n in [{lo}, {hi}]"


def robin_interval_deduction(
    v1: CAExponentVector,
    v2: CAExponentVector,
    verdict1: Optional[Verdict] = None,
    verdict2: Optional[Verdict] = None
) -> Deduction:
    """
    Apply the interval rule to two consecutive records. Verdicts are
    computed when not supplied; anything but HOLDS at either end refuses.
    """
    if v2.index != v1.index + 1:
        raise DeductionRefusedError(f"records {v1.index} and {v2.index} are not consecutive")
    verdict1 = verdict1 or robin_check_ca(v1)
    verdict2 = verdict2 or robin_check_ca(v2)
    for v, verdict in ((v1, verdict1), (v2, verdict2)):
        if not verdict.holds:
            raise DeductionRefusedError(f"record {v.index} is {verdict.status}")
    return Deduction(
        index_lo=v1.index,
        index_hi=v2.index,
        n_lo=v1.n,
        n_hi=v2.n,
        log_n_lo=v1.log_n,
        log_n_hi=v2.log_n,
    )


@dataclass(frozen=True)
class DeductionChain:
    deductions: Tuple[Deduction, ...]
    refusals: Tuple[Tuple[int, int, str], ...]     # (index_lo, index_hi, reason)
    covered_from: Optional[Enclosure]               # log n of the first covered record
    covered_to: Optional[Enclosure]                 # log n of the last covered record
    contiguous: bool                                # no refusal inside the covered range

    def as_dict(self) -> dict:
        return {
            "deductions": len(self.deductions),
            "refusals": [{"lo": a, "hi": b, "reason": r} for a, b, r in self.refusals],
            "covered_log_n_from": self.covered_from.to_dict() if self.covered_from else None,
            "covered_log_n_to": self.covered_to.to_dict() if self.covered_to else None,
            "contiguous": self.contiguous,
        }


def chain_deductions(
    records: Sequence[CAExponentVector],
    verdicts: Optional[Sequence[Verdict]] = None,
    precision: int = DEFAULT_PRECISION_BITS,
    workers: int = 1
) -> DeductionChain:
    """
    Deductions over every consecutive pair. Coverage runs from the first
    deduction to the last; it is contiguous when no refusal falls between.
    """
    if verdicts is None:
        verdicts = check_records(records, precision, workers)

    deductions: List[Deduction] = []
    refusals: List[Tuple[int, int, str]] = []
    for (v1, r1), (v2, r2) in zip(zip(records, verdicts), zip(records[1:], verdicts[1:])):
        try:
            deductions.append(robin_interval_deduction(v1, v2, r1, r2))
        except DeductionRefusedError as e:
            refusals.append((v1.index, v2.index, str(e)))

    if not deductions:
        return DeductionChain((), tuple(refusals), None, None, False)

    first, last = deductions[0], deductions[-1]
    contiguous = not any(first.index_lo <= lo and hi <= last.index_hi for lo, hi, _ in refusals)
    log.info(f"{len(deductions)} deductions, {len(refusals)} refusals")
    return DeductionChain(
        deductions=tuple(deductions),
        refusals=tuple(refusals),
        covered_from=first.log_n_lo,
        covered_to=last.log_n_hi,
        contiguous=contiguous,
    )
