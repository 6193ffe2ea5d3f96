# verify/range_scanner.py

"""
Two-phase range verification.

1. sigma over the segment from the divisor sieve, sigma(n)/n and the
   right-hand side in hardware floats; n is a candidate when
   sigma(n)/n >= rhs * (1 - slack).
2. Every candidate is re-checked rigorously (exact sigma(n)/n against an
   enclosure of the right-hand side).

Segments run on a thread pool and are merged by segment index, so the
report does not depend on the worker count.
"""

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from config.settings import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_SEGMENT_SIZE,
    DEFAULT_WORKERS,
    FLOAT_FILTER_SLACK,
    MIN_PRECISION_BITS,
    MAX_PRECISION_BITS,
    SCAN_LIMIT_BUDGET,
    SCAN_RANGE_BUDGET,
    SIGMA_RANGE_BUDGET,
)
from core.divisor_sieve import check_segment_size, segment_bounds, sigma_range
from verify.checker import FAILS, HOLDS, UNDECIDED, check_sigma
from verify.inequalities import InequalitySpec
from utils.errors import BudgetExceededError, DomainError
from utils.log import get_logger

log = get_logger("RangeScanner")


@dataclass(frozen=True)
class ScanConfig:
    precision: int = DEFAULT_PRECISION_BITS
    segment_size: int = DEFAULT_SEGMENT_SIZE
    workers: int = DEFAULT_WORKERS

    def validate(self):
        if not MIN_PRECISION_BITS <= self.precision <= MAX_PRECISION_BITS:
            raise DomainError(f"precision must be in [{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}], got {self.precision}")
        check_segment_size(self.segment_size)
        if self.segment_size > SIGMA_RANGE_BUDGET:
            raise BudgetExceededError(f"segment_size {self.segment_size} exceeds the sieve budget {SIGMA_RANGE_BUDGET}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")

    def as_dict(self) -> Dict[str, int]:
        return {"precision": self.precision, "segment_size": self.segment_size, "workers": self.workers}


@dataclass
class SegmentResult:
    index: int
    violations: List[int] = field(default_factory=list)
    inapplicable: List[int] = field(default_factory=list)
    undecided: List[int] = field(default_factory=list)
    holds: int = 0
    rechecked: int = 0


@dataclass
class VerificationReport:
    spec_id: str
    lo: int
    hi: int
    violations: List[int]
    inapplicable: List[int]
    undecided: List[int]
    counts: Dict[str, int]          # holds, fails, inapplicable, undecided, rechecked, total
    wall_time: float
    config: ScanConfig

    @property
    def clean(self) -> bool:
        return not self.violations and not self.undecided


class RangeScanner:
    """
    Runs one spec over [lo, hi). The progress counter is the only state
    shared between worker threads.
    """

    def __init__(self, spec: InequalitySpec, config: Optional[ScanConfig] = None):
        self.spec = spec
        self.config = config or ScanConfig()
        self.config.validate()

        self._lock = threading.Lock()
        self.segments_done = 0
        self.segments_total = 0

    # ---------------------
    # Per-segment work
    # ---------------------
    def _scan_segment(self, index: int, lo: int, hi: int) -> SegmentResult:
        result = SegmentResult(index=index)

        sig = sigma_range(lo, hi, segment_size=hi - lo)
        first = max(lo, 3)
        result.inapplicable = list(range(lo, first))

        if first < hi:
            offset = first - lo
            ns = np.arange(first, hi, dtype=np.float64)
            ratio = sig[offset:].astype(np.float64) / ns
            rhs = self.spec.rhs_float(np.log(np.log(ns)))
            candidates = np.flatnonzero(ratio >= rhs * (1.0 - FLOAT_FILTER_SLACK)) + first

            for n in candidates.tolist():
                verdict = check_sigma(n, int(sig[n - lo]), self.spec, self.config.precision)
                if verdict.status == FAILS:
                    result.violations.append(n)
                elif verdict.status == UNDECIDED:
                    result.undecided.append(n)
                elif verdict.status != HOLDS:
                    result.inapplicable.append(n)
            result.rechecked = int(candidates.size)
            result.holds = (hi - first) - len(result.violations) - len(result.undecided)

        self._mark_done(lo, hi)
        return result

    def _mark_done(self, lo: int, hi: int):
        with self._lock:
            self.segments_done += 1
            done = self.segments_done
        log.info(f"{self.spec.id} segment [{lo}, {hi}) done ({done}/{self.segments_total})")

    # ---------------------
    # Whole range
    # ---------------------
    def scan(self, lo: int, hi: int) -> VerificationReport:
        if lo < 1 or hi <= lo:
            raise DomainError(f"need 1 <= lo < hi, got [{lo}, {hi})")
        if hi - lo > SCAN_RANGE_BUDGET:
            raise BudgetExceededError(f"range of {hi - lo} integers exceeds scan budget {SCAN_RANGE_BUDGET}")

        started = time.time()
        bounds = segment_bounds(lo, hi, self.config.segment_size)
        self.segments_total = len(bounds)
        self.segments_done = 0

        if self.config.workers <= 1 or len(bounds) == 1:
            parts = [self._scan_segment(i, a, b) for i, (a, b) in enumerate(bounds)]
        else:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                futures = [pool.submit(self._scan_segment, i, a, b) for i, (a, b) in enumerate(bounds)]
                parts = [f.result() for f in futures]

        parts.sort(key=lambda r: r.index)
        violations = [n for r in parts for n in r.violations]
        inapplicable = sorted(n for r in parts for n in r.inapplicable)
        undecided = [n for r in parts for n in r.undecided]
        counts = {
            "holds": sum(r.holds for r in parts),
            "fails": len(violations),
            "inapplicable": len(inapplicable),
            "undecided": len(undecided),
            "rechecked": sum(r.rechecked for r in parts),
            "total": hi - lo,
        }
        if undecided:
            log.warning(f"{len(undecided)} values stayed undecided at {MAX_PRECISION_BITS} bits")

        return VerificationReport(
            spec_id=self.spec.id,
            lo=lo,
            hi=hi,
            violations=violations,
            inapplicable=inapplicable,
            undecided=undecided,
            counts=counts,
            wall_time=time.time() - started,
            config=self.config,
        )


def scan_range(lo: int, hi: int, spec: InequalitySpec, config: Optional[ScanConfig] = None) -> VerificationReport:
    return RangeScanner(spec, config).scan(lo, hi)


def exception_set(limit: int, spec: InequalitySpec, config: Optional[ScanConfig] = None) -> List[int]:
    """
    Every n <= limit that fails the inequality, plus n = 1, 2 where
    log log n is not positive.
    """
    if limit < 1:
        return []
    if limit > SCAN_LIMIT_BUDGET:
        raise BudgetExceededError(f"limit {limit} exceeds scan budget {SCAN_LIMIT_BUDGET}")
    report = scan_range(1, limit + 1, spec, config)
    return sorted(report.violations + report.inapplicable)
