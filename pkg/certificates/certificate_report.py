# certificates/certificate_report.py

"""
Certificate results and precision escalation.

A certificate is an ordered list of steps. Gating steps decide the
overall verdict (conjunction); diagnostic steps are evaluated and reported
but do not enter it.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from rigor.enclosure import Enclosure, Verdict3, V_TRUE, verdict_all
from utils.log import get_logger

log = get_logger("Certificates")


@dataclass(frozen=True)
class CertificateStep:
    name: str
    description: str
    value: Optional[Enclosure]
    verdict: Verdict3
    gating: bool = True


@dataclass(frozen=True)
class CertificateReport:
    certificate_id: str
    steps: Tuple[CertificateStep, ...]
    overall: Verdict3
    precision: int
    provenance: dict
    table: Tuple[dict, ...] = ()
    flags: Tuple[str, ...] = ()

    def step(self, name: str) -> CertificateStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)


@dataclass
class ReportBuilder:
    """Collects steps in order, then freezes them into a report."""
    certificate_id: str
    precision: int
    provenance: dict
    steps: List[CertificateStep] = field(default_factory=list)
    table: List[dict] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    def value(self, name: str, description: str, value: Enclosure, gating: bool = True) -> Enclosure:
        """A computed quantity; its verdict records that it was enclosed."""
        self.steps.append(CertificateStep(name, description, value, V_TRUE, gating))
        return value

    def check(self, name: str, description: str, verdict: Verdict3,
              value: Optional[Enclosure] = None, gating: bool = True) -> Verdict3:
        self.steps.append(CertificateStep(name, description, value, verdict, gating))
        return verdict

    def flag(self, message: str):
        self.flags.append(message)

    def build(self) -> CertificateReport:
        overall = verdict_all(s.verdict for s in self.steps if s.gating)
        return CertificateReport(
            certificate_id=self.certificate_id,
            steps=tuple(self.steps),
            overall=overall,
            precision=self.precision,
            provenance=self.provenance,
            table=tuple(self.table),
            flags=tuple(self.flags),
        )


def run_with_escalation(
    build: Callable[[int], CertificateReport],
    start_precision: int,
    cap: int
) -> CertificateReport:
    """
    Re-run a certificate at doubled precision while its overall verdict is
    UNDECIDED, up to the cap. TRUE and FALSE are returned as soon as seen.
    """
    precision = start_precision
    while True:
        report = build(precision)
        if not report.overall.is_undecided or precision >= cap:
            if report.overall.is_undecided:
                log.warning(f"{report.certificate_id} still undecided at {precision} bits")
            return report
        log.info(f"{report.certificate_id} undecided at {precision} bits, retrying at {min(2 * precision, cap)}")
        precision = min(2 * precision, cap)


def exit_code(report: CertificateReport) -> int:
    """TRUE -> 0, FALSE -> 1, UNDECIDED -> 2."""
    if report.overall.is_true:
        return 0
    if report.overall.is_false:
        return 1
    return 2
