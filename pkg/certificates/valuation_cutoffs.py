# certificates/valuation_cutoffs.py

"""
Exponent cutoffs for the valuation families and the epsilon form.

With x = log log n and nu_p(n) <= m, sigma(n)/n is bounded by
    e^gamma (1 - 1/p^(m+1)) (x + a0/x^2),
which implies Robin's inequality as soon as
    a0 (p^(m+1) - 1) < x^3.
For n >= N_k0 the cutoff uses x* = log p_k0 + log(1 - c_theta/log^2 p_k0),
a lower bound of log log N_k0. The upper bound log p_k0 (theta(x) < x)
certifies that the next exponent fails.
"""

from fractions import Fraction
from typing import Dict, Optional, Tuple

from certificates.certificate_config import DEFAULT_PARAMS, CertificateParams
from certificates.certificate_report import CertificateReport, ReportBuilder, run_with_escalation
from core.primes import sieve_primes
from rigor.enclosure import Enclosure, Verdict3, V_FALSE, V_TRUE, greater_than, less_than
from utils.log import get_logger
from verify.valuation_class import HERTLEIN_RULES

log = get_logger("ValuationCutoffs")

CUTOFF_PRIME_LIMIT = 2000
BOUNDARY_PRIMES = (23, 43, 149, 1783)
_MAX_EXPONENT = 64


def expected_cutoff(p: int) -> Optional[int]:
    """
    Exponent bound of the published family (and the earlier family for
    3, 7, 11). None where neither lists p.
    """
    if p == 2:
        return 20
    if p == 3:
        return 12
    if p == 5:
        return 8
    if p == 7:
        return 6
    if p == 11:
        return 5
    if 11 < p <= 19:
        return 4
    if 19 < p <= 41:
        return 3
    if 41 < p <= 139:
        return 2
    if 139 < p <= 1777:
        return 1
    if p > 1777:
        return 0
    return None


def loglog_bracket(p: int, params: CertificateParams, precision: int) -> Tuple[Enclosure, Enclosure]:
    """
    (x_lo, x_hi) enclosing the lower and upper bound of log log N_k with p_k = p.
    """
    log_p = Enclosure.from_int(p, precision).log()
    c_theta = Enclosure.exact(params.c_theta, precision)
    x_lo = log_p + (1 - c_theta / log_p ** 2).log()
    return x_lo, log_p


def _cutoff_holds(a0: Fraction, p: int, m: int, x_cubed: Enclosure) -> Verdict3:
    """a0 (p^(m+1) - 1) < x^3"""
    return less_than(Enclosure.exact(a0 * (p ** (m + 1) - 1), x_cubed.precision), x_cubed)


def cutoff_table(params: CertificateParams, precision: int) -> Dict[int, dict]:
    a0 = Fraction(params.a0)
    x_lo, x_hi = loglog_bracket(params.p_k0, params, precision)
    lo3, hi3 = x_lo ** 3, x_hi ** 3

    table = {}
    for p in sieve_primes(CUTOFF_PRIME_LIMIT).as_list():
        m, undecided = 0, False
        while m < _MAX_EXPONENT:
            verdict = _cutoff_holds(a0, p, m + 1, lo3)
            if verdict.is_true:
                m += 1
                continue
            undecided = verdict.is_undecided
            break
        # the next exponent must fail even against the upper bound of x
        next_fails = greater_than(Enclosure.exact(a0 * (p ** (m + 2) - 1), precision), hi3)
        table[p] = {"p": p, "m_star": m, "next_fails": next_fails, "undecided": undecided}
    return table


def _thm104_at(params: CertificateParams, precision: int) -> CertificateReport:
    b = ReportBuilder("thm104", precision, params.provenance())
    a0 = Enclosure.exact(params.a0, precision)

    x_lo, x_hi = loglog_bracket(params.p_k0, params, precision)
    b.check(
        "theta_bound_range",
        f"log p_k0 >= {params.theta_bound_min_log}",
        greater_than(x_hi, Enclosure.exact(params.theta_bound_min_log, precision)),
        x_hi,
    )
    b.value("x_star", "x* = log p_k0 + log(1 - c_theta/log^2 p_k0) <= log log N_k0", x_lo)
    b.value("x_upper", "log p_k0 >= log log N_k0 (theta(x) < x)", x_hi, gating=False)
    b.value("x_star_cubed", "x*^3", x_lo ** 3)

    table = cutoff_table(params, precision)
    earlier = {rule.p_hi: rule.bound for rule in HERTLEIN_RULES}
    mismatches = []
    for p, row in table.items():
        expected = expected_cutoff(p)
        row["expected"] = expected
        row["matches"] = expected is None or row["m_star"] == expected
        if not row["matches"]:
            mismatches.append(p)
        b.table.append({
            "p": p,
            "m_star": row["m_star"],
            "expected": expected,
            "next_fails": row["next_fails"].state,
            "matches": row["matches"],
            "earlier": earlier.get(p),
        })

    undecided = [p for p, row in table.items() if row["undecided"]]
    if undecided:
        verdict = Verdict3("UNDECIDED", None)
    elif mismatches:
        verdict = V_FALSE
    else:
        verdict = V_TRUE
    b.check(
        "table_matches",
        "cutoff m*(p) = largest m >= 1 with a0 (p^(m+1) - 1) < x*^3 matches the published classes",
        verdict,
    )
    if mismatches:
        b.flag(f"cutoff mismatch at p = {mismatches}")

    improved = [p for p, bound in earlier.items() if table[p]["m_star"] > bound]
    unchanged = [p for p, bound in earlier.items() if table[p]["m_star"] == bound]
    b.flag(f"against the earlier family: improved at p = {improved}, unchanged at p = {unchanged}")
    log.debug(f"cutoff table over {len(table)} primes, {len(mismatches)} mismatches")

    for p in BOUNDARY_PRIMES:
        expected = expected_cutoff(p)
        b.check(
            f"boundary_{p}",
            f"a0 ({p}^{expected + 2} - 1) > (log p_k0)^3: exponent {expected + 1} is not covered",
            greater_than(Enclosure.exact(Fraction(params.a0) * (p ** (expected + 2) - 1), precision), x_hi ** 3),
        )

    # threshold as printed versus the a0-corrected one
    printed = Enclosure.from_int(2 ** 21 - 1, precision).root(3)
    corrected = (a0 * (2 ** 21 - 1)).root(3)
    b.check("printed_threshold", "cbrt(2^21 - 1) <= x*", less_than(printed, x_lo), printed, gating=False)
    b.check("corrected_threshold", "cbrt(a0 (2^21 - 1)) < x*", less_than(corrected, x_lo), corrected, gating=False)
    b.flag(
        "the printed threshold exp(exp(cbrt(2^21 - 1))) exceeds N_k0; "
        "the a0-corrected threshold exp(exp(cbrt(a0 (2^21 - 1)))) is the one the argument needs"
    )
    return b.build()


def cert_thm104_cutoffs(params: CertificateParams = DEFAULT_PARAMS, precision: Optional[int] = None) -> CertificateReport:
    return run_with_escalation(
        lambda prec: _thm104_at(params, prec),
        precision or params.start_precision,
        params.precision_cap,
    )


# =========================
# Epsilon form
# =========================

def epsilon_star(x: Enclosure, params: CertificateParams = DEFAULT_PARAMS) -> Enclosure:
    """a0 / x^3 over an enclosure of x."""
    return Enclosure.exact(params.a0, x.precision) / x ** 3


def _cor104_at(params: CertificateParams, precision: int) -> CertificateReport:
    b = ReportBuilder("cor104", precision, params.provenance())
    eps = Enclosure.exact(params.eps, precision)

    x_lo, x_hi = loglog_bracket(params.p_k0, params, precision)
    if params.theta_upper_assumption:
        x = Enclosure(x_lo.lo, x_hi.hi, precision)
    else:
        # without the upper assumption only the lower end is known
        x = Enclosure(x_lo.lo, x_lo.hi, precision)
        b.flag("theta upper assumption disabled; bracket uses the lower bound only")
    b.value("loglog_bracket", "log log N_k0 in [x*, log p_k0]", x, gating=False)

    eps_star = epsilon_star(x, params)
    b.value("epsilon_star", "a0 / (log log N_k0)^3 over the bracket", eps_star, gating=False)

    # TRUE needs the whole bracket below eps, FALSE the whole bracket above
    verdict = less_than(eps_star, eps)
    b.check("epsilon_star_below_eps", f"a0 / x*^3 <= {params.eps}", verdict, eps - eps_star)

    alt_lo, _ = loglog_bracket(params.alt_prime, params, precision)
    alt_star = epsilon_star(alt_lo, params)
    b.check(
        "epsilon_star_alt_prime",
        f"a0 / x^3 <= {params.eps} with x from the alternate prime {params.alt_prime}",
        less_than(alt_star, eps),
        alt_star,
        gating=False,
    )

    gap = (eps - eps_star) / eps
    if not verdict.is_true or less_than(gap, Enclosure.exact("1e-6", precision)).is_true:
        b.flag(f"marginal: relative gap between eps and eps* is below 1e-6 (outcome {verdict.state})")
    return b.build()


def cert_cor104(params: CertificateParams = DEFAULT_PARAMS, precision: Optional[int] = None) -> CertificateReport:
    return run_with_escalation(
        lambda prec: _cor104_at(params, prec),
        precision or params.start_precision,
        params.precision_cap,
    )
