import dataclasses
from fractions import Fraction

import pytest

from certificates.certificate_config import DEFAULT_PARAMS
from certificates.certificate_report import (
    CertificateReport,
    ReportBuilder,
    exit_code,
    run_with_escalation,
)
from certificates.robin_certificates import (
    cert_thm102,
    cert_thm103,
    cubic_chain_margin,
    robin_tfree_bound,
)
from certificates.valuation_cutoffs import (
    BOUNDARY_PRIMES,
    cert_cor104,
    cert_thm104_cutoffs,
    cutoff_table,
    epsilon_star,
    expected_cutoff,
    loglog_bracket,
)
from core.primes import sieve_primes
from primorial.primorials import r_t_direct
from rigor.constants import exp_euler_gamma
from rigor.enclosure import Enclosure, V_FALSE, V_TRUE, Verdict3


# =========================
# Report plumbing
# =========================

def test_diagnostic_steps_do_not_gate():
    b = ReportBuilder("demo", 128, {})
    b.check("main", "gating step", V_TRUE)
    b.check("aside", "diagnostic step", V_FALSE, gating=False)
    report = b.build()
    assert report.overall.is_true
    assert report.step("aside").verdict.is_false
    with pytest.raises(KeyError):
        report.step("missing")


def test_escalation_doubles_until_decided():
    seen = []

    def build(precision):
        seen.append(precision)
        b = ReportBuilder("demo", precision, {})
        b.check("x", "needs 512 bits", V_TRUE if precision >= 512 else Verdict3("UNDECIDED", 1e-3))
        return b.build()

    report = run_with_escalation(build, 128, 1024)
    assert seen == [128, 256, 512]
    assert report.overall.is_true and report.precision == 512


def test_escalation_stops_at_cap():
    report = run_with_escalation(_undecided, 128, 256)
    assert report.overall.is_undecided
    assert report.precision == 256
    assert exit_code(report) == 2


def _undecided(precision) -> CertificateReport:
    b = ReportBuilder("demo", precision, {})
    b.check("x", "never decided", Verdict3("UNDECIDED", 1.0))
    return b.build()


# =========================
# t-free primorial bound
# =========================

def test_thm102():
    report = cert_thm102()
    assert report.overall.is_true
    assert exit_code(report) == 0

    a = report.step("a").value
    assert a.lo_fraction() > 1 - Fraction(1, 10 ** 6) and a.hi_fraction() < 1

    rhs = report.step("rhs").value
    assert rhs.hi_fraction() < 1
    margin = report.step("rhs_below_one").value
    assert 0 < margin.lo_float() and margin.hi_float() < 1e-6
    assert report.provenance["p_k0"] == 29_996_208_012_611
    assert "theta_lower" in report.provenance["external"]


def test_thm102_is_reproducible():
    a, b = cert_thm102(precision=192), cert_thm102(precision=192)
    assert [s.value.lo for s in a.steps] == [s.value.lo for s in b.steps]
    assert [s.value.hi for s in a.steps] == [s.value.hi for s in b.steps]


def test_thm102_precision_does_not_flip_verdict():
    assert cert_thm102(precision=128).overall == cert_thm102(precision=1024).overall


def test_tfree_bound_decreases_in_p():
    values = [robin_tfree_bound(21, p) for p in (10_007, 999_983, 29_996_208_012_611)]
    for a, b in zip(values, values[1:]):
        assert b.hi_fraction() < a.lo_fraction()
    assert values[-1].hi_fraction() < 1


def test_tfree_bound_t7_at_a_million():
    # both the chain and the direct primorial value sit below 1 at p_k = 999983
    table = sieve_primes(10 ** 6)
    k = len(table)
    assert table.nth(k) == 999_983
    direct = r_t_direct(k, 7, table, 128) / exp_euler_gamma(128)
    assert direct.hi_fraction() < 1
    assert robin_tfree_bound(7, 999_983).hi_fraction() < 1


# =========================
# Cubic chain
# =========================

def test_thm103_structure():
    report = cert_thm103()
    root = report.step("monotone_range")
    assert root.verdict.is_true
    assert abs(root.value.mid_float() - 0.266) < 1e-3
    assert report.step("log_p_p_k0").verdict.is_true
    assert report.overall.is_true
    assert report.step("chain_p_k0").gating
    assert report.step("chain_alt_prime").gating
    alt = report.step("chain_alt_prime")
    assert alt.verdict.is_true
    # the chain closes at the alternate prime with a margin near 2.35e-13
    assert 2.3e-13 < alt.value.mid_float() < 2.4e-13


def test_cubic_margin_samples():
    report = cert_thm103()
    # the margin rises from just below zero at 31.03, peaks near 46 and then decays
    assert report.step("sample_31.03").verdict.is_false
    assert report.step("increasing_32").verdict.is_true
    assert report.step("increasing_40").verdict.is_true
    assert report.step("increasing_100").verdict.is_false
    assert report.step("sample_100").verdict.is_true


@pytest.mark.parametrize("lo,hi", (("31.03", "32"), ("32", "40"), ("40", "45")))
def test_cubic_margin_monotone(lo, hi):
    a = cubic_chain_margin(Enclosure.exact(lo, 256))
    b = cubic_chain_margin(Enclosure.exact(hi, 256))
    assert b.lo_fraction() > a.hi_fraction()


# =========================
# Exponent cutoffs
# =========================

def test_thm104():
    report = cert_thm104_cutoffs()
    assert report.overall.is_true
    assert report.step("table_matches").verdict.is_true
    for p in BOUNDARY_PRIMES:
        assert report.step(f"boundary_{p}").verdict.is_true
    assert report.step("printed_threshold").verdict.is_false
    assert report.step("corrected_threshold").verdict.is_true
    assert any("printed threshold" in f for f in report.flags)


@pytest.mark.parametrize(
    "p,m_star",
    (
        (2, 20),
        (3, 12),
        (5, 8),
        (7, 6),
        (11, 5),
        (13, 4),
        (19, 4),
        (23, 3),
        (41, 3),
        (43, 2),
        (139, 2),
        (149, 1),
        (1777, 1),
        (1783, 0),
    ),
)
def test_cutoff_table(p, m_star):
    table = cutoff_table(DEFAULT_PARAMS, 128)
    assert table[p]["m_star"] == m_star == expected_cutoff(p)
    assert table[p]["next_fails"].is_true


def test_largest_prime_with_positive_cutoff():
    table = cutoff_table(DEFAULT_PARAMS, 128)
    assert max(p for p, row in table.items() if row["m_star"] >= 1) == 1777


def test_x_star():
    x_lo, x_hi = loglog_bracket(DEFAULT_PARAMS.p_k0, DEFAULT_PARAMS, 128)
    assert x_lo.hi_fraction() < x_hi.lo_fraction()
    assert abs(x_lo.mid_float() - 31.03209174446) < 1e-9
    assert abs((x_lo ** 3).mid_float() - 29883.6) < 0.1


# =========================
# Epsilon form
# =========================

def test_cor104_is_well_formed():
    report = cert_cor104()
    assert report.overall.state in ("TRUE", "FALSE", "UNDECIDED")
    assert exit_code(report) in (0, 1, 2)
    eps_star = report.step("epsilon_star").value
    assert abs(eps_star.mid_float() - 3.15367e-7) < 1e-11
    if not report.overall.is_true:
        assert any("marginal" in f for f in report.flags)


def test_wider_bracket_gives_wider_epsilon_star():
    narrow = cert_cor104(dataclasses.replace(DEFAULT_PARAMS, theta_upper_assumption=False))
    wide = cert_cor104()
    assert wide.step("epsilon_star").value.contains(narrow.step("epsilon_star").value)


def test_epsilon_star_formula():
    x = Enclosure.exact(2, 128)
    assert epsilon_star(x).contains(Fraction("0.0094243") / 8)


def test_thm104_against_earlier_family():
    report = cert_thm104_cutoffs()
    assert "improved at p = [2, 5], unchanged at p = [3, 7, 11]" in " ".join(report.flags)
    rows = {row["p"]: row for row in report.table}
    assert (rows[2]["earlier"], rows[2]["m_star"]) == (19, 20)
    assert rows[13]["earlier"] is None
