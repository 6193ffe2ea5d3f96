# certificates/robin_certificates.py

"""
Certificates for the t-free primorial bound and the cubic correction.

t-free chain at a prime p (L = log p, c = C_MERTENS):
    a   = 1 - c / L^3
    RHS = L / (zeta(t) log(a p)) * exp(t / ((t-1) p^(t-1)) + (c / (3 L^3)) (1 + 15/(4L)))
and e^-gamma R_t(N_k) <= RHS for p_k >= p; the certificate needs RHS < 1.

Cubic chain at log p = L:
    L (1 + a0 / L^3) + log(1 - c_theta / L^2)  >  L exp((c / (3 L^3)) (1 + 15/(4L)))
"""

from typing import Optional, Tuple

from certificates.certificate_config import DEFAULT_PARAMS, CertificateParams
from certificates.certificate_report import CertificateReport, ReportBuilder, run_with_escalation
from rigor.constants import tail_product_log_upper, zeta_int
from rigor.enclosure import Enclosure, greater_than, less_than, positive, verdict_all


def _mertens_exponent(params: CertificateParams, log_p: Enclosure) -> Enclosure:
    """(c / (3 L^3)) (1 + inner / L)"""
    prec = log_p.precision
    c = Enclosure.exact(params.c_mertens, prec)
    inner = Enclosure.exact(params.mertens_inner, prec)
    return c / (3 * log_p ** 3) * (1 + inner / log_p)


# =========================
# t-free primorial bound
# =========================

def tfree_chain(
    t: int,
    p: int,
    precision: int,
    params: CertificateParams = DEFAULT_PARAMS
) -> Tuple[Enclosure, Enclosure]:
    """(a, RHS) of the t-free chain at the prime p."""
    p_enc = Enclosure.from_int(p, precision)
    log_p = p_enc.log()
    a = 1 - Enclosure.exact(params.c_mertens, precision) / log_p ** 3
    exponent = tail_product_log_upper(t, p_enc) + _mertens_exponent(params, log_p)
    rhs = log_p / (zeta_int(t, precision) * (a * p_enc).log()) * exponent.exp()
    return a, rhs


def robin_tfree_bound(
    t: int,
    p: int,
    precision: Optional[int] = None,
    params: CertificateParams = DEFAULT_PARAMS
) -> Enclosure:
    """Upper bound for e^-gamma R_t(N_k) over primorials with p_k >= p."""
    return tfree_chain(t, p, precision or params.start_precision, params)[1]


def _thm102_at(params: CertificateParams, precision: int) -> CertificateReport:
    b = ReportBuilder("thm102", precision, params.provenance())
    t, p = params.t, params.p_k0

    a, rhs = tfree_chain(t, p, precision, params)
    b.check(
        "a",
        f"a = 1 - {params.c_mertens}/log^3 p_k0 lies in (0, 1)",
        verdict_all([positive(a), less_than(a, 1)]),
        a,
    )
    b.check(
        "a_scale",
        "a > 1 - 10^-6",
        greater_than(a, Enclosure.exact("0.999999", precision)),
        a,
        gating=False,
    )
    b.value(
        "tail_exponent",
        f"{t}/({t - 1} p_k0^{t - 1}), log of the Euler-product tail bound",
        tail_product_log_upper(t, Enclosure.from_int(p, precision)),
    )
    b.value("zeta", f"zeta({t})", zeta_int(t, precision))
    b.value(
        "rhs",
        f"log p_k0 / (zeta({t}) log(a p_k0)) * exp(tail + Mertens correction)",
        rhs,
    )
    b.check("rhs_below_one", "RHS < 1", less_than(rhs, 1), 1 - rhs)
    return b.build()


def cert_thm102(params: CertificateParams = DEFAULT_PARAMS, precision: Optional[int] = None) -> CertificateReport:
    return run_with_escalation(
        lambda prec: _thm102_at(params, prec),
        precision or params.start_precision,
        params.precision_cap,
    )


# =========================
# Cubic correction chain
# =========================

def cubic_chain_margin(log_p: Enclosure, params: CertificateParams = DEFAULT_PARAMS) -> Enclosure:
    """
    L (1 + a0/L^3) + log(1 - c_theta/L^2) - L exp(mertens exponent)
    """
    prec = log_p.precision
    a0 = Enclosure.exact(params.a0, prec)
    c_theta = Enclosure.exact(params.c_theta, prec)
    lhs = log_p * (1 + a0 / log_p ** 3) + (1 - c_theta / log_p ** 2).log()
    rhs = log_p * _mertens_exponent(params, log_p).exp()
    return lhs - rhs


def _thm103_at(params: CertificateParams, precision: int) -> CertificateReport:
    b = ReportBuilder("thm103", precision, params.provenance())
    a0 = Enclosure.exact(params.a0, precision)
    threshold = Enclosure.exact(params.theta_bound_min_log, precision)

    root = (2 * a0).root(3)
    b.check(
        "monotone_range",
        f"cbrt(2 a0) < {params.theta_bound_min_log}: x + a0/x^2 increasing at this scale",
        less_than(root, threshold),
        root,
    )

    for label, p in (("p_k0", params.p_k0), ("alt_prime", params.alt_prime)):
        log_p = Enclosure.from_int(p, precision).log()
        b.check(
            f"log_p_{label}",
            f"log {p} >= {params.theta_bound_min_log} (theta bound applies)",
            greater_than(log_p, threshold),
            log_p,
        )
        margin = cubic_chain_margin(log_p, params)
        b.check(
            f"chain_{label}",
            f"cubic chain at p = {p}",
            positive(margin),
            margin,
        )

    previous = None
    for sample in params.sample_log_p:
        margin = cubic_chain_margin(Enclosure.exact(sample, precision), params)
        b.check(f"sample_{sample}", f"cubic chain at log p = {sample}", positive(margin), margin, gating=False)
        if previous is not None:
            b.check(
                f"increasing_{sample}",
                f"margin at log p = {sample} exceeds the previous sample",
                greater_than(margin, previous),
                gating=False,
            )
        previous = margin

    return b.build()


def cert_thm103(params: CertificateParams = DEFAULT_PARAMS, precision: Optional[int] = None) -> CertificateReport:
    return run_with_escalation(
        lambda prec: _thm103_at(params, prec),
        precision or params.start_precision,
        params.precision_cap,
    )
