# certificates/certificate_config.py

"""
Certificate inputs.
Constants adopted from the literature, kept as exact decimal strings so
they enter enclosures without rounding. Editable here without touching
the certificate logic.
"""

from dataclasses import dataclass

from config.settings import DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS

# -------- CUBIC CORRECTION --------
# sigma(n)/n < e^gamma x (1 + A0 / x^3), x = log log n, n outside the exceptional set
A0 = "0.0094243"

# -------- CHEBYSHEV THETA (lower bound) --------
# log theta(p) > log p + log(1 - C_THETA / log^2 p) once log p >= 31.03
C_THETA = "3.3277e-4"
THETA_BOUND_MIN_LOG = "31.03"

# -------- MERTENS PRODUCT / THETA vs x --------
# prod_{p <= x}(1 - 1/p)^-1 <= e^gamma log x exp((C_MERTENS / (3 log^3 x)) (1 + MERTENS_INNER / log x))
C_MERTENS = "0.024334"
MERTENS_INNER = "15/4"

# -------- EULER PRODUCT TAIL --------
# prod_{p > x}(1 - p^-T)^-1 <= exp(T / ((T - 1) x^(T - 1)))
T = 21

# -------- VERIFIED RANGE --------
# Robin holds on [5041, N_K0]
K0 = 999_999_476_056
P_K0 = 29_996_208_012_611
# second 14-digit prime used for the same cutoff in the cubic-bound argument
ALT_PRIME = 29_996_161_880_813

# -------- EPSILON FORM --------
EPS = "3.15367e-7"

# -------- EXTERNAL ASSUMPTION --------
# theta(x) < x for x <= 10^19 (literature). Upper bound for log log N_K0.
THETA_UPPER_ASSUMPTION = True
THETA_UPPER_VALID_TO = 10 ** 19

# -------- PRECISION --------
START_PRECISION = DEFAULT_PRECISION_BITS
PRECISION_CAP = MAX_PRECISION_BITS

# Sample values of log p at which the cubic-bound chain is re-evaluated.
SAMPLE_LOG_P = ("31.03", "32", "40", "100")


@dataclass(frozen=True)
class CertificateParams:
    a0: str = A0
    c_theta: str = C_THETA
    theta_bound_min_log: str = THETA_BOUND_MIN_LOG
    c_mertens: str = C_MERTENS
    mertens_inner: str = MERTENS_INNER
    t: int = T
    k0: int = K0
    p_k0: int = P_K0
    alt_prime: int = ALT_PRIME
    eps: str = EPS
    theta_upper_assumption: bool = THETA_UPPER_ASSUMPTION
    theta_upper_valid_to: int = THETA_UPPER_VALID_TO
    start_precision: int = START_PRECISION
    precision_cap: int = PRECISION_CAP
    sample_log_p: tuple = SAMPLE_LOG_P

    def provenance(self) -> dict:
        """Constants and external inputs echoed into every report."""
        return {
            "a0": self.a0,
            "c_theta": self.c_theta,
            "c_mertens": self.c_mertens,
            "mertens_inner": self.mertens_inner,
            "t": self.t,
            "k0": self.k0,
            "p_k0": self.p_k0,
            "alt_prime": self.alt_prime,
            "eps": self.eps,
            "external": {
                "theta_lower": f"log theta(p) > log p + log(1 - {self.c_theta}/log^2 p) for log p >= {self.theta_bound_min_log}",
                "mertens_upper": f"constant {self.c_mertens}, inner factor {self.mertens_inner}",
                "theta_upper": f"theta(x) < x for x <= {self.theta_upper_valid_to}" if self.theta_upper_assumption else "disabled",
                "verified_range": f"Robin holds on [5041, N_k] for k = {self.k0}",
            },
        }


DEFAULT_PARAMS = CertificateParams()
