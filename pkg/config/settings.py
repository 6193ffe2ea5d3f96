# config/settings.py

"""
Global defaults for robinkit.
Every value can be overridden from the environment (prefix ROBINKIT_)
without touching code, e.g. ROBINKIT_PRECISION=256.
"""

import os

VERSION = "0.1.0"
TOOL_NAME = "robinkit"

ENV_PREFIX = "ROBINKIT_"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def _env_str(name: str, default: str) -> str:
    return os.environ.get(ENV_PREFIX + name, default)


# -------- PRECISION --------
# Working precision (bits) of enclosure arithmetic.
DEFAULT_PRECISION_BITS = _env_int("PRECISION", 128)
MIN_PRECISION_BITS = 16
# Certificates and rigorous re-checks escalate up to this cap.
MAX_PRECISION_BITS = _env_int("MAX_PRECISION", 1024)

# -------- SIEVING --------
DEFAULT_SEGMENT_SIZE = _env_int("SEGMENT_SIZE", 1 << 22)
MIN_SEGMENT_SIZE = 1 << 10

# Largest limit sieve_primes accepts (segmented, so ~5% of limit in int64 memory).
PRIME_LIMIT_BUDGET = _env_int("PRIME_LIMIT_BUDGET", 2_000_000_000)

# Largest number of values one sigma_range call may return.
SIGMA_RANGE_BUDGET = _env_int("SIGMA_RANGE_BUDGET", 1 << 24)

# Largest [lo, hi) a single range scan accepts.
SCAN_RANGE_BUDGET = _env_int("SCAN_RANGE_BUDGET", 1_000_000_000)

# Upper limit for exception sets, champion scans and Lemma-2.2 style scans.
SCAN_LIMIT_BUDGET = _env_int("SCAN_LIMIT_BUDGET", 10_000_000)

# -------- PRIMORIALS --------
# N_k is materialized as an integer only up to this index.
PRIMORIAL_MATERIALIZE_MAX = _env_int("PRIMORIAL_MATERIALIZE_MAX", 10_000)

# -------- WORKERS --------
DEFAULT_WORKERS = _env_int("WORKERS", os.cpu_count() or 1)

# -------- OUTPUT --------
DEFAULT_FORMAT = _env_str("FORMAT", "json")   # json | csv | table
LOG_LEVEL = _env_str("LOG_LEVEL", "WARNING")

# Relative slack of the hardware-float prefilter in range scans.
FLOAT_FILTER_SLACK = 1e-9
