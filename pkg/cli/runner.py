# cli/runner.py

"""
Command-line dispatcher.

Exit codes:
    0  success, every check holds
    1  violations found / certificate FALSE
    2  inapplicable input / UNDECIDED outcome / internal error
    3  usage error
"""

import argparse
import math
import sys
import time
from typing import Callable, Dict, List, Optional, TextIO

from ca.colossal import ca_sequence
from ca.robin_ca import chain_deductions, check_records
from certificates.certificate_report import CertificateReport, exit_code
from certificates.robin_certificates import cert_thm102, cert_thm103
from certificates.valuation_cutoffs import cert_cor104, cert_thm104_cutoffs
from config.settings import (
    DEFAULT_FORMAT,
    DEFAULT_PRECISION_BITS,
    DEFAULT_SEGMENT_SIZE,
    DEFAULT_WORKERS,
    VERSION,
)
from core.factorization import factorize
from core.multiplicative import is_t_free, psi_t, sigma, sigma_ratio
from primorial.champions import champion_scan, lemma202_check
from primorial.primorials import primorial, r_t_direct, r_t_limit, table_for_index
from cli.report_writer import FORMATS, CliReport, serialize_report
from utils.errors import DomainError, RobinKitError, UsageError
from utils.log import get_logger, set_level
from verify.checker import FAILS, HOLDS, UNDECIDED
from verify.inequalities import spec_by_name
from verify.range_scanner import ScanConfig, exception_set, scan_range
from verify.valuation_class import LE, valuation_class

log = get_logger("Runner")

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 3

CERTIFICATES: Dict[str, Callable[..., CertificateReport]] = {
    "thm102": cert_thm102,
    "thm103": cert_thm103,
    "thm104": cert_thm104_cutoffs,
    "cor104": cert_cor104,
}

# Robin fails on every CA number up to this one
LAST_CA_EXCEPTION = 5040


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", type=_positive_int, default=DEFAULT_PRECISION_BITS,
                        help="enclosure precision in bits (16..1024)")
    common.add_argument("--segment-size", type=_positive_int, default=DEFAULT_SEGMENT_SIZE)
    common.add_argument("--workers", type=_positive_int, default=DEFAULT_WORKERS)
    common.add_argument("--format", choices=FORMATS, default=DEFAULT_FORMAT)
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), default=None,
                        help="stderr diagnostics (default from ROBINKIT_LOG_LEVEL)")

    parser = _Parser(prog="robinkit", description="Robin's inequality toolkit")
    parser.add_argument("--version", action="version", version=f"robinkit {VERSION}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("sigma", parents=[common], help="sigma(n), sigma(n)/n and valuation rules")
    p.add_argument("n", type=_positive_int, nargs="+")
    p.add_argument("--t", type=int, default=None, help="also report Psi_t(n) and t-freeness")

    p = sub.add_parser("factor", parents=[common], help="prime factorization (n < 2^64)")
    p.add_argument("n", type=_positive_int, nargs="+")

    p = sub.add_parser("scan", parents=[common], help="verify an inequality on [from, to]")
    p.add_argument("--ineq", required=True)
    p.add_argument("--from", dest="lo", type=_positive_int, required=True)
    p.add_argument("--to", dest="hi", type=_positive_int, required=True)

    p = sub.add_parser("exceptions", parents=[common], help="every n <= limit that fails")
    p.add_argument("--ineq", required=True)
    p.add_argument("--limit", type=_positive_int, required=True)

    p = sub.add_parser("primorials", parents=[common], help="theta(p_k) and R_2(N_k)")
    p.add_argument("--k-min", type=_positive_int, default=2)
    p.add_argument("--k-max", type=_positive_int, default=8)

    p = sub.add_parser("certificate", parents=[common], help="interval certificates")
    p.add_argument("name", choices=sorted(CERTIFICATES))

    p = sub.add_parser("ca-scan", parents=[common], help="Robin on colossally abundant numbers")
    p.add_argument("--max-log-n", type=float, default=1000.0)

    p = sub.add_parser("champions", parents=[common], help="champions of Psi_t(n)/n")
    p.add_argument("--limit", type=_positive_int, default=100_000)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--weak", action="store_true", help="include ties (>= instead of >)")
    p.add_argument("--lemma202", action="store_true",
                   help="exhaustive R_t maximality of N_k on [N_k, N_(k+1))")
    p.add_argument("--k-max", type=_positive_int, default=6)
    p.add_argument("--t-list", type=int, nargs="+", default=[2, 21])

    return parser


def _config(args) -> ScanConfig:
    config = ScanConfig(precision=args.precision, segment_size=args.segment_size, workers=args.workers)
    try:
        config.validate()
    except DomainError as e:
        raise UsageError(str(e))
    return config


def _echo(args, config: ScanConfig) -> dict:
    echo = config.as_dict()
    echo["format"] = args.format
    return echo


# =========================
# Subcommands
# =========================

def _cmd_sigma(args, config: ScanConfig) -> CliReport:
    results, rows = [], []
    for n in args.n:
        f = factorize(n)
        s = sigma(f)
        entry = {
            "n": n,
            "factorization": str(f),
            "sigma": s,
            "sigma_over_n": sigma_ratio(f),
            "valuation_rules": valuation_class(f).satisfied_rules(LE) if n >= 5041 else [],
        }
        if args.t is not None:
            entry["psi_t"] = psi_t(f, args.t)
            entry["t_free"] = is_t_free(f, args.t)
        results.append(entry)
        rows.append({"n": n, "sigma": s, "sigma_over_n": entry["sigma_over_n"], "factorization": str(f)})
    return CliReport("sigma", "sigma", _echo(args, config), results, rows)


def _cmd_factor(args, config: ScanConfig) -> CliReport:
    results, rows = [], []
    for n in args.n:
        f = factorize(n)
        results.append({"n": n, "factors": [[p, e] for p, e in f]})
        rows.extend({"n": n, "p": p, "exponent": e} for p, e in f)
    return CliReport("factor", "factor", _echo(args, config), results, rows)


def _cmd_scan(args, config: ScanConfig) -> CliReport:
    spec = spec_by_name(args.ineq)
    if args.hi < args.lo:
        raise UsageError(f"--to {args.hi} is below --from {args.lo}")
    report = scan_range(args.lo, args.hi + 1, spec, config)

    results = {
        "ineq": spec.cli_name,
        "constants": spec.constants_map,
        "from": args.lo,
        "to": args.hi,
        "violations": report.violations,
        "inapplicable": report.inapplicable,
        "undecided": report.undecided,
        "counts": report.counts,
    }
    rows = [{"n": n, "status": FAILS} for n in report.violations]
    rows += [{"n": n, "status": UNDECIDED} for n in report.undecided]

    if report.violations:
        code = EXIT_VIOLATIONS
    elif report.undecided or report.counts["inapplicable"] == report.counts["total"]:
        code = EXIT_UNDECIDED
    else:
        code = EXIT_OK
    return CliReport("scan", "scan", _echo(args, config), results, rows, exit_code=code)


def _cmd_exceptions(args, config: ScanConfig) -> CliReport:
    spec = spec_by_name(args.ineq)
    found = exception_set(args.limit, spec, config)
    results = {"ineq": spec.cli_name, "limit": args.limit, "count": len(found), "exceptions": found}
    return CliReport("exceptions", "exceptions", _echo(args, config), results, [{"n": n} for n in found])


def _cmd_primorials(args, config: ScanConfig) -> CliReport:
    if args.k_min < 2 or args.k_max < args.k_min:
        raise UsageError(f"need 2 <= --k-min <= --k-max, got {args.k_min}..{args.k_max}")
    table = table_for_index(args.k_max)
    precision = config.precision

    results, rows = [], []
    for k in range(args.k_min, args.k_max + 1):
        rec = primorial(k, table, precision)
        r2 = r_t_direct(k, 2, table, precision)
        results.append({"k": k, "p_k": rec.p_k, "theta": rec.theta_pk, "r2": r2, "n_k": rec.n_k})
        rows.append({
            "k": k,
            "p_k": rec.p_k,
            "theta_lo": rec.theta_pk.lo_str(),
            "theta_hi": rec.theta_pk.hi_str(),
            "r2_lo": r2.lo_str(),
            "r2_hi": r2.hi_str(),
        })
    payload = {"records": results, "r2_limit": r_t_limit(2, precision)}
    return CliReport("primorials", "primorials", _echo(args, config), payload, rows)


def _cmd_certificate(args, config: ScanConfig) -> CliReport:
    report = CERTIFICATES[args.name](precision=config.precision)
    rows = []
    for step in report.steps:
        rows.append({
            "step": step.name,
            "description": step.description,
            "verdict": step.verdict,
            "gating": step.gating,
            "lo": step.value.lo_str() if step.value is not None else None,
            "hi": step.value.hi_str() if step.value is not None else None,
            "bits": step.value.precision if step.value is not None else None,
        })
    return CliReport(f"certificate {args.name}", "certificate", _echo(args, config), report, rows,
                     exit_code=exit_code(report))


def _cmd_ca_scan(args, config: ScanConfig) -> CliReport:
    records = ca_sequence(args.max_log_n, config.precision)
    verdicts = check_records(records, config.precision, config.workers)
    chain = chain_deductions(records, verdicts)

    threshold = math.log(LAST_CA_EXCEPTION)
    beyond = [(v, r) for v, r in zip(records, verdicts) if v.log_n.lo_float() > threshold]
    failures = [v.index for v, r in beyond if r.fails]
    undecided = [v.index for v, r in beyond if r.status == UNDECIDED]

    rows = []
    for v, r in zip(records, verdicts):
        rows.append({
            "index": v.index,
            "n": v.n,
            "largest_prime": v.largest_prime,
            "log_n_lo": v.log_n.lo_str(),
            "log_n_hi": v.log_n.hi_str(),
            "status": r.status,
            "tie": v.tie,
        })
    results = {
        "max_log_n": args.max_log_n,
        "records": len(records),
        "holds_beyond_5040": sum(1 for _, r in beyond if r.status == HOLDS),
        "failures_beyond_5040": failures,
        "undecided_beyond_5040": undecided,
        "small_records": [v.n for v in records if v.n is not None and v.n <= LAST_CA_EXCEPTION],
        "deductions": chain.as_dict(),
    }
    if failures:
        code = EXIT_VIOLATIONS
    elif undecided:
        code = EXIT_UNDECIDED
    else:
        code = EXIT_OK
    return CliReport("ca-scan", "ca-scan", _echo(args, config), results, rows, exit_code=code)


def _cmd_champions(args, config: ScanConfig) -> CliReport:
    if not args.lemma202:
        found = champion_scan(args.limit, args.t, strict=not args.weak)
        results = {"limit": args.limit, "t": args.t, "strict": not args.weak, "champions": found}
        return CliReport("champions", "champions", _echo(args, config), results, [{"n": n} for n in found])

    outcomes, rows = [], []
    for t in args.t_list:
        for k in range(2, args.k_max + 1):
            out = lemma202_check(k, t, config.precision)
            outcomes.append(out)
            rows.append({"k": k, "t": t, "holds": out.holds, "tie": out.tie, "argmax": out.argmax, "scanned": out.scanned})

    if not all(o.holds for o in outcomes):
        code = EXIT_VIOLATIONS
    elif any(o.tie for o in outcomes):
        code = EXIT_UNDECIDED
    else:
        code = EXIT_OK
    return CliReport("champions --lemma202", "lemma202", _echo(args, config), outcomes, rows, exit_code=code)


COMMANDS = {
    "sigma": _cmd_sigma,
    "factor": _cmd_factor,
    "scan": _cmd_scan,
    "exceptions": _cmd_exceptions,
    "primorials": _cmd_primorials,
    "certificate": _cmd_certificate,
    "ca-scan": _cmd_ca_scan,
    "champions": _cmd_champions,
}


# =========================
# Entry point
# =========================

def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            set_level(args.log_level)
        config = _config(args)
        started = time.time()
        report = COMMANDS[args.command](args, config)
        report.wall_time = time.time() - started
        text = serialize_report(report, args.format)
    except UsageError as e:
        err.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:                      # --help / --version
        return int(e.code or 0)
    except RobinKitError as e:
        log.error(f"{type(e).__name__}: {e}")
        err.write(f"error: {e}\n")
        return EXIT_UNDECIDED
    except Exception as e:
        # internal failures share code 2; 1 stays reserved for violations
        log.exception(f"internal error: {type(e).__name__}: {e}")
        err.write(f"internal error: {type(e).__name__}: {e}\n")
        return EXIT_UNDECIDED

    out.write(text)
    log.info(f"{report.command} finished in {report.wall_time:.3f}s (exit {report.exit_code})")
    return report.exit_code
