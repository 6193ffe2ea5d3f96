# cli/report_writer.py

"""
Report serialization.

JSON reports always carry the same top-level fields:

    tool, version, command, config, results, wall_time

Enclosures are written as {"lo": "...", "hi": "...", "bits": N} with both
endpoints as outward-rounded decimal strings. CSV and table output use a
fixed column set per report kind (see COLUMNS); cells are strings so values
round-trip without float conversion.
"""

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import numpy as np
import pandas as pd

from config.settings import TOOL_NAME, VERSION
from rigor.enclosure import Enclosure, Verdict3
from utils.errors import UsageError

FORMATS = ("json", "csv", "table")

COLUMNS: Dict[str, Tuple[str, ...]] = {
    "sigma": ("n", "sigma", "sigma_over_n", "factorization"),
    "factor": ("n", "p", "exponent"),
    "scan": ("n", "status"),
    "exceptions": ("n",),
    "primorials": ("k", "p_k", "theta_lo", "theta_hi", "r2_lo", "r2_hi"),
    "certificate": ("step", "description", "verdict", "gating", "lo", "hi", "bits"),
    "ca-scan": ("index", "n", "largest_prime", "log_n_lo", "log_n_hi", "status", "tie"),
    "champions": ("n",),
    "lemma202": ("k", "t", "holds", "tie", "argmax", "scanned"),
}


@dataclass
class CliReport:
    command: str
    kind: str                                        # key into COLUMNS
    config: Dict[str, Any]
    results: Any
    rows: List[Dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0
    exit_code: int = 0


def to_jsonable(obj: Any) -> Any:
    """Recursively convert report values to JSON-compatible structures."""
    if isinstance(obj, Enclosure):
        return obj.to_dict()
    if isinstance(obj, Verdict3):
        return obj.state
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    return str(obj)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Verdict3):
        return value.state
    return str(value)


def _frame(report: CliReport) -> pd.DataFrame:
    columns = list(COLUMNS[report.kind])
    rows = [{c: _cell(row.get(c)) for c in columns} for row in report.rows]
    return pd.DataFrame(rows, columns=columns, dtype=str)


def serialize_report(report: CliReport, fmt: str = "json") -> str:
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")

    if fmt == "json":
        payload = {
            "tool": TOOL_NAME,
            "version": VERSION,
            "command": report.command,
            "config": to_jsonable(report.config),
            "results": to_jsonable(report.results),
            "wall_time": round(report.wall_time, 6),
        }
        return json.dumps(payload, indent=2) + "\n"

    frame = _frame(report)
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    if frame.empty:
        return " ".join(frame.columns) + "\n"
    return frame.to_string(index=False) + "\n"
