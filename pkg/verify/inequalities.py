# verify/inequalities.py

"""
Robin-type upper bounds for sigma(n)/n, all in terms of x = log log n:

    ROBIN         e^gamma x
    ROBIN_C0      e^gamma x (1 + 0.6483 / x^2)
    AXLER_CUBIC   e^gamma x (1 + 0.0094243 / x^3)
    OLD_CUBIC     e^gamma x (1 + 0.1209 / x^3)
    IVIC          2.59 x
    HERTLEIN_EPS  (1 + 5.645e-7) e^gamma x
    AXLER_EPS     (1 + 3.15367e-7) e^gamma x

Constants are decimal literals, enclosed exactly at the requested precision.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from rigor.constants import exp_euler_gamma
from rigor.enclosure import Enclosure
from utils.errors import DomainError, UsageError

# float value for the prefilter only
_EXP_GAMMA_FLOAT = 1.7810724179901979


@dataclass(frozen=True)
class InequalitySpec:
    id: str                                 # ROBIN | ROBIN_C0 | AXLER_CUBIC | OLD_CUBIC | IVIC | HERTLEIN_EPS | AXLER_EPS
    form: str                               # EGAMMA | CORRECTED | SCALED | FACTOR
    constants: Tuple[Tuple[str, str], ...] = ()
    power: int = 0                          # exponent of x in the correction term
    note: str = ""

    def constant(self, name: str, precision: int) -> Enclosure:
        return Enclosure.exact(self.constants_map[name], precision)

    @property
    def constants_map(self) -> Dict[str, str]:
        return dict(self.constants)

    @property
    def cli_name(self) -> str:
        return self.id.lower().replace("_", "-")

    # ---------------------
    # Rigorous right-hand side
    # ---------------------
    def rhs_from_loglog(self, x: Enclosure) -> Enclosure:
        precision = x.precision
        if self.form == "SCALED":
            return self.constant("c", precision) * x

        base = exp_euler_gamma(precision) * x
        if self.form == "EGAMMA":
            return base
        if self.form == "CORRECTED":
            return base * (1 + self.constant("c", precision) / x ** self.power)
        if self.form == "FACTOR":
            return base * (1 + self.constant("eps", precision))
        raise DomainError(f"unknown inequality form {self.form}")

    def rhs(self, n: int, precision: int) -> Enclosure:
        """Right-hand side at n >= 3."""
        if n < 3:
            raise DomainError(f"log log n is not positive for n = {n}")
        return self.rhs_from_loglog(Enclosure.from_int(n, precision).log().log())

    # ---------------------
    # Float prefilter
    # ---------------------
    def rhs_float(self, x: np.ndarray) -> np.ndarray:
        if self.form == "SCALED":
            return float(self.constants_map["c"]) * x
        base = _EXP_GAMMA_FLOAT * x
        if self.form == "EGAMMA":
            return base
        if self.form == "CORRECTED":
            return base * (1.0 + float(self.constants_map["c"]) / x ** self.power)
        return base * (1.0 + float(self.constants_map["eps"]))


ROBIN = InequalitySpec("ROBIN", "EGAMMA", note="sigma(n)/n < e^gamma log log n")
ROBIN_C0 = InequalitySpec("ROBIN_C0", "CORRECTED", (("c", "0.6483"),), power=2,
                          note="unconditional for n >= 3")
AXLER_CUBIC = InequalitySpec("AXLER_CUBIC", "CORRECTED", (("c", "0.0094243"),), power=3)
OLD_CUBIC = InequalitySpec("OLD_CUBIC", "CORRECTED", (("c", "0.1209"),), power=3)
IVIC = InequalitySpec("IVIC", "SCALED", (("c", "2.59"),), note="holds for n >= 7")
HERTLEIN_EPS = InequalitySpec("HERTLEIN_EPS", "FACTOR", (("eps", "5.645e-7"),), note="holds for n >= 5041")
AXLER_EPS = InequalitySpec("AXLER_EPS", "FACTOR", (("eps", "3.15367e-7"),))

SPECS: Dict[str, InequalitySpec] = {
    s.id: s for s in (ROBIN, ROBIN_C0, AXLER_CUBIC, OLD_CUBIC, IVIC, HERTLEIN_EPS, AXLER_EPS)
}


def spec_by_name(name: str) -> InequalitySpec:
    """Accepts "AXLER_CUBIC", "axler-cubic", "axler_cubic"."""
    key = name.strip().upper().replace("-", "_")
    if key not in SPECS:
        choices = ", ".join(s.cli_name for s in SPECS.values())
        raise UsageError(f"unknown inequality {name!r}; choose from {choices}")
    return SPECS[key]
