# rigor/enclosure.py

"""
Directed-rounding interval arithmetic.

An Enclosure is a pair of mpmath binary floats [lo, hi] at a working
precision. Every operation rounds lo toward -inf and hi toward +inf, so the
true value of the expression stays inside. Endpoint arithmetic goes through
mpmath.libmp with an explicit precision and rounding mode on every call;
no global context is touched, so values can be shared between threads.

Transcendental endpoints (exp, log) are additionally pushed outward by a
few units in the last place.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, Context, ROUND_CEILING, ROUND_FLOOR
from fractions import Fraction
from typing import Optional, Union

from mpmath import libmp

from config.settings import DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS
from utils.errors import DomainError

FLOOR = libmp.round_floor
CEIL = libmp.round_ceiling

Number = Union[int, Fraction]


# =========================
# Three-valued verdicts
# =========================

@dataclass(frozen=True)
class Verdict3:
    state: str                    # TRUE | FALSE | UNDECIDED
    width: Optional[float] = None  # width of the straddling enclosure when UNDECIDED

    @property
    def is_true(self) -> bool:
        return self.state == TRUE

    @property
    def is_false(self) -> bool:
        return self.state == FALSE

    @property
    def is_undecided(self) -> bool:
        return self.state == UNDECIDED


TRUE = "TRUE"
FALSE = "FALSE"
UNDECIDED = "UNDECIDED"

V_TRUE = Verdict3(TRUE)
V_FALSE = Verdict3(FALSE)


# =========================
# Endpoint helpers
# =========================

def _lt(a, b) -> bool:
    return libmp.mpf_lt(a, b)


def _min(*xs):
    out = xs[0]
    for x in xs[1:]:
        if _lt(x, out):
            out = x
    return out


def _max(*xs):
    out = xs[0]
    for x in xs[1:]:
        if _lt(out, x):
            out = x
    return out


def _to_fraction(x) -> Fraction:
    p, q = libmp.to_rational(x)
    # the gmpy2 backend hands back mpz
    return Fraction(int(p), int(q))


def _widen_down(x, prec: int):
    if x == libmp.fzero:
        return x
    ulp = libmp.mpf_shift(libmp.mpf_abs(x), 2 - prec)
    return libmp.mpf_sub(x, ulp, prec, FLOOR)


def _widen_up(x, prec: int):
    if x == libmp.fzero:
        return x
    ulp = libmp.mpf_shift(libmp.mpf_abs(x), 2 - prec)
    return libmp.mpf_add(x, ulp, prec, CEIL)


def _decimal_str(x, digits: int, rounding: str) -> str:
    frac = _to_fraction(x)
    ctx = Context(prec=digits, rounding=rounding)
    value = ctx.divide(Decimal(frac.numerator), Decimal(frac.denominator))
    if value == 0:
        return "0"
    # plain notation while it stays short, scientific beyond
    return format(value, "f") if -12 <= value.adjusted() < digits else format(value, "E")


def _check_precision(precision: int):
    if precision < MIN_PRECISION_BITS:
        raise DomainError(f"precision must be >= {MIN_PRECISION_BITS} bits, got {precision}")


# =========================
# Enclosure
# =========================

@dataclass(frozen=True)
class Enclosure:
    lo: tuple          # mpf, rounded down
    hi: tuple          # mpf, rounded up
    precision: int     # working precision (bits)

    # ---------------------
    # Construction
    # ---------------------
    @classmethod
    def exact(cls, value: Union[Number, str], precision: int = DEFAULT_PRECISION_BITS) -> "Enclosure":
        """
        Enclose an exact value: int, Fraction or decimal literal ("0.0094243",
        "3.3277e-4"). Literals are parsed exactly, then rounded outward.
        """
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return cls.from_int(value, precision)
        if isinstance(value, Fraction):
            return cls.from_ratio(value.numerator, value.denominator, precision)
        raise TypeError(f"cannot enclose {type(value).__name__} exactly")

    @classmethod
    def from_int(cls, n: int, precision: int = DEFAULT_PRECISION_BITS) -> "Enclosure":
        _check_precision(precision)
        return cls(libmp.from_int(n, precision, FLOOR), libmp.from_int(n, precision, CEIL), precision)

    @classmethod
    def from_ratio(cls, num: int, den: int, precision: int = DEFAULT_PRECISION_BITS) -> "Enclosure":
        """num/den without reducing (large primorial ratios skip the gcd)."""
        _check_precision(precision)
        if den == 0:
            raise DomainError("zero denominator")
        if den < 0:
            num, den = -num, -den
        return cls(
            libmp.from_rational(num, den, precision, FLOOR),
            libmp.from_rational(num, den, precision, CEIL),
            precision,
        )

    @classmethod
    def hull_of(cls, a: "Enclosure", b: "Enclosure") -> "Enclosure":
        return cls(_min(a.lo, b.lo), _max(a.hi, b.hi), max(a.precision, b.precision))

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, (int, Fraction)):
            return Enclosure.exact(other, self.precision)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def at(self, precision: int) -> "Enclosure":
        """Same endpoints, new working precision for later operations."""
        return Enclosure(self.lo, self.hi, precision)

    # ---------------------
    # Arithmetic
    # ---------------------
    def __add__(self, other) -> "Enclosure":
        o = self._coerce(other)
        p = max(self.precision, o.precision)
        return Enclosure(libmp.mpf_add(self.lo, o.lo, p, FLOOR), libmp.mpf_add(self.hi, o.hi, p, CEIL), p)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(libmp.mpf_neg(self.hi), libmp.mpf_neg(self.lo), self.precision)

    def __sub__(self, other) -> "Enclosure":
        o = self._coerce(other)
        p = max(self.precision, o.precision)
        return Enclosure(libmp.mpf_sub(self.lo, o.hi, p, FLOOR), libmp.mpf_sub(self.hi, o.lo, p, CEIL), p)

    def __rsub__(self, other) -> "Enclosure":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Enclosure":
        o = self._coerce(other)
        p = max(self.precision, o.precision)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lows = [libmp.mpf_mul(a, b, p, FLOOR) for a, b in pairs]
        highs = [libmp.mpf_mul(a, b, p, CEIL) for a, b in pairs]
        return Enclosure(_min(*lows), _max(*highs), p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        o = self._coerce(other)
        if not (_lt(libmp.fzero, o.lo) or _lt(o.hi, libmp.fzero)):
            raise DomainError("division by an enclosure that contains 0")
        p = max(self.precision, o.precision)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lows = [libmp.mpf_div(a, b, p, FLOOR) for a, b in pairs]
        highs = [libmp.mpf_div(a, b, p, CEIL) for a, b in pairs]
        return Enclosure(_min(*lows), _max(*highs), p)

    def __rtruediv__(self, other) -> "Enclosure":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "Enclosure":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported; use exp/log")
        if n < 0:
            return 1 / (self ** (-n))
        if n == 0:
            return Enclosure.from_int(1, self.precision)
        p = self.precision
        zero = libmp.fzero
        if not _lt(self.lo, zero):
            return Enclosure(libmp.mpf_pow_int(self.lo, n, p, FLOOR), libmp.mpf_pow_int(self.hi, n, p, CEIL), p)
        if not _lt(zero, self.hi):
            neg = (-self) ** n
            return neg if n % 2 == 0 else -neg
        # straddles zero
        if n % 2 == 1:
            return Enclosure(libmp.mpf_pow_int(self.lo, n, p, FLOOR), libmp.mpf_pow_int(self.hi, n, p, CEIL), p)
        m = _max(libmp.mpf_abs(self.lo), libmp.mpf_abs(self.hi))
        return Enclosure(zero, libmp.mpf_pow_int(m, n, p, CEIL), p)

    # ---------------------
    # Elementary functions
    # ---------------------
    def exp(self) -> "Enclosure":
        p = self.precision
        lo = _widen_down(libmp.mpf_exp(self.lo, p, FLOOR), p)
        hi = _widen_up(libmp.mpf_exp(self.hi, p, CEIL), p)
        if _lt(lo, libmp.fzero):
            lo = libmp.fzero
        return Enclosure(lo, hi, p)

    def log(self) -> "Enclosure":
        if not _lt(libmp.fzero, self.lo):
            raise DomainError("log of an enclosure that reaches 0 or below")
        p = self.precision
        lo = _widen_down(libmp.mpf_log(self.lo, p, FLOOR), p)
        hi = _widen_up(libmp.mpf_log(self.hi, p, CEIL), p)
        return Enclosure(lo, hi, p)

    def root(self, k: int) -> "Enclosure":
        """Real k-th root of a positive enclosure, exp(log(x)/k)."""
        return (self.log() / k).exp()

    # ---------------------
    # Inspection
    # ---------------------
    def width(self) -> Fraction:
        return _to_fraction(self.hi) - _to_fraction(self.lo)

    def width_float(self) -> float:
        return float(self.width())

    def lo_fraction(self) -> Fraction:
        return _to_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return _to_fraction(self.hi)

    def mid_float(self) -> float:
        return float((_to_fraction(self.lo) + _to_fraction(self.hi)) / 2)

    def lo_float(self) -> float:
        return libmp.to_float(self.lo)

    def hi_float(self) -> float:
        return libmp.to_float(self.hi)

    def contains(self, value) -> bool:
        """Containment of an exact value (int, Fraction, float, str) or enclosure."""
        if isinstance(value, Enclosure):
            return not _lt(value.lo, self.lo) and not _lt(self.hi, value.hi)
        if isinstance(value, str):
            value = Fraction(value)
        v = Fraction(value)
        return self.lo_fraction() <= v <= self.hi_fraction()

    def intersects(self, other: "Enclosure") -> bool:
        return not (_lt(self.hi, other.lo) or _lt(other.hi, self.lo))

    def default_digits(self) -> int:
        return int(math.ceil(self.precision * math.log10(2))) + 2

    def lo_str(self, digits: Optional[int] = None) -> str:
        return _decimal_str(self.lo, digits or self.default_digits(), ROUND_FLOOR)

    def hi_str(self, digits: Optional[int] = None) -> str:
        return _decimal_str(self.hi, digits or self.default_digits(), ROUND_CEILING)

    def to_dict(self) -> dict:
        return {"lo": self.lo_str(), "hi": self.hi_str(), "bits": self.precision}

    def __repr__(self) -> str:
        return f"Enclosure([{self.lo_str(20)}, {self.hi_str(20)}], bits={self.precision})"


# =========================
# Comparisons
# =========================

def positive(x: Enclosure) -> Verdict3:
    """Verdict of x > 0."""
    if _lt(libmp.fzero, x.lo):
        return V_TRUE
    if not _lt(libmp.fzero, x.hi):
        return V_FALSE
    return Verdict3(UNDECIDED, x.width_float())


def less_than(a: Enclosure, b) -> Verdict3:
    """Verdict of a < b."""
    if not isinstance(b, Enclosure):
        b = Enclosure.exact(b, a.precision)
    return positive(b - a)


def greater_than(a: Enclosure, b) -> Verdict3:
    """Verdict of a > b."""
    if not isinstance(b, Enclosure):
        b = Enclosure.exact(b, a.precision)
    return positive(a - b)


def verdict_all(verdicts) -> Verdict3:
    """Conjunction: FALSE if any FALSE, else UNDECIDED if any UNDECIDED, else TRUE."""
    verdicts = list(verdicts)
    if any(v.is_false for v in verdicts):
        return V_FALSE
    pending = [v for v in verdicts if v.is_undecided]
    if pending:
        return Verdict3(UNDECIDED, max((v.width or 0.0) for v in pending))
    return V_TRUE
