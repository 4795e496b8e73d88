"""Exact scalar arithmetic: arbitrary-precision rationals and rigorous intervals.

Every probability in the finite-space paths of this library is a ``Rat``
(an alias of :class:`fractions.Fraction`): arithmetic is exact, values are
kept canonical (gcd-reduced, positive denominator) by construction, and no
rounding ever occurs.  Families with transcendental weights use
:class:`IntervalScalar`, an enclosure ``[lo, hi]`` with exact rational
endpoints.  Addition, subtraction, multiplication and integer powers of
intervals are computed exactly, so enclosures are preserved trivially;
outward rounding enters only for transcendental functions (``exp``) and
when rendering endpoints as decimal strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction

DEFAULT_PRECISION_BITS = 128

_LOG10_2 = 0.30102999566398119


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binom requires nonnegative arguments")
    return math.comb(n, k)


def parse_rat(text: str) -> Rat:
    """Parse 'p/q', integer, or decimal notation into an exact rational."""
    return Fraction(text.strip())


def format_rat(x: Rat) -> str:
    """Canonical string form: 'p/q' with q > 0, or 'p' when q == 1."""
    return str(x)


def approx_str(x: Rat, significant: int = 12) -> str:
    """Decimal rendering of a rational, presentation only, never exact."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    a = abs(x)
    exp10 = 0
    while a >= 1:
        a /= 10
        exp10 += 1
    while a < Fraction(1, 10):
        a *= 10
        exp10 -= 1
    # a in [1/10, 1); round half-up to `significant` digits
    scaled = a * 10**significant
    digits = scaled.numerator // scaled.denominator
    if 2 * (scaled - digits) >= 1:
        digits += 1
    text = str(digits).rjust(significant, "0")
    if len(text) > significant:  # rounding carried into a new digit
        exp10 += 1
        text = text[:significant]

    def strip(s: str) -> str:
        return s.rstrip("0").rstrip(".") if "." in s else s

    if 0 < exp10 <= significant:
        return sign + strip(text[:exp10] + "." + text[exp10:])
    if -3 < exp10 <= 0:
        return sign + strip("0." + "0" * (-exp10) + text)
    return f"{sign}{text[0]}.{text[1:]}e{exp10 - 1:+d}"


def _decimal_digits(precision_bits: int) -> int:
    return max(1, int(precision_bits * _LOG10_2))


def fraction_to_decimal(x: Rat, digits: int, round_up: bool) -> str:
    """Exact decimal string with `digits` fractional digits, rounded directionally."""
    scale = 10**digits
    num = x.numerator * scale
    den = x.denominator
    n = -((-num) // den) if round_up else num // den
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class IntervalScalar:
    """Enclosure [lo, hi] with exact rational endpoints.

    The contract is containment: if inputs enclose exact values, every
    operation's result encloses the exact result.  `precision_bits` sets
    the target width of transcendental enclosures and the granularity of
    decimal serialization; it never affects +, -, *, ** which are exact.
    """

    lo: Rat
    hi: Rat
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")
        if self.precision_bits < 1:
            raise ValueError("precision_bits must be positive")

    @classmethod
    def point(cls, x, precision_bits: int = DEFAULT_PRECISION_BITS) -> "IntervalScalar":
        """Embed an exact value as the degenerate interval [x, x]."""
        x = Fraction(x)
        return cls(x, x, precision_bits)

    @property
    def width(self) -> Rat:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if isinstance(x, IntervalScalar):
            return self.lo <= x.lo and x.hi <= self.hi
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def midpoint(self) -> Rat:
        return (self.lo + self.hi) / 2

    def _coerce(self, other) -> "IntervalScalar | None":
        if isinstance(other, IntervalScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return IntervalScalar.point(other, self.precision_bits)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntervalScalar(
            self.lo + o.lo, self.hi + o.hi, min(self.precision_bits, o.precision_bits)
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntervalScalar(
            self.lo - o.hi, self.hi - o.lo, min(self.precision_bits, o.precision_bits)
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalScalar(
            min(products), max(products), min(self.precision_bits, o.precision_bits)
        )

    __rmul__ = __mul__

    def __neg__(self):
        return IntervalScalar(-self.hi, -self.lo, self.precision_bits)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("interval powers support nonnegative integer exponents only")
        if n == 0:
            return IntervalScalar.point(1, self.precision_bits)
        lo_p, hi_p = self.lo**n, self.hi**n
        if n % 2 == 1 or self.lo >= 0:
            return IntervalScalar(lo_p, hi_p, self.precision_bits)
        if self.hi <= 0:
            return IntervalScalar(hi_p, lo_p, self.precision_bits)
        # even power of an interval spanning zero
        return IntervalScalar(Fraction(0), max(lo_p, hi_p), self.precision_bits)

    def exp(self) -> "IntervalScalar":
        """Enclosure of e^x over the interval, endpoint error below 2^-precision_bits."""
        err = Fraction(1, 2 ** (self.precision_bits + 1))
        lo, _ = _exp_bounds(self.lo, err)
        _, hi = _exp_bounds(self.hi, err)
        return IntervalScalar(lo, hi, self.precision_bits)

    def widen_to(self, precision_bits: int) -> "IntervalScalar":
        """Outward rounding onto the 2^-precision_bits grid; monotone outward."""
        scale = 2**precision_bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(-math.floor(-self.hi * scale), scale)
        return IntervalScalar(lo, hi, precision_bits)

    def to_decimal_strings(self, digits: int | None = None) -> tuple[str, str]:
        """(lo, hi) as decimal strings, lo rounded down and hi rounded up."""
        d = digits if digits is not None else _decimal_digits(self.precision_bits)
        return (
            fraction_to_decimal(self.lo, d, round_up=False),
            fraction_to_decimal(self.hi, d, round_up=True),
        )

    def __repr__(self):
        lo, hi = self.to_decimal_strings(digits=min(20, _decimal_digits(self.precision_bits)))
        return f"IntervalScalar[{lo}, {hi}]"


Scalar = Union[Rat, IntervalScalar]


def interval_pow(x: IntervalScalar, n: int) -> IntervalScalar:
    """Enclosure of x^n for a nonnegative integer n; x^0 = [1, 1]."""
    return x**n


def interval_exp(x: IntervalScalar) -> IntervalScalar:
    """Enclosure of e^x."""
    return x.exp()


def _exp_bounds(t: Rat, err: Fraction) -> tuple[Rat, Rat]:
    # Taylor sum with a geometric tail bound: once N + 1 > |t|,
    #   |e^t - sum_{i<N} t^i/i!| <= (|t|^N / N!) / (1 - |t|/(N+1)).
    t = Fraction(t)
    abs_t = abs(t)
    total = Fraction(1)
    term = Fraction(1)  # t^i / i!
    abs_term = Fraction(1)  # |t|^i / i!
    i = 0
    while True:
        i += 1
        term = term * t / i
        abs_term = abs_term * abs_t / i
        total += term
        if i + 1 > abs_t:
            tail = abs_term / (1 - abs_t / (i + 1))
            if tail <= err:
                return max(Fraction(0), total - tail), total + tail


def scalar_bounds(x: Scalar) -> tuple[Rat, Rat]:
    """Rational lower/upper bounds of a scalar; degenerate for a Rat."""
    if isinstance(x, IntervalScalar):
        return x.lo, x.hi
    return x, x
