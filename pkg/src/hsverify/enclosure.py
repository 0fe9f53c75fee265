"""Certified rational enclosures of real numbers.

An :class:`Enclosure` is a closed interval ``[lo, hi]`` with rational
endpoints that provably contains some real quantity.  Interval arithmetic on
rationals is exact, so only the transcendental kernels (``ln``, ``exp``,
``sqrt``) round, and they round outward.

The kernels work in binary fixed point: a real ``v`` is bracketed by integers
``L <= v * 2**W <= H``.  Every step that floors feeds the lower bound and
every step that ceils feeds the upper bound, so the bracket is valid by
monotonicity of the series used.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

DEFAULT_PRECISION = int(os.environ.get("HS_PRECISION_BITS", "128"))
RETRY_PRECISION = 512
_GUARD = 24

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x) -> "Enclosure":
        x = _frac(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = _frac(x)
        return self.lo <= x <= self.hi

    def subset_of(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Enclosure([{float(self.lo):.12g}, {float(self.hi):.12g}])"

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _lift(x) -> "Enclosure":
        return x if isinstance(x, Enclosure) else Enclosure.exact(x)

    def __add__(self, other):
        o = self._lift(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._lift(other)
        return Enclosure(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.lo >= 0 and o.lo >= 0:
            return Enclosure(self.lo * o.lo, self.hi * o.hi)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(p), max(p))

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"enclosure {self!r} contains zero")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        if self.lo >= 0 or k % 2 == 1:
            return Enclosure(self.lo**k, self.hi**k)
        top = max(self.lo**k, self.hi**k)
        return Enclosure(0 if self.lo <= 0 <= self.hi else min(self.lo**k, self.hi**k), top)

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def round_out(self, bits: int) -> "Enclosure":
        """Widen to dyadic endpoints with denominator 2**bits."""
        s = 1 << bits
        lo = Fraction(math.floor(self.lo * s), s)
        hi = Fraction(math.ceil(self.hi * s), s)
        return Enclosure(lo, hi)

    # comparisons that are certain, not merely probable ---------------------

    def certainly_lt(self, x) -> bool:
        return self.hi < self._lift(x).lo

    def certainly_le(self, x) -> bool:
        return self.hi <= self._lift(x).lo

    def certainly_gt(self, x) -> bool:
        return self.lo > self._lift(x).hi


# ---------------------------------------------------------------------------
# fixed-point kernels


def _atanh_series(num: int, den: int, w: int) -> tuple[int, int]:
    """Bracket of atanh(num/den) * 2**w for 0 <= num/den <= 1/3."""
    if num == 0:
        return 0, 0
    z_lo = (num << w) // den
    z_hi = _ceil_div(num << w, den)
    one = 1 << w

    z2 = (z_lo * z_lo) >> w
    t, s, k = z_lo, z_lo, 1
    while t:
        t = (t * z2) >> w
        k += 2
        s += t // k
    lo = s

    z2 = _ceil_div(z_hi * z_hi, one)
    t, s, k = z_hi, z_hi, 1
    while t > 1:
        t = _ceil_div(t * z2, one)
        k += 2
        s += _ceil_div(t, k)
    # remaining terms: sum_{j>=1} t z^(2j)/(k+2j) <= t * (1/9) / (1 - 1/9)
    t = _ceil_div(t * z2, one)
    hi = s + _ceil_div(9 * t, 8) + 1
    return lo, hi


@lru_cache(maxsize=64)
def _ln2_fixed(w: int) -> tuple[int, int]:
    lo, hi = _atanh_series(1, 3, w)
    return 2 * lo, 2 * hi


def _ln_fixed(x: Fraction, w: int) -> tuple[int, int]:
    """Bracket of ln(x) * 2**w for rational x > 0."""
    num, den = x.numerator, x.denominator
    k = num.bit_length() - den.bit_length()
    # m = x / 2**k, adjusted into [1, 2)
    if k >= 0:
        mn, md = num, den << k
    else:
        mn, md = num << -k, den
    if mn < md:
        k -= 1
        mn <<= 1
    elif mn >= 2 * md:
        k += 1
        md <<= 1
    # ln m = 2 atanh((m-1)/(m+1))
    a_lo, a_hi = _atanh_series(mn - md, mn + md, w)
    l2_lo, l2_hi = _ln2_fixed(w)
    if k >= 0:
        return 2 * a_lo + k * l2_lo, 2 * a_hi + k * l2_hi
    return 2 * a_lo + k * l2_hi, 2 * a_hi + k * l2_lo


def _exp_fixed(x: Fraction, w: int) -> tuple[int, int]:
    """Bracket of exp(x) * 2**w for rational x >= 0."""
    if x == 0:
        one = 1 << w
        return one, one
    s = max(0, math.ceil(x).bit_length()) + 8
    # r = x / 2**s in (0, 1/256]
    rn, rd = x.numerator, x.denominator << s
    one = 1 << w

    r_lo = (rn << w) // rd
    t, acc, i = one, one, 0
    while t:
        i += 1
        t = (t * r_lo) // (i << w)
        acc += t
    lo = acc

    r_hi = _ceil_div(rn << w, rd)
    t, acc, i = one, one, 0
    while t > 1:
        i += 1
        t = _ceil_div(t * r_hi, i << w)
        acc += t
    hi = acc + 2 * t + 1  # tail ratio <= r/i <= 1/2

    for _ in range(s):
        lo = (lo * lo) >> w
        hi = _ceil_div(hi * hi, one)
    return lo, hi


def _fixed_to_enclosure(lo: int, hi: int, w: int) -> Enclosure:
    d = 1 << w
    return Enclosure(Fraction(lo, d), Fraction(hi, d))


# ---------------------------------------------------------------------------
# public transcendental functions


def ln_enclosure(x, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of ln(x), width at most 2**-precision."""
    x = _frac(x)
    if x <= 0:
        raise ValueError(f"ln undefined for {x}")
    if x == 1:
        return Enclosure.exact(0)
    k = abs(x.numerator.bit_length() - x.denominator.bit_length()) + 1
    w = precision + _GUARD + k.bit_length()
    return _fixed_to_enclosure(*_ln_fixed(x, w), w).round_out(precision + 2)


def ln_interval(e: Enclosure, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """ln over an enclosure (monotone)."""
    if e.lo <= 0:
        raise ValueError(f"ln undefined on {e!r}")
    if e.lo == e.hi:
        return ln_enclosure(e.lo, precision)
    return Enclosure(ln_enclosure(e.lo, precision).lo, ln_enclosure(e.hi, precision).hi)


def lnln_enclosure(x, precision: int = DEFAULT_PRECISION) -> Enclosure:
    x = _frac(x)
    if x <= 1:
        raise ValueError(f"ln ln undefined for {x}")
    return ln_interval(ln_enclosure(x, precision + 8), precision)


def ln_of_power(base, exponent, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """ln(base**exponent) = exponent * ln(base) without forming the power."""
    return ln_enclosure(base, precision + 16) * _frac(exponent)


def lnln_of_power(base, exponent, precision: int = DEFAULT_PRECISION) -> Enclosure:
    return ln_interval(ln_of_power(base, exponent, precision + 8), precision)


def exp_enclosure(x, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of exp(x) with relative width at most about 2**-precision."""
    x = _frac(x)
    if x == 0:
        return Enclosure.exact(1)
    ax = abs(x)
    s = max(0, math.ceil(ax).bit_length()) + 8
    w = precision + s + _GUARD
    e = _fixed_to_enclosure(*_exp_fixed(ax, w), w)
    if x < 0:
        e = e.reciprocal()
        # keep denominators bounded; 2|x| bits exceed |x| log2(e)
        return e.round_out(precision + _GUARD + int(ax * 2) + 2)
    return e


def exp_interval(e: Enclosure, precision: int = DEFAULT_PRECISION) -> Enclosure:
    if e.lo == e.hi:
        return exp_enclosure(e.lo, precision)
    return Enclosure(exp_enclosure(e.lo, precision).lo, exp_enclosure(e.hi, precision).hi)


def sqrt_enclosure(x, precision: int = DEFAULT_PRECISION) -> Enclosure:
    x = _frac(x)
    if x < 0:
        raise ValueError(f"sqrt undefined for {x}")
    w = precision + _GUARD
    n = x * (1 << (2 * w))
    lo = math.isqrt(math.floor(n))
    c = math.ceil(n)
    hi = math.isqrt(c)
    if hi * hi < c:
        hi += 1
    return _fixed_to_enclosure(lo, hi, w)


def sqrt_interval(e: Enclosure, precision: int = DEFAULT_PRECISION) -> Enclosure:
    if e.lo == e.hi:
        return sqrt_enclosure(e.lo, precision)
    return Enclosure(sqrt_enclosure(e.lo, precision).lo, sqrt_enclosure(e.hi, precision).hi)


def power_enclosure(base, exponent, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """base**exponent for rational base > 0 and rational exponent."""
    base, exponent = _frac(base), _frac(exponent)
    if exponent.denominator == 1:
        k = exponent.numerator
        return Enclosure.exact(base**k)
    return exp_interval(ln_enclosure(base, precision + 32) * exponent, precision)


def log2log2_enclosure(q, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """log2(log2(q)) computed as ln(ln q / ln 2) / ln 2; exactly 0 at q = 2."""
    q = _frac(q)
    if q == 2:
        return Enclosure.exact(0)
    if q < 2:
        raise ValueError(f"log2 log2 undefined or negative for {q}")
    p = precision + 8
    ln2 = ln_enclosure(2, p)
    return ln_interval(ln_enclosure(q, p) / ln2, p) / ln2


# ---------------------------------------------------------------------------
# constants

# 42 correct decimals, truncated; hi = lo + 1e-42.
_E_GAMMA_DIGITS = "1.781072417990197985236504103107179549169645"
_GAMMA_DIGITS = "0.577215664901532860606512090082402431042159"
_E_DIGITS = "2.718281828459045235360287471352662497757247"
_PI_DIGITS = "3.141592653589793238462643383279502884197169"
_ULP = Fraction(1, 10**42)


def _pinned(digits: str) -> Enclosure:
    lo = Fraction(digits)
    return Enclosure(lo, lo + _ULP)


@dataclass(frozen=True)
class ConstantTable:
    e_gamma: Enclosure
    gamma: Enclosure
    e: Enclosure
    pi: Enclosure
    ln2: Enclosure


CONSTANTS = ConstantTable(
    e_gamma=_pinned(_E_GAMMA_DIGITS),
    gamma=_pinned(_GAMMA_DIGITS),
    e=_pinned(_E_DIGITS),
    pi=_pinned(_PI_DIGITS),
    ln2=ln_enclosure(2, 160),
)

# the 42-digit pins bound the usable precision of anything involving them
_PIN_BITS = 136


def constant(name: str, precision: int = DEFAULT_PRECISION) -> Enclosure:
    c = getattr(CONSTANTS, name)
    if precision < _PIN_BITS:
        return c.round_out(precision + 2)
    return c


def _pi_machin(w: int) -> tuple[int, int]:
    """pi * 2**w via 16 atan(1/5) - 4 atan(1/239), alternating series."""

    def atan_inv(m: int) -> tuple[int, int]:
        one = 1 << w
        m2 = m * m
        lo = hi = 0
        t = one // m
        k, sign = 1, 1
        terms = []
        while t:
            terms.append((sign, t, k))
            t //= m2
            k += 2
            sign = -sign
        for sign, t, k in terms:
            lo += sign * (t // k)
            hi += sign * (t // k)
        # each term floored twice (power, division): error <= 2 per term
        err = 2 * len(terms) + 2
        return lo - err, hi + err

    a_lo, a_hi = atan_inv(5)
    b_lo, b_hi = atan_inv(239)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def self_check(bits: int = 200) -> dict[str, bool]:
    """Recompute the pinned constants by series and check containment."""
    e_series = _fixed_to_enclosure(*_exp_fixed(Fraction(1), bits), bits)
    pi_series = _fixed_to_enclosure(*_pi_machin(bits), bits)
    eg_series = exp_interval(CONSTANTS.gamma, bits)
    return {
        "e_overlap": not (e_series.hi < CONSTANTS.e.lo or CONSTANTS.e.hi < e_series.lo),
        "pi_overlap": not (pi_series.hi < CONSTANTS.pi.lo or CONSTANTS.pi.hi < pi_series.lo),
        "e_gamma_overlap": not (eg_series.hi < CONSTANTS.e_gamma.lo or CONSTANTS.e_gamma.hi < eg_series.lo),
        "e_gamma_in_range": CONSTANTS.e_gamma.subset_of(Enclosure(Fraction("1.78"), Fraction("1.79"))),
    }


# ---------------------------------------------------------------------------
# the divisor-sum bound and related envelopes

ROBIN_CONSTANT = Fraction("0.6483")


def robin_bound_from_lnln(lnln: Enclosure, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """e^gamma * L + 0.6483 / L for an enclosure L of ln ln x."""
    return constant("e_gamma", precision) * lnln + ROBIN_CONSTANT / lnln


def robin_bound(x, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """The divisor-sum bound B(x): 1 at x=1, 3/2 at x=2, Robin's form for x >= 3.

    It dominates sigma(n)/n for every positive integer n, and hence the
    index-reciprocal sum of every group of order n.
    """
    x = _frac(x)
    if x == 1:
        return Enclosure.exact(1)
    if x == 2:
        return Enclosure.exact(Fraction(3, 2))
    if x < 3:
        raise ValueError(f"the divisor-sum bound is defined on {{1, 2}} and [3, oo), not at {x}")
    return robin_bound_from_lnln(lnln_enclosure(x, precision + 8), precision)


def robin_bound_of_power(base, exponent, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """B(base**exponent) without expanding the power (base**exponent >= 3)."""
    return robin_bound_from_lnln(lnln_of_power(base, exponent, precision + 8), precision)


def robin_monotone_threshold(precision: int = DEFAULT_PRECISION) -> Enclosure:
    """exp(exp(sqrt(0.6483 / e^gamma))): B is increasing beyond this point."""
    inner = sqrt_interval(ROBIN_CONSTANT / constant("e_gamma", precision), precision)
    out = exp_interval(exp_interval(inner, precision), precision)
    if precision < _PIN_BITS:
        out = out.round_out(precision)
    return out


def stirling_envelope(m: int, precision: int = DEFAULT_PRECISION) -> tuple[Enclosure, Enclosure]:
    """Enclosures of sqrt(2 pi m) (m/e)^m e^(1/(12m+1)) and the same with e^(1/(12m)).

    The first is a strict lower bound for m!, the second a strict upper bound.
    """
    if m < 1:
        raise ValueError("m >= 1 required")
    p = precision + 32
    pi = constant("pi", max(p, _PIN_BITS))
    # ln of the common factor: 1/2 ln(2 pi m) + m ln m - m
    base = ln_interval(2 * pi * m, p) / 2 + ln_enclosure(m, p + m.bit_length()) * m - m
    lower = exp_interval(base + Fraction(1, 12 * m + 1), precision)
    upper = exp_interval(base + Fraction(1, 12 * m), precision)
    return lower, upper
