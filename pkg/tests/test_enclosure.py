import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsverify import enclosure as enc
from hsverify.enclosure import Enclosure

mpmath.mp.dps = 80


def mp(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def inside(e: Enclosure, value) -> bool:
    return mp(e.lo) <= value <= mp(e.hi)


positive = st.fractions(min_value=Fraction(1, 1000), max_value=10**9)
big_int = st.integers(3, 10**40)


@given(positive)
@settings(max_examples=150)
def test_ln_contains_oracle(x):
    e = enc.ln_enclosure(x)
    assert inside(e, mpmath.log(mp(x)))
    assert e.width < Fraction(1, 2**100)


@given(big_int)
@settings(max_examples=100)
def test_lnln_contains_oracle(n):
    assert inside(enc.lnln_enclosure(n), mpmath.log(mpmath.log(n)))


@given(st.integers(4, 10**30))
@settings(max_examples=100)
def test_log2log2_contains_oracle(q):
    assert inside(enc.log2log2_enclosure(q), mpmath.log(mpmath.log(q, 2), 2))


@given(st.fractions(min_value=-50, max_value=50))
@settings(max_examples=150)
def test_exp_contains_oracle(x):
    assert inside(enc.exp_enclosure(x), mpmath.exp(mp(x)))


@given(st.fractions(min_value=0, max_value=10**6))
@settings(max_examples=150)
def test_sqrt_contains_oracle(x):
    assert inside(enc.sqrt_enclosure(x), mpmath.sqrt(mp(x)))


@given(st.integers(2, 200), st.fractions(min_value=Fraction(1, 7), max_value=40))
@settings(max_examples=100)
def test_power_contains_oracle(base, exponent):
    assert inside(enc.power_enclosure(base, exponent), mpmath.power(base, mp(exponent)))


@given(st.integers(2, 10**4), st.integers(1, 300))
@settings(max_examples=100)
def test_lnln_of_power(base, k):
    if base**k < 3:
        return
    assert inside(enc.lnln_of_power(base, k), mpmath.log(k * mpmath.log(base)))


@pytest.mark.parametrize("name,value", [
    ("e_gamma", mpmath.exp(mpmath.euler)),
    ("gamma", mpmath.euler),
    ("e", mpmath.e),
    ("pi", mpmath.pi),
    ("ln2", mpmath.log(2)),
])
def test_constants_against_mpmath(name, value):
    assert inside(enc.constant(name), value)
    assert inside(enc.constant(name, 40), value)


def test_self_check():
    assert all(enc.self_check().values())


intervals = st.tuples(st.fractions(-100, 100), st.fractions(0, 10)).map(lambda t: Enclosure(t[0], t[0] + t[1]))


@given(intervals, intervals, st.floats(0, 1), st.floats(0, 1))
def test_interval_arithmetic_is_inclusion_monotone(a, b, s, t):
    x = a.lo + (a.hi - a.lo) * Fraction(s)
    y = b.lo + (b.hi - b.lo) * Fraction(t)
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    if not b.contains(0):
        assert (a / b).contains(x / y)
    assert (a**2).contains(x * x)


def test_reciprocal_of_zero_interval():
    with pytest.raises(ZeroDivisionError):
        Enclosure(-1, 1).reciprocal()


def test_empty_enclosure_rejected():
    with pytest.raises(ValueError):
        Enclosure(2, 1)


def test_robin_bound_special_values():
    assert enc.robin_bound(1) == Enclosure.exact(1)
    assert enc.robin_bound(2) == Enclosure.exact(Fraction(3, 2))
    with pytest.raises(ValueError):
        enc.robin_bound(Fraction(5, 2))


@given(st.integers(3, 10**20))
@settings(max_examples=100)
def test_robin_bound_oracle(n):
    ll = mpmath.log(mpmath.log(n))
    assert inside(enc.robin_bound(n), mpmath.exp(mpmath.euler) * ll + mpmath.mpf("0.6483") / ll)


def test_monotone_threshold_oracle():
    value = mpmath.exp(mpmath.exp(mpmath.sqrt(mpmath.mpf("0.6483") / mpmath.exp(mpmath.euler))))
    t = enc.robin_monotone_threshold()
    assert inside(t, value)
    assert Fraction("6.22") < t.lo and t.hi < Fraction("6.23")


@pytest.mark.parametrize("m", [1, 2, 5, 30, 170])
def test_stirling_envelope_oracle(m):
    lower, upper = enc.stirling_envelope(m)
    base = mpmath.sqrt(2 * mpmath.pi * m) * (m / mpmath.e) ** m
    assert inside(lower, base * mpmath.exp(mpmath.mpf(1) / (12 * m + 1)))
    assert inside(upper, base * mpmath.exp(mpmath.mpf(1) / (12 * m)))
    assert lower.hi < math.factorial(m) < upper.lo


def test_round_out_contains():
    e = Enclosure(Fraction(1, 3), Fraction(1, 3))
    r = e.round_out(20)
    assert e.subset_of(r) and r.width <= Fraction(2, 2**20)
