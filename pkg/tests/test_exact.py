from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsverify import exact
from hsverify.exact import IntPolynomial


def brute_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = [False] * len(flags[i * i :: i])
    return [i for i, f in enumerate(flags) if f]


def test_is_prime_matches_sieve():
    primes = set(sieve(5000))
    assert [n for n in range(5001) if exact.is_prime(n)] == sorted(primes)


@pytest.mark.parametrize("n", [2**61 - 1, 1000000007, 999999999989])
def test_large_primes(n):
    assert exact.is_prime(n)


def test_carmichael_rejected():
    for n in (561, 1105, 1729, 2465, 2821, 6601, 3215031751):
        assert not exact.is_prime(n)


@given(st.integers(1, 3000))
def test_sigma_and_divisors_against_brute_force(n):
    divs = brute_divisors(n)
    assert exact.divisors(n) == divs
    assert exact.sigma(n) == sum(divs)
    assert exact.divisor_count(n) == len(divs)


@given(st.integers(2, 10**12))
@settings(max_examples=200)
def test_factor_round_trip(n):
    f = exact.factor(n)
    assert exact.unfactor(f) == n
    assert all(exact.is_prime(p) and k >= 1 for p, k in f)


def test_prime_powers():
    expected = [q for q in range(2, 200) if len(exact.factor(q)) == 1]
    assert exact.prime_powers(2, 199) == expected
    assert all(exact.is_prime_power(q) for q in expected)
    assert not exact.is_prime_power(12)


@given(st.fractions())
def test_rational_round_trip(x):
    s = exact.format_rational(x)
    assert "/" in s
    assert exact.parse_rational(s) == x


def test_rational_format():
    assert exact.format_rational(Fraction(103, 60)) == "103/60"
    assert exact.format_rational(2) == "2/1"


coeffs = st.lists(st.integers(-50, 50), min_size=0, max_size=7)


@given(coeffs, coeffs, st.integers(-20, 20))
def test_polynomial_ring_operations(a, b, x):
    p, q = IntPolynomial(a), IntPolynomial(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(coeffs, st.integers(-10, 10), st.integers(-10, 10))
def test_taylor_shift(a, s, x):
    p = IntPolynomial(a)
    assert p.taylor_shift(s)(x) == p(x + s)


@given(coeffs, st.integers(1, 4), st.integers(-6, 6))
def test_compose_power(a, d, x):
    p = IntPolynomial(a)
    assert p.compose_power(d)(x) == p(x**d)


@given(coeffs, st.integers(-5, 30))
def test_positive_from_is_sound(a, t0):
    p = IntPolynomial(a)
    if p.positive_from(t0):
        for k in range(0, 200, 7):
            assert p(Fraction(t0) + Fraction(k, 3)) > 0


def test_positive_from_examples():
    x = IntPolynomial.x()
    assert (x - 3).positive_from(4)
    assert not (x - 3).positive_from(3)
    assert (x**2 - 10 * x + 1).positive_from(10)


@given(coeffs, st.lists(st.integers(-9, 9), min_size=1, max_size=3))
def test_exact_division_by_monic(a, b):
    p = IntPolynomial(a)
    d = IntPolynomial(b + [1])
    assert (p * d).exact_div(d).coeffs == p.coeffs
    q, r = (p * d + 1).divmod(d) if d.degree > 0 else (p, IntPolynomial([]))
    assert r.degree < max(d.degree, 1)


def test_binomial_factorial():
    assert exact.binomial(10, 3) == 120
    assert exact.factorial(10) == 3628800
