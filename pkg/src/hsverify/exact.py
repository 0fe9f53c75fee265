"""Exact integer and rational arithmetic plus elementary number theory.

Integers are Python ints and rationals are :class:`fractions.Fraction`, both of
which are unbounded and always normalized.  This module adds factorization,
the divisor functions and a small integer polynomial type used for the order
and minimal-index formulas of groups of Lie type.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Factorization = list  # list[tuple[int, int]], primes strictly increasing

_SIEVE_LIMIT = 10**6


@lru_cache(maxsize=1)
def small_primes() -> tuple[int, ...]:
    """All primes below 10^6, by a sieve of Eratosthenes."""
    n = _SIEVE_LIMIT
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n, p)))
    return tuple(i for i in range(n) if sieve[i])


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= 3317044064679887385961981:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(20)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factor(n)) == 1


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)  # seeded: factor() must be deterministic
    while True:
        x = rng.randrange(2, n)
        y, c, g = x, rng.randrange(1, n), 1
        while g == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            g = math.gcd(abs(x - y), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _split(d, out)
    _split(n // d, out)


def factor(n: int) -> Factorization:
    """Prime factorization of ``n >= 1`` as ``[(p, e), ...]`` with p increasing.

    Trial division by the primes below 10^6, then Pollard rho on whatever
    cofactor remains.
    """
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n < _SIEVE_LIMIT**2:
            out[n] = out.get(n, 0) + 1
        else:
            _split(n, out)
    return sorted(out.items())


def factor_product(numbers: Iterable[int]) -> Factorization:
    """Factorization of a product, assembled from the factors' factorizations."""
    out: dict[int, int] = {}
    for m in numbers:
        for p, e in factor(m):
            out[p] = out.get(p, 0) + e
    return sorted(out.items())


def unfactor(f: Factorization) -> int:
    return math.prod(p**e for p, e in f)


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    return math.prod((p ** (e + 1) - 1) // (p - 1) for p, e in factor(n))


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for _, e in factor(n))


def prime_omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factor(n))


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"binomial({n}, {k}) needs 0 <= k <= n")
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


def to_fraction(x) -> Fraction:
    """Exact conversion; strings like "0.6483" are read as decimals, not floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(x)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in one variable with integer coefficients, ascending degree."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([0, 1])

    @classmethod
    def const(cls, a: int) -> "IntPolynomial":
        return cls([a])

    @classmethod
    def monomial(cls, degree: int, a: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [a])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, q):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * q + a
        return acc

    def _coerce(self, other) -> "IntPolynomial":
        return other if isinstance(other, IntPolynomial) else IntPolynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def compose_power(self, d: int) -> "IntPolynomial":
        """p(x^d)."""
        out = [0] * (d * max(self.degree, 0) + 1)
        for i, a in enumerate(self.coeffs):
            out[i * d] = a
        return IntPolynomial(out)

    def divmod(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division by a monic (or +-1 leading) divisor, exact over the integers."""
        if other.leading not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - other.degree, 1)
        for i in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[i] * other.leading
            if c:
                quot[i - other.degree] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - other.degree + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod(other)
        if r.coeffs:
            raise ValueError("polynomial division is not exact")
        return q

    def taylor_shift(self, a: int) -> "IntPolynomial":
        """p(x + a)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return IntPolynomial(c)

    def positive_from(self, a: int) -> bool:
        """True if p(x) > 0 for every real x >= a, via nonnegative p(x + a) coefficients.

        Sufficient, not necessary: a False answer proves nothing.
        """
        shifted = self.taylor_shift(a).coeffs
        return bool(shifted) and shifted[0] > 0 and all(c >= 0 for c in shifted)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{'*' + mono if mono else ''}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        s = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


Q = IntPolynomial.x()


def qpoly(*coeffs: int) -> IntPolynomial:
    return IntPolynomial(coeffs)


def prime_powers(lo: int, hi: int) -> list[int]:
    """Prime powers q with lo <= q <= hi, increasing."""
    return [q for q in range(max(lo, 2), hi + 1) if is_prime_power(q)]


def characteristic(q: int) -> int:
    f = factor(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return f[0][0]
