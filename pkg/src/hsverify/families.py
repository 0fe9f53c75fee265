"""Data on finite simple groups consumed by the verifiers.

Everything here is literature data transcribed once and audited: orders,
smallest maximal indices, bounds on the number of isomorphism types of
maximal subgroups, order formulas of groups of Lie type.  ``validate_tables``
checks internal consistency and compares a digest of the canonical
serialization against the audited value, so a corrupted cell is caught even
when it stays arithmetically plausible.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from functools import reduce
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable

from . import exact
from .exact import Q, IntPolynomial, factorial

# ---------------------------------------------------------------------------
# provenance labels

PROV_SPORADIC = "ATLAS of Finite Groups: orders, maximal subgroup indices and counts"
PROV_BHR = "Bray-Holt-Roney-Dougal tables of maximal subgroups of low-dimensional classical groups"
PROV_COOPERSTEIN = "Cooperstein: minimal degrees of classical groups"
PROV_ORDERS = "standard order formulas for groups of Lie type"
PROV_EXCEPTIONAL = "maximal subgroup counts and minimal degrees of exceptional groups (Wilson, Craven, Liebeck-Seitz)"
PROV_E8 = "Liebeck-Seitz and Craven classifications of maximal subgroups of E8(q)"
PROV_GAP = "external GAP computation (axiom)"
PROV_PS = "Praeger-Saxl bound on primitive groups (axiom): |M| <= 4^n"
PROV_ROBIN = "Robin's bound sigma(n) <= n B(n) (axiom)"


# ---------------------------------------------------------------------------
# sporadic groups


@dataclass(frozen=True)
class SporadicRecord:
    name: str
    order: int
    minimal_indices: tuple[int, ...]
    ell_bound: int
    bn_level: int  # 0: certified by an exact J value instead of a bound


MONSTER_ORDER = 808017424794512875886459904961710757005754368000000000

SPORADIC: tuple[SporadicRecord, ...] = (
    SporadicRecord("M11", 7920, (11,), 5, 0),
    SporadicRecord("M12", 95040, (12, 66), 8, 2),
    SporadicRecord("M22", 443520, (22, 77), 7, 2),
    SporadicRecord("M23", 10200960, (23, 253), 7, 2),
    SporadicRecord("M24", 244823040, (24, 276), 9, 2),
    SporadicRecord("J1", 175560, (266,), 7, 1),
    SporadicRecord("J2", 604800, (100,), 9, 1),
    SporadicRecord("HS", 44352000, (100,), 10, 1),
    SporadicRecord("J3", 50232960, (6156,), 8, 1),
    SporadicRecord("McL", 898128000, (275,), 10, 1),
    SporadicRecord("He", 4030387200, (2058,), 10, 1),
    SporadicRecord("Ru", 145926144000, (4060,), 15, 1),
    SporadicRecord("Suz", 448345497600, (1782,), 16, 1),
    SporadicRecord("O'N", 460815505920, (122760,), 9, 1),
    SporadicRecord("Co3", 495766656000, (276,), 14, 1),
    SporadicRecord("Co2", 42305421312000, (2300,), 11, 1),
    SporadicRecord("Fi22", 64561751654400, (3510,), 13, 1),
    SporadicRecord("HN", 273030912000000, (114000,), 14, 1),
    SporadicRecord("Ly", 51765179004000000, (8835156,), 9, 1),
    SporadicRecord("Th", 90745943887872000, (143127000,), 16, 1),
    SporadicRecord("Fi23", 4089470473293004800, (31671,), 14, 1),
    SporadicRecord("Co1", 4157776806543360000, (98280,), 22, 1),
    SporadicRecord("J4", 86775571046077562880, (173067389,), 13, 1),
    SporadicRecord("Fi24'", 1255205709190661721292800, (306936,), 22, 1),
    SporadicRecord("B", 4154781481226426191177580544000000, (13571955000,), 30, 1),
    SporadicRecord("M", MONSTER_ORDER, (972394611420091860000,), 43, 1),
    SporadicRecord("Tits", 17971200, (1600,), 6, 1),
)

# the Monster's order as printed is split over two lines; the ATLAS factorization
# pins the concatenation
MONSTER_ORDER_HEAD = "808017424794512875886459904961710"
MONSTER_ORDER_TAIL = "757005754368000000000"
MONSTER_FACTORIZATION = (
    (2, 46), (3, 20), (5, 9), (7, 6), (11, 2), (13, 3), (17, 1), (19, 1),
    (23, 1), (29, 1), (31, 1), (41, 1), (47, 1), (59, 1), (71, 1),
)


# ---------------------------------------------------------------------------
# classical groups

CLASSICAL_FAMILIES = ("PSL", "PSU", "PSp", "POmega", "POmega+", "POmega-")

# upper bound C for (number of isomorphism types of maximal subgroups) - pi(k), q = p^k;
# missing entries are dimensions where the family is undefined or not simple
C_TABLE: dict[str, dict[int, int]] = {
    "PSL": {2: 5, 3: 9, 4: 14, 5: 12, 6: 23, 7: 14, 8: 20, 9: 21, 10: 29, 11: 21, 12: 31},
    "PSU": {3: 8, 4: 13, 5: 10, 6: 20, 7: 11, 8: 17, 9: 16, 10: 25, 11: 16, 12: 26},
    "PSp": {4: 9, 6: 17, 8: 18, 10: 16, 12: 24},
    "POmega": {7: 12, 9: 21, 11: 19},
    "POmega+": {8: 22, 10: 20, 12: 31},
    "POmega-": {8: 10, 10: 19, 12: 21},
}

# smallest q for which the generic bound settles PSL(n, q) (as published), and the
# C row printed alongside it, transcribed separately so the two copies cross-check
PSL_Q_THRESHOLDS: dict[int, int] = {2: 59, 3: 11, 4: 7, 5: 4, 6: 3, 7: 3, 8: 3, 9: 2, 10: 2, 11: 2, 12: 2}
PSL_THRESHOLD_C: dict[int, int] = {2: 5, 3: 9, 4: 14, 5: 12, 6: 23, 7: 14, 8: 20, 9: 21, 10: 29, 11: 21, 12: 31}


@dataclass(frozen=True)
class B1Special:
    """A group settled by the B_1 bound with an individually known ell and m_1."""

    family: str
    n: int
    q: int
    ell: int
    m1: int


B1_SPECIAL: tuple[B1Special, ...] = (
    B1Special("PSL", 4, 4, 9, 85),
    B1Special("PSL", 4, 5, 11, 156),
    B1Special("PSL", 5, 3, 10, 121),
    B1Special("PSL", 6, 2, 7, 63),
    B1Special("PSL", 7, 2, 10, 127),
    B1Special("PSL", 8, 2, 13, 255),
    B1Special("PSp", 8, 2, 11, 120),
)

# groups whose J < 2 was established by direct computation elsewhere
GAP_SETTLED: dict[str, tuple[tuple[int, int], ...]] = {
    "PSL": ((3, 2), (3, 3), (3, 4), (3, 5), (3, 7), (3, 8), (3, 9), (4, 2), (4, 3), (5, 2),
            (2, 4), (2, 5), (2, 7), (2, 8), (2, 9), (2, 11), (2, 13)),
    "PSU": ((3, 3), (3, 4), (3, 5), (4, 2)),
    "PSp": ((4, 3), (4, 4), (6, 2)),
    "POmega": (),
    "POmega+": ((8, 2),),
    "POmega-": ((8, 2),),
}

# (n, q) pairs that are not simple or are excluded from a family's parametrisation
CLASSICAL_EXCLUDED: dict[str, tuple[tuple[int, int], ...]] = {
    "PSL": ((2, 2), (2, 3)),
    "PSU": ((3, 2),),
    "PSp": ((4, 2),),
    "POmega": (),
    "POmega+": (),
    "POmega-": (),
}

# individually known minimal indices overriding the generic m_1 bound
M1_EXCEPTIONS: dict[str, dict[tuple[int, int], int]] = {
    "PSL": {(2, 9): 6},
    "PSU": {(3, 5): 50},
    "PSp": {},
    "POmega": {},
    "POmega+": {},
    "POmega-": {},
}


def classical_admissible(family: str, n: int, q: int) -> bool:
    if not exact.is_prime_power(q) or (n, q) in CLASSICAL_EXCLUDED[family]:
        return False
    if family == "PSL":
        return n >= 2
    if family == "PSU":
        return n >= 3
    if family == "PSp":
        return n >= 4 and n % 2 == 0
    if family == "POmega":
        return n >= 7 and n % 2 == 1 and q % 2 == 1
    return n >= 8 and n % 2 == 0


def classical_order(family: str, n: int, q: int) -> int:
    """Exact order of the simple group."""
    if family == "PSL":
        num = q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(2, n + 1))
        return num // math.gcd(n, q - 1)
    if family == "PSU":
        num = q ** (n * (n - 1) // 2) * math.prod(q**i - (-1) ** i for i in range(2, n + 1))
        return num // math.gcd(n, q + 1)
    if family in ("PSp", "POmega"):
        m = n // 2
        num = q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return num // math.gcd(2, q - 1)
    m = n // 2
    eps = 1 if family == "POmega+" else -1
    num = q ** (m * (m - 1)) * (q**m - eps) * math.prod(q ** (2 * i) - 1 for i in range(1, m))
    return num // math.gcd(4, q**m - eps)


def classical_order_factors(family: str, n: int, q: int) -> tuple[list[int], int]:
    """The order as (list of factors, divisor), for factorising without expanding."""
    if family == "PSL":
        return [q] * (n * (n - 1) // 2) + [q**i - 1 for i in range(2, n + 1)], math.gcd(n, q - 1)
    if family == "PSU":
        return [q] * (n * (n - 1) // 2) + [q**i - (-1) ** i for i in range(2, n + 1)], math.gcd(n, q + 1)
    if family in ("PSp", "POmega"):
        m = n // 2
        return [q] * (m * m) + [q ** (2 * i) - 1 for i in range(1, m + 1)], math.gcd(2, q - 1)
    m = n // 2
    eps = 1 if family == "POmega+" else -1
    return [q] * (m * (m - 1)) + [q**m - eps] + [q ** (2 * i) - 1 for i in range(1, m)], math.gcd(4, q**m - eps)


def order_upper_exponent(family: str, n: int) -> Fraction:
    """e with |G| <= q^e."""
    if family in ("PSL", "PSU", "PSp"):
        return Fraction(n * n)
    return Fraction(n * n, 2)


def order_lower(family: str, n: int, q: int) -> Fraction:
    if family == "PSL":
        return Fraction((q - 1) ** (n - 2) * q ** (n * n - n))
    if family == "PSU":
        return Fraction((q - 1) ** (n - 1) * q ** (n * n - n), q + 1)
    if family == "PSp":
        return Fraction((q - 1) ** (n // 2) * q ** (n * n // 2), 2)
    if family == "POmega":
        return Fraction((q - 1) ** ((n - 1) // 2) * q ** ((n - 1) ** 2 // 2), 2)
    return Fraction((q - 1) ** (n // 2) * q ** (n * (n - 2) // 2), 4)


def generic_order_lower_squared(n: int, q: int) -> Fraction:
    """Square of the family-independent lower bound (1/4)(q-1)^((n-1)/2) q^(n(n-2)/2)."""
    return Fraction((q - 1) ** (n - 1) * q ** (n * (n - 2)), 16)


def m1_symbolic(family: str, n: int) -> tuple[IntPolynomial, IntPolynomial]:
    """Generic lower bound for m_1 as num(q)/den(q), valid for q outside the finite exceptions
    and, for PSp, for q > 2."""
    one = IntPolynomial.const(1)
    if family == "PSL":
        return IntPolynomial.monomial(n - 1), one
    if family == "PSU":
        if n == 4:
            return (Q + 1) * (Q**3 + 1), one
        return IntPolynomial.monomial(2 * n - 2), Q + 1
    if family == "PSp":
        return IntPolynomial.monomial(n - 1), one
    return IntPolynomial.monomial(n - 2), one


def m1_lower(family: str, n: int, q: int) -> Fraction:
    """Lower bound for the smallest index of a proper subgroup."""
    special = M1_EXCEPTIONS[family].get((n, q))
    if special is not None:
        return Fraction(special)
    if family == "PSp" and q == 2:
        return Fraction(2 ** (n - 2))
    num, den = m1_symbolic(family, n)
    return Fraction(num(q), den(q))


# ---------------------------------------------------------------------------
# exceptional groups


@dataclass(frozen=True)
class ExceptionalRecord:
    name: str
    q_constraint: str  # all | q>2 | 2^odd>=8 | 3^odd>=27
    order_factors: tuple[IntPolynomial, ...]
    gcd_kind: str  # "" | "3,q-1" | "3,q+1" | "2,q-1"
    C: int
    r: int
    m1_num: IntPolynomial
    m1_den: IntPolynomial
    m1_exceptions: tuple[tuple[int, int], ...] = ()

    def order_numerator(self) -> IntPolynomial:
        return reduce(lambda a, b: a * b, self.order_factors, IntPolynomial.const(1))

    def order(self, q: int) -> int:
        num = self.order_numerator()(q)
        return num // self.gcd(q)

    def gcd(self, q: int) -> int:
        if self.gcd_kind == "3,q-1":
            return math.gcd(3, q - 1)
        if self.gcd_kind == "3,q+1":
            return math.gcd(3, q + 1)
        if self.gcd_kind == "2,q-1":
            return math.gcd(2, q - 1)
        return 1

    def m1(self, q: int) -> int:
        for qq, value in self.m1_exceptions:
            if qq == q:
                return value
        num, den = self.m1_num(q), self.m1_den(q)
        if num % den:
            raise ValueError(f"{self.name}: m_1 formula not integral at q={q}")
        return num // den

    def admissible(self, q: int) -> bool:
        f = exact.factor(q) if q >= 2 else []
        if len(f) != 1:
            return False
        p, k = f[0]
        if self.q_constraint == "all":
            return True
        if self.q_constraint == "q>2":
            return q > 2
        if self.q_constraint == "2^odd>=8":
            return p == 2 and k % 2 == 1 and q >= 8
        if self.q_constraint == "3^odd>=27":
            return p == 3 and k % 2 == 1 and q >= 27
        raise ValueError(self.q_constraint)

    def admissible_qs(self, qmax: int) -> list[int]:
        return [q for q in exact.prime_powers(2, qmax) if self.admissible(q)]


def _cyclotomic_product(exponents: Iterable[int], twisted: bool = False) -> tuple[IntPolynomial, ...]:
    out = []
    for i in exponents:
        sign = (-1) ** i if twisted else 1
        out.append(IntPolynomial.monomial(i) - sign)
    return tuple(out)


def _m(*factors: IntPolynomial) -> IntPolynomial:
    return reduce(lambda a, b: a * b, factors, IntPolynomial.const(1))


EXCEPTIONAL: tuple[ExceptionalRecord, ...] = (
    ExceptionalRecord("2B2", "2^odd>=8", (Q - 1, Q**2, Q**2 + 1), "", 4, 6, Q**2 + 1, IntPolynomial.const(1)),
    ExceptionalRecord("G2", "q>2", (Q**6, Q**6 - 1, Q**2 - 1), "", 11, 14, Q**6 - 1, Q - 1, ((3, 351), (4, 416))),
    ExceptionalRecord("2G2", "3^odd>=27", (Q**3 + 1, Q**3, Q - 1), "", 5, 8, Q**3 + 1, IntPolynomial.const(1)),
    ExceptionalRecord("3D4", "all", (Q**12, Q**8 + Q**4 + 1, Q**6 - 1, Q**2 - 1), "", 12, 29,
                      (Q + 1) * (Q**8 + Q**4 + 1), IntPolynomial.const(1)),
    ExceptionalRecord("F4", "all", (Q**24,) + _cyclotomic_product((2, 6, 8, 12)), "", 19, 52,
                      (Q**4 + 1) * (Q**12 - 1), Q - 1),
    ExceptionalRecord("2F4", "2^odd>=8", (Q**12, Q**6 + 1, Q**4 - 1, Q**3 + 1, Q - 1), "", 9, 28,
                      (Q**6 + 1) * (Q + 1) * (Q**3 + 1), IntPolynomial.const(1)),
    ExceptionalRecord("E6", "all", (Q**36,) + _cyclotomic_product((2, 5, 6, 8, 9, 12)), "3,q-1", 27, 78,
                      (Q**9 - 1) * (Q**8 + Q**4 + 1), Q - 1),
    ExceptionalRecord("2E6", "all", (Q**36,) + _cyclotomic_product((2, 5, 6, 8, 9, 12), twisted=True), "3,q+1", 25, 82,
                      _m(Q**12 - 1, Q**6 - Q**3 + 1, Q**4 + 1), Q - 1),
    ExceptionalRecord("E7", "all", (Q**63,) + _cyclotomic_product((2, 6, 8, 10, 12, 14, 18)), "2,q-1", 50, 133,
                      _m(Q**14 - 1, Q**9 + 1, Q**5 + 1), Q - 1),
    ExceptionalRecord("E8", "all", (Q**120,) + _cyclotomic_product((2, 8, 12, 14, 18, 20, 24, 30)), "", 166, 248,
                      _m(Q**30 - 1, Q**12 + 1, Q**10 + 1, Q**6 + 1), Q - 1),
)


# ---------------------------------------------------------------------------
# E8(q): isomorphism types of non-subfield maximal subgroups


@dataclass(frozen=True)
class E8ClassCounts:
    fixed: tuple[tuple[str, int], ...]
    # per subclass: list of (primes or None for "every other prime", bound); first match wins
    per_characteristic: tuple[tuple[str, tuple[tuple[tuple[int, ...] | None, int], ...]], ...]

    def fixed_total(self) -> int:
        return sum(v for _, v in self.fixed)

    def subclass_bound(self, name: str, p: int) -> int:
        rules = dict(self.per_characteristic)[name]
        for primes, bound in rules:
            if primes is None or p in primes:
                return bound
        raise KeyError(name)

    def total(self, p: int) -> int:
        return self.fixed_total() + sum(self.subclass_bound(name, p) for name, _ in self.per_characteristic)


def _prime_range(lo: int, hi: int) -> tuple[int, ...]:
    return tuple(p for p in range(lo, hi + 1) if exact.is_prime(p))


E8_COUNTS = E8ClassCounts(
    fixed=(("N1", 8), ("N2", 29), ("N3", 7), ("N4", 3)),
    per_characteristic=(
        ("N5a", (((2,), 26), ((3,), 4), (None, 0))),
        ("N5b", (((2,), 24), ((3,), 30), ((5,), 17), ((7,), 19), ((11, 13), 11),
                 (_prime_range(17, 47), 7), (_prime_range(53, 2617), 2), (None, 0))),
        ("N5c", (((2,), 5), ((5,), 2), (None, 7))),
        ("N5d", (((2,), 7), ((3,), 2), ((5,), 3), ((11,), 2), (None, 1))),
        ("N5e", (((2,), 57), ((3,), 59), ((5,), 64), ((7,), 62),
                 ((11, 13, 17, 19, 29, 31, 41, 61), 67), (None, 69))),
    ),
)

E8_STATED_MAXIMUM = 166


def e8_relevant_primes(counts: E8ClassCounts = E8_COUNTS) -> list[int]:
    """Every prime named in some rule, plus the first prime beyond all of them."""
    named = {p for _, rules in counts.per_characteristic for primes, _ in rules if primes for p in primes}
    beyond = max(named) + 1
    while not exact.is_prime(beyond):
        beyond += 1
    return sorted(named | {beyond})


# ---------------------------------------------------------------------------
# alternating groups


@dataclass(frozen=True)
class JAxiom:
    n: int
    value: Fraction
    exact: bool  # True: J(A_n) == value; False: J(A_n) < value
    provenance: str


ALTERNATING_J_AXIOMS: tuple[JAxiom, ...] = (
    JAxiom(4, Fraction(11, 6), True, PROV_GAP),
    JAxiom(5, Fraction(103, 60), True, PROV_GAP),
    JAxiom(6, Fraction(31, 20), True, PROV_GAP),
    JAxiom(8, Fraction(11, 6), False, PROV_GAP),
    JAxiom(9, Fraction(4, 3), False, PROV_GAP),
    JAxiom(10, Fraction(4, 3), False, PROV_GAP),
    JAxiom(11, Fraction(4, 3), False, PROV_GAP),
    JAxiom(12, Fraction(4, 3), False, PROV_GAP),
    JAxiom(13, Fraction(111, 100), False, PROV_GAP),
)

CATALOG_KINDS = ("intransitive", "imprimitive", "primitive", "axiom-j")


@dataclass(frozen=True)
class CatalogEntry:
    degree: int
    kind: str
    multiplicity: int
    order: Fraction  # an integer order, or a rational J bound for axiom-j rows
    line: int


@dataclass
class AlternatingCatalog:
    entries: list[CatalogEntry] = field(default_factory=list)
    provenance: str = ""

    def degree(self, n: int, kind: str | None = None) -> list[CatalogEntry]:
        return [e for e in self.entries if e.degree == n and (kind is None or e.kind == kind)]

    def has_primitive_data(self, n: int) -> bool:
        return bool(self.degree(n, "primitive"))

    def j_axiom(self, n: int) -> Fraction | None:
        rows = self.degree(n, "axiom-j")
        return min((e.order for e in rows), default=None)

    def maximal_orders(self, n: int) -> list[int]:
        """Distinct orders of maximal subgroups of A_n other than A_{n-1}."""
        orders = {int(e.order) for e in self.entries if e.degree == n and e.kind != "axiom-j"}
        orders.discard(factorial(n - 1) // 2)
        return sorted(orders)


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_catalog(text: str, provenance: str = "") -> AlternatingCatalog:
    """Parse "degree kind multiplicity order" lines; '#' starts a comment."""
    cat = AlternatingCatalog(provenance=provenance)
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 4:
            raise CatalogError(f"expected 4 fields, got {len(parts)}", lineno)
        deg_s, kind, mult_s, order_s = parts
        if kind not in CATALOG_KINDS:
            raise CatalogError(f"unknown kind {kind!r}", lineno)
        try:
            degree, mult = int(deg_s), int(mult_s)
            order = exact.parse_rational(order_s)
        except ValueError as exc:
            raise CatalogError(str(exc), lineno) from None
        if degree < 1 or mult < 1 or order <= 0:
            raise CatalogError("degree, multiplicity and order must be positive", lineno)
        if kind != "axiom-j":
            if order.denominator != 1:
                raise CatalogError("subgroup orders must be integers", lineno)
            half = factorial(degree) // 2
            if half % int(order):
                raise CatalogError(f"order {order} does not divide {degree}!/2", lineno)
            if kind in ("imprimitive", "primitive") and int(order) % degree:
                raise CatalogError(f"transitive order {order} not divisible by degree {degree}", lineno)
        cat.entries.append(CatalogEntry(degree, kind, mult, order, lineno))
    return cat


def ingest_catalog(path: str | Path) -> AlternatingCatalog:
    p = Path(path)
    return parse_catalog(p.read_text(encoding="utf-8"), provenance=f"catalog file {p.name}")


def derived_catalog_lines(n: int) -> list[str]:
    """Intransitive and imprimitive maximal subgroup orders of A_n, from their structure."""
    lines = []
    for k in range(1, (n + 1) // 2):
        if 2 * k < n:
            lines.append(f"{n} intransitive 1 {factorial(k) * factorial(n - k) // 2}")
    for a in range(2, n):
        if n % a == 0:
            b = n // a
            lines.append(f"{n} imprimitive 1 {factorial(a) ** b * factorial(b) // 2}")
    return lines


def default_catalog() -> AlternatingCatalog:
    text = resources.files("hsverify").joinpath("data/alternating_catalog.txt").read_text(encoding="utf-8")
    return parse_catalog(text, provenance="bundled catalog (intransitive and imprimitive rows derived from structure)")


# ---------------------------------------------------------------------------
# the bundle


@dataclass(frozen=True)
class Tables:
    sporadic: tuple[SporadicRecord, ...] = SPORADIC
    c_table: tuple[tuple[str, tuple[tuple[int, int], ...]], ...] = tuple(
        (fam, tuple(sorted(d.items()))) for fam, d in C_TABLE.items()
    )
    psl_thresholds: tuple[tuple[int, int], ...] = tuple(sorted(PSL_Q_THRESHOLDS.items()))
    psl_threshold_c: tuple[tuple[int, int], ...] = tuple(sorted(PSL_THRESHOLD_C.items()))
    b1_special: tuple[B1Special, ...] = B1_SPECIAL
    exceptional: tuple[ExceptionalRecord, ...] = EXCEPTIONAL
    e8: E8ClassCounts = E8_COUNTS
    j_axioms: tuple[JAxiom, ...] = ALTERNATING_J_AXIOMS

    def C(self, family: str, n: int) -> int | None:
        return dict(dict(self.c_table)[family]).get(n)

    def canonical(self) -> str:
        """Deterministic serialization, the input to the audit digest."""

        def enc(x):
            if isinstance(x, IntPolynomial):
                return list(x.coeffs)
            if isinstance(x, Fraction):
                return exact.format_rational(x)
            if isinstance(x, (list, tuple)):
                return [enc(y) for y in x]
            if isinstance(x, dict):
                return {k: enc(v) for k, v in x.items()}
            return x

        payload = {
            "sporadic": [enc(asdict(r)) for r in self.sporadic],
            "c_table": enc(self.c_table),
            "psl_thresholds": enc(self.psl_thresholds),
            "psl_threshold_c": enc(self.psl_threshold_c),
            "b1_special": [enc(asdict(r)) for r in self.b1_special],
            "exceptional": [
                enc({**{k: v for k, v in asdict(r).items() if k not in ("order_factors", "m1_num", "m1_den")},
                     "order_factors": [list(f.coeffs) for f in r.order_factors],
                     "m1_num": list(r.m1_num.coeffs), "m1_den": list(r.m1_den.coeffs)})
                for r in self.exceptional
            ],
            "e8": enc(asdict(self.e8)),
            "j_axioms": [enc(asdict(a)) for a in self.j_axioms],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


AUDITED_DIGEST = "ac10b2f59bc585a8fd6e2a60f22c26ce3369ca895b78a5f001842a8aab156a7f"


def load_tables() -> Tables:
    return Tables()


def mutable_cells(tables: Tables) -> list[tuple[str, Callable[[Tables, int], Tables]]]:
    """Every numeric cell (orders, m_1, ell, C, r) as a (label, apply-delta) pair, for mutation tests."""
    cells: list[tuple[str, Callable[[Tables, int], Tables]]] = []

    def set_sporadic(i, **kw):
        def apply(t: Tables, delta: int) -> Tables:
            rec = t.sporadic[i]
            new = {}
            for key in kw:
                if key == "minimal_indices":
                    j = kw[key]
                    idx = list(rec.minimal_indices)
                    idx[j] += delta
                    new[key] = tuple(idx)
                else:
                    new[key] = getattr(rec, key) + delta
            rows = list(t.sporadic)
            rows[i] = replace(rec, **new)
            return replace(t, sporadic=tuple(rows))
        return apply

    for i, rec in enumerate(tables.sporadic):
        cells.append((f"sporadic/{rec.name}/order", set_sporadic(i, order=None)))
        cells.append((f"sporadic/{rec.name}/ell", set_sporadic(i, ell_bound=None)))
        for j in range(len(rec.minimal_indices)):
            cells.append((f"sporadic/{rec.name}/m{j + 1}", set_sporadic(i, minimal_indices=j)))

    for fam, entries in tables.c_table:
        for n, _ in entries:
            def apply(t: Tables, delta: int, fam=fam, n=n) -> Tables:
                rows = []
                for f, es in t.c_table:
                    rows.append((f, tuple((k, v + delta if (f, k) == (fam, n) else v) for k, v in es)))
                return replace(t, c_table=tuple(rows))
            cells.append((f"classical/{fam}/C{n}", apply))

    for i, rec in enumerate(tables.b1_special):
        for key in ("ell", "m1"):
            def apply(t: Tables, delta: int, i=i, key=key) -> Tables:
                rows = list(t.b1_special)
                rows[i] = replace(rows[i], **{key: getattr(rows[i], key) + delta})
                return replace(t, b1_special=tuple(rows))
            cells.append((f"classical/{rec.family}({rec.n},{rec.q})/{key}", apply))

    for i, rec in enumerate(tables.exceptional):
        for key in ("C", "r"):
            def apply(t: Tables, delta: int, i=i, key=key) -> Tables:
                rows = list(t.exceptional)
                rows[i] = replace(rows[i], **{key: getattr(rows[i], key) + delta})
                return replace(t, exceptional=tuple(rows))
            cells.append((f"exceptional/{rec.name}/{key}", apply))
        for j, _ in enumerate(rec.m1_exceptions):
            def apply(t: Tables, delta: int, i=i, j=j) -> Tables:
                rows = list(t.exceptional)
                ex = list(rows[i].m1_exceptions)
                ex[j] = (ex[j][0], ex[j][1] + delta)
                rows[i] = replace(rows[i], m1_exceptions=tuple(ex))
                return replace(t, exceptional=tuple(rows))
            cells.append((f"exceptional/{rec.name}/m1_exception{j}", apply))
    return cells


# ---------------------------------------------------------------------------
# validation


def _sporadic_checks(t: Tables) -> list[tuple[str, bool, str]]:
    out = []
    names = [r.name for r in t.sporadic]
    out.append(("sporadic/count", len(names) == 27 and len(set(names)) == 27, "27 distinct sporadic rows"))
    for r in t.sporadic:
        idx = r.minimal_indices
        ok = (
            list(idx) == sorted(idx)
            and all(m > 1 and r.order % m == 0 for m in idx)
            and r.ell_bound >= len(idx)
            and r.bn_level <= len(idx)
        )
        out.append((f"sporadic/{r.name}", ok, "indices ascending and dividing the order; ell >= #indices"))
    monster = next((r for r in t.sporadic if r.name == "M"), None)
    ok = (
        monster is not None
        and int(MONSTER_ORDER_HEAD + MONSTER_ORDER_TAIL) == monster.order
        and exact.unfactor(list(MONSTER_FACTORIZATION)) == monster.order
    )
    out.append(("sporadic/M/order", ok, "Monster order equals the concatenated printed value and the ATLAS factorization"))
    return out


def _classical_checks(t: Tables) -> list[tuple[str, bool, str]]:
    out = []
    shape = {fam: sorted(d) for fam, d in C_TABLE.items()}
    got = {fam: [n for n, _ in es] for fam, es in t.c_table}
    out.append(("classical/C-shape", got == shape, "C defined exactly where the family is simple and of dimension <= 12"))
    values = [c for _, es in t.c_table for _, c in es]
    out.append(("classical/C-max", max(values) == 31 and min(values) > 0, "every C in 1..31 and 31 attained"))
    psl_row = dict(dict(t.c_table)["PSL"])
    out.append(("classical/threshold-C", dict(t.psl_threshold_c) == psl_row, "PSL threshold table repeats the PSL row of C"))
    out.append(("classical/threshold-keys", [n for n, _ in t.psl_thresholds] == list(range(2, 13)), "thresholds for n = 2..12"))
    for s in t.b1_special:
        order = classical_order(s.family, s.n, s.q)
        if s.family == "PSL":
            expected_m1 = (s.q**s.n - 1) // (s.q - 1)
        else:  # PSp(2m, 2)
            m = s.n // 2
            expected_m1 = 2 ** (m - 1) * (2**m - 1)
        k = exact.factor(s.q)[0][1]
        c = t.C(s.family, s.n)
        ok = s.m1 == expected_m1 and order % s.m1 == 0 and c is not None and 0 < s.ell <= c + exact.prime_omega(k)
        out.append((f"classical/{s.family}({s.n},{s.q})", ok, "m_1 matches the minimal degree formula; ell <= C + pi(k)"))
    return out


def _exceptional_checks(t: Tables) -> list[tuple[str, bool, str]]:
    out = []
    for r in t.exceptional:
        qs = r.admissible_qs(64)[:3]
        num = r.order_numerator()
        ok = num.degree <= r.r and r.C > 0
        for q in qs:
            order = r.order(q)
            ok = ok and r.order_numerator()(q) % r.gcd(q) == 0 and order % r.m1(q) == 0 and order <= q**r.r
        for q, value in r.m1_exceptions:
            ok = ok and r.admissible(q) and r.order(q) % value == 0 and value < r.m1_num(q) // r.m1_den(q)
        out.append((f"exceptional/{r.name}", ok, "order integral, m_1 | order and |G| <= q^r at the three smallest q"))
    e8 = next((r for r in t.exceptional if r.name == "E8"), None)
    out.append((
        "exceptional/E8-C",
        e8 is not None and e8.C == E8_STATED_MAXIMUM == max(t.e8.total(p) for p in e8_relevant_primes(t.e8)),
        "E8 constant C equals the maximal subgroup count bound",
    ))
    return out


def _alternating_checks(t: Tables) -> list[tuple[str, bool, str]]:
    by_n = {a.n: a for a in t.j_axioms}
    ok = (
        by_n.get(4) is not None and by_n[4].exact and by_n[4].value == Fraction(11, 6)
        and by_n.get(13) is not None and not by_n[13].exact and by_n[13].value <= Fraction(111, 100)
        and all(a.value <= Fraction(11, 6) for a in t.j_axioms)
        and all(a.value <= Fraction(4, 3) for a in t.j_axioms if a.n >= 9)
    )
    return [("alternating/j-axioms", ok, "J(A_4) = 11/6, J(A_13) < 1.11, J(A_n) <= 11/6, J(A_n) < 4/3 for n >= 9")]


def validate_tables(tables: Tables | None = None):
    """Consistency certificates for all tables, including the audit digest."""
    from .verify.certificate import predicate

    t = tables or load_tables()
    checks = _sporadic_checks(t) + _classical_checks(t) + _exceptional_checks(t) + _alternating_checks(t)
    digest = t.digest()
    checks.append(("digest", digest == AUDITED_DIGEST, f"canonical table digest {digest[:16]}... matches the audited value"))
    return [
        predicate(f"tables/{cid}", "table consistency", statement, ok, (PROV_ORDERS,))
        for cid, ok, statement in checks
    ]
