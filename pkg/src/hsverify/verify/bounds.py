"""The bound calculus: B_n(G), the reduced-J bound, and tail-dominance helpers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .. import exact
from ..enclosure import (
    DEFAULT_PRECISION,
    Enclosure,
    constant,
    ln_enclosure,
    ln_interval,
    lnln_enclosure,
    robin_bound,
    robin_monotone_threshold,
)
from ..exact import IntPolynomial
from .certificate import INCONCLUSIVE, Certificate, certify, certify_with_retry, predicate

E_GAMMA_PLUS_ONE_RATIONAL = Fraction(14, 5)  # the rational 2.8 used in place of e^gamma + 1


def e_gamma_plus_one(precision: int = DEFAULT_PRECISION) -> Enclosure:
    return constant("e_gamma", precision) + 1


@dataclass(frozen=True)
class BoundInput:
    order: int | Fraction
    m_list: tuple[int, ...]
    ell: int

    def __post_init__(self):
        if list(self.m_list) != sorted(self.m_list):
            raise ValueError("m-list must be ascending")
        if self.ell < len(self.m_list):
            raise ValueError("ell must be at least the length of the m-list")


def bn_bound(inp: BoundInput, level: int, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """(e^g+1)(sum_{i<n} lnln(|G|/m_i)/m_i + (ell-n+1) lnln(|G|/m_n)/m_n)."""
    if not 1 <= level <= len(inp.m_list):
        raise ValueError(f"level {level} needs at least {level} indices")
    e = constant("e", precision)
    p = precision + 8
    total = Enclosure.exact(0)
    for i, m in enumerate(inp.m_list[:level], 1):
        x = Fraction(inp.order) / m
        if not x > e.hi:
            raise ValueError(f"|G|/m_{i} = {x} is not above e; ln ln would be undefined or negative")
        weight = 1 if i < level else inp.ell - level + 1
        total = total + lnln_enclosure(x, p) * Fraction(weight, m)
    return e_gamma_plus_one(p) * total


def reduced_j_bound(
    order: int,
    maximal: Sequence[tuple[int, Fraction | Enclosure]],
    residual_orders: Iterable[int],
    precision: int = DEFAULT_PRECISION,
) -> Enclosure:
    """1 + sum J(M_i)/[G:M_i] + sum_{m in O} B(m) m/|G|.

    ``maximal`` lists (|M_i|, bound for J(M_i)); ``residual_orders`` is the set
    O of orders of the remaining maximal subgroups.
    """
    total = Enclosure.exact(1)
    for m, j in maximal:
        if not 0 < m < order:
            raise ValueError(f"maximal order {m} not in (0, {order})")
        total = total + Enclosure._lift(j) * Fraction(m, order)
    for m in sorted(set(residual_orders)):
        if not 0 < m < order:
            raise ValueError(f"residual order {m} not in (0, {order})")
        total = total + robin_bound(m, precision) * Fraction(m, order)
    return total


def abs_enclosure(e: Enclosure) -> Enclosure:
    if e.lo >= 0:
        return e
    if e.hi <= 0:
        return -e
    return Enclosure(0, max(-e.lo, e.hi))


def verify_b_monotone_threshold(precision: int | None = None) -> Certificate:
    """exp(exp(sqrt(0.6483/e^gamma))) lies strictly inside (6.22, 6.23)."""
    centre, radius = Fraction("6.225"), Fraction("0.005")
    stmt = "exp(exp(sqrt(0.6483/e^gamma))) in (6.22, 6.23), i.e. |T - 6.225| < 0.005"
    anchor = "monotonicity threshold of the divisor-sum bound"
    if precision is not None:
        t = robin_monotone_threshold(precision)
        cert = certify("bound/B-threshold", anchor, stmt, abs_enclosure(t - centre), radius, (), {"threshold": t, "precision_bits": precision})
        if cert.verdict == INCONCLUSIVE:
            cert.details["required_precision_hint"] = max(2 * precision, 16)
        return cert
    return certify_with_retry(
        lambda p: abs_enclosure(robin_monotone_threshold(p) - centre), radius, "bound/B-threshold", anchor, stmt
    )


def verify_b_increasing_check(precision: int = DEFAULT_PRECISION) -> Certificate:
    """B(6.23) < B(7), the comparison used to extend monotonicity down to order 7."""
    lhs = robin_bound(Fraction("6.23"), precision) - robin_bound(7, precision)
    return certify("bound/B(6.23)<B(7)", "monotonicity threshold of the divisor-sum bound", "B(6.23) - B(7) < 0", lhs, 0)


# ---------------------------------------------------------------------------
# sigma(n) <= n B(n)


def sigma_table(limit: int) -> np.ndarray:
    """sigma(n) for 0 <= n <= limit (entry 0 unused), by a divisor sieve."""
    s = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        s[d::d] += d
    return s


def robin_sweep(limit: int, block: int = 1000, precision: int = 64) -> list[int]:
    """Every n <= limit with sigma(n) > n B(n).hi (expected: none).

    B is increasing from 7 on, so on a block [a, b] every n satisfies
    n B(n) >= n B(a); a dyadic lower bound L <= B(a) turns the block into one
    vectorised integer comparison sigma(n) * 2^20 <= n * floor(L 2^20).  Values
    that fail the cheap test, and n < 7, get an individual exact check.
    """
    sig = sigma_table(limit)
    bad: list[int] = []
    scale = 1 << 20

    def exact_check(n: int) -> None:
        if Fraction(int(sig[n]), n) > robin_bound(n, precision).hi:
            bad.append(n)

    for n in range(1, min(7, limit + 1)):
        exact_check(n)
    a = 7
    while a <= limit:
        b = min(a + block - 1, limit)
        lo = robin_bound(a, precision).lo
        lnum = (lo.numerator * scale) // lo.denominator
        ns = np.arange(a, b + 1, dtype=np.int64)
        ok = sig[a : b + 1] * scale <= ns * lnum
        for off in np.flatnonzero(~ok):
            exact_check(a + int(off))
        a = b + 1
    return bad


# ---------------------------------------------------------------------------
# tail dominance


def log_dominated(a: Enclosure | Fraction | int, c: Enclosure | Fraction | int, d: int, t0: int,
                  precision: int = DEFAULT_PRECISION) -> bool:
    """Certify a ln(c ln q) <= q^(1/d) for all real q >= t0^d (a, c > 0).

    Checked at Q = t0^d, then the derivative condition q^(1/d) ln q >= a d,
    which is increasing in q, so it holds from Q onward once it holds at Q.
    """
    a, c = Enclosure._lift(a), Enclosure._lift(c)
    big_q = t0**d
    lnq = ln_enclosure(big_q, precision)
    inner = c * lnq
    if inner.hi <= 1:
        at_q = True
    elif inner.lo <= 0:
        return False
    else:
        at_q = (a * ln_interval(inner, precision)).hi <= t0
    slope = (lnq * t0).lo >= a.hi * d
    return at_q and slope


def log2log2_dominated(d: int, t0: int, precision: int = DEFAULT_PRECISION) -> bool:
    """log2 log2 q = (1/ln 2) ln(ln q / ln 2) <= q^(1/d) for q >= t0^d."""
    inv_ln2 = ln_enclosure(2, precision).reciprocal()
    return log_dominated(inv_ln2, inv_ln2, d, t0, precision)


def polynomial_positive(p: IntPolynomial, t0: int) -> bool:
    return p.positive_from(t0)


def tail_certificate(id: str, anchor: str, statement: str, checks: dict[str, bool], details: dict | None = None) -> Certificate:
    """All named sub-checks of a tail argument must hold."""
    info = dict(details or {})
    info["checks"] = {k: bool(v) for k, v in checks.items()}
    return predicate(id, anchor, statement, all(checks.values()), (), info)


def prime_powers(lo: int, hi: int) -> list[int]:
    return exact.prime_powers(lo, hi)


def sweep_max(
    id: str,
    anchor: str,
    statement: str,
    items: Iterable[tuple[object, Enclosure]],
    rhs,
    provenance: Iterable[str] = (),
    details: dict | None = None,
) -> Certificate:
    """Certificate for X_k < rhs over a finite range, via an enclosure of max_k X_k.

    [max lo, max hi] contains the maximum; the key attaining max hi is recorded,
    along with every key whose own enclosure is not below rhs.
    """
    lo = hi = None
    worst = None
    offenders = []
    count = 0
    rhs = Fraction(rhs)
    for key, enc in items:
        count += 1
        if lo is None or enc.lo > lo:
            lo = enc.lo
        if hi is None or enc.hi > hi:
            hi, worst = enc.hi, key
        if not enc.hi < rhs:
            offenders.append(key)
    if count == 0:
        raise ValueError(f"{id}: empty sweep")
    info = dict(details or {})
    info.update({"cases": count, "worst_case": worst, "offenders": offenders[:50], "offender_count": len(offenders)})
    return certify(id, anchor, statement, Enclosure(lo, hi), rhs, provenance, info)
