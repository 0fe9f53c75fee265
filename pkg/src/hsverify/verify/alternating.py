"""Alternating groups: the index bound, the (s+t)/|A_n| bound and the induction J(A_n) < 4/3."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from ..enclosure import (
    DEFAULT_PRECISION,
    Enclosure,
    constant,
    ln_enclosure,
    ln_interval,
    robin_bound_from_lnln,
    stirling_envelope,
)
from ..exact import IntPolynomial
from ..families import PROV_GAP, PROV_PS, PROV_ROBIN, AlternatingCatalog, Tables, default_catalog, load_tables
from .bounds import reduced_j_bound, sweep_max, tail_certificate
from .certificate import Certificate, certify, predicate, skipped

ANCHOR_INDEX = "maximal subgroups of A_n, n >= 19, have index C(n,k) with k <= 3 or index > n^3/3"
ANCHOR_ST = "(s + t)/|A_n| <= 10/n^2 for n >= 20"
ANCHOR_B = "B(n!/2) <= (3/2) e^g ln n + 0.7"
ANCHOR_INDUCTION = "J(A_n) < 4/3 by induction on n"
ANCHOR_SMALL = "J(A_n) < 4/3 for 14 <= n <= 19 from the maximal subgroup catalog"

X = IntPolynomial.x()
B_CASE_ONSETS = {2: 26, 3: 18, 4: 16, 5: 16}
B_CASE_SWEEP_TOP = 60


def _e(precision: int) -> Enclosure:
    return constant("e", precision)


# ---------------------------------------------------------------------------
# the index bound


def primitive_branch(precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    """n! <= 4^n 2n^3/3 has no solution with n >= 16; it holds at n = 15."""
    fails = [n for n in range(16, 26) if not 3 * factorial(n) > 2 * 4**n * n**3]
    holds_15 = 3 * factorial(15) <= 2 * 4**15 * 15**3
    out = [predicate(
        "alternating/index/primitive-16..25", ANCHOR_INDEX, "3 n! > 2 * 4^n n^3 for 16 <= n <= 25, and not at n = 15",
        not fails and holds_15, (PROV_PS,), {"violations": fails, "onset": 16},
    )]
    # n >= 26: (n/(4e))^11 > 2n^3/3, and (n/(4e))^11 / n^3 grows like n^8
    e = _e(precision)
    at26 = (Enclosure.exact(26) / (4 * e)) ** 11 - Fraction(2 * 26**3, 3)
    out.append(certify(
        "alternating/index/primitive-26+", ANCHOR_INDEX, "2n^3/3 - (n/(4e))^11 < 0 at n = 26; the ratio grows like n^8 beyond",
        -at26, 0, (PROV_PS,), {"n_at_least_4e": bool((4 * e).hi <= 11)},
    ))
    return out


def intransitive_branch() -> list[Certificate]:
    """C(n,4) > n^3/3 exactly for n >= 14."""
    poly = X * (X - 1) * (X - 2) * (X - 3) - 8 * X**3
    from_14 = poly.positive_from(14)
    fails_13 = not 3 * comb(13, 4) > 13**3
    return [predicate(
        "alternating/index/binomial", ANCHOR_INDEX, "C(n,4) > n^3/3 for all n >= 14 and not at n = 13",
        from_14 and fails_13, (), {"polynomial": str(poly), "value_13": [comb(13, 4), Fraction(13**3, 3)]},
    )]


def imprimitive_branch(precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    out = []
    e = _e(precision)
    pi = constant("pi", precision)

    # m! < e m (m/e)^m: inspection for m <= 6, then 2 pi <= m and 1/(12m) < 1
    small = []
    for m in range(2, 7):
        rhs = e * m * (Enclosure.exact(m) / e) ** m
        small.append((m, factorial(m) - rhs))
    out.append(sweep_max(
        "alternating/index/factorial-2..6", ANCHOR_INDEX, "m! - e m (m/e)^m < 0 for 2 <= m <= 6", small, 0,
    ))
    out.append(certify("alternating/index/2pi<7", ANCHOR_INDEX, "2 pi < 7", 2 * pi, 7))
    # the Stirling upper bound feeding the m >= 7 step
    _, upper = stirling_envelope(7, precision)
    out.append(certify(
        "alternating/index/stirling-7", ANCHOR_INDEX, "sqrt(14 pi)(7/e)^7 e^(1/84) < e 7 (7/e)^7",
        upper - e * 7 * (Enclosure.exact(7) / e) ** 7, 0,
    ))

    # (n-1)/ln n < (n/2+4)/ln(n/2) holds at 18 and fails for every n >= 19
    def gap(n: int) -> Enclosure:
        """(n-1) ln(n/2) - (n/2+4) ln n; the comparison fails exactly when this is >= 0."""
        return (n - 1) * ln_enclosure(Fraction(n, 2), precision) - (Fraction(n, 2) + 4) * ln_enclosure(n, precision)

    g18, g19 = gap(18), gap(19)
    ln2 = ln_enclosure(2, precision)
    # g(n) = (n/2 - 5) ln n - (n-1) ln 2, g'(n) = ln(n)/2 + 1/2 - 5/n - ln 2, increasing
    slope19 = ln_enclosure(19, precision) / 2 + Fraction(1, 2) - Fraction(5, 19) - ln2
    out.append(tail_certificate(
        "alternating/index/ratio-cutoff", ANCHOR_INDEX,
        "(n-1)/ln n < (n/2+4)/ln(n/2) holds at n = 18 and fails for all n >= 19",
        {"holds_at_18": g18.hi < 0, "fails_at_19": g19.lo > 0, "derivative_positive_from_19": slope19.lo > 0},
        {"gap_18": g18, "gap_19": g19, "cutoff": 18},
    ))
    # (b+4)/ln b increasing for b >= 6: ln b > 1 + 4/b, and ln b - 1 - 4/b is increasing
    lb6 = ln_enclosure(6, precision) - 1 - Fraction(4, 6)
    out.append(certify(
        "alternating/index/(b+4)/ln(b)-increasing", ANCHOR_INDEX, "1 + 4/6 - ln 6 < 0", -lb6, 0,
    ))

    # b^(n-1) < e n^(b+3) fails for onset <= n, and holds at onset - 1
    for b, onset in sorted(B_CASE_ONSETS.items()):
        rows = []
        for n in range(onset, B_CASE_SWEEP_TOP + 1):
            rows.append((n, e * n ** (b + 3) - b ** (n - 1)))
        cert = sweep_max(
            f"alternating/index/b={b}", ANCHOR_INDEX,
            f"e n^{b + 3} - {b}^(n-1) < 0 for {onset} <= n <= {B_CASE_SWEEP_TOP}", rows, 0,
        )
        before = e * (onset - 1) ** (b + 3) - b ** (onset - 2)
        # ratio b^(n-1)/n^(b+3) increases once b n^(b+3) >= (n+1)^(b+3)
        ratio_poly = b * X ** (b + 3) - (X + 1) ** (b + 3)
        cert.details.update({
            "onset": onset,
            "holds_before_onset": before.lo > 0,
            "ratio_increasing_from_onset": ratio_poly.positive_from(onset),
        })
        if not (before.lo > 0 and ratio_poly.positive_from(onset)):
            cert = predicate(cert.id, cert.anchor, cert.statement, False, (), cert.details)
        out.append(cert)

    # b = 2 survivors n in {20, 22, 24}: index n!/((n/2)!^2 2) already exceeds n^3/3
    survivors = {}
    for n in (20, 22, 24):
        a = n // 2
        index = Fraction(factorial(n), factorial(a) ** 2 * 2)
        survivors[n] = index > Fraction(n**3, 3)
    out.append(predicate(
        "alternating/index/b=2-survivors", ANCHOR_INDEX, "n!/(2 (n/2)!^2) > n^3/3 for n in {20, 22, 24}",
        all(survivors.values()), (), {"checks": survivors},
    ))

    # n/2 + 2 sqrt(n) < n  <=>  4 sqrt(n) < n  <=>  16 n < n^2  <=>  n > 16
    out.append(predicate(
        "alternating/classes/n/2+2sqrt(n)<n", ANCHOR_ST, "n/2 + 2 sqrt(n) < n for n >= 20, equivalent to n > 16",
        16 * 20 < 20 * 20 and not 16 * 16 < 16 * 16,
    ))
    return out


# ---------------------------------------------------------------------------
# (s + t)/|A_n|


def wn_ratio(n: int) -> Fraction:
    """w_n/|A_n| = n/(n^3/3) + 1/C(n,2) + 1/C(n,3)."""
    return Fraction(3, n * n) + Fraction(1, comb(n, 2)) + Fraction(1, comb(n, 3))


def st_catalog_branch(catalog: AlternatingCatalog, lo: int = 20, hi: int = 43) -> list[Certificate]:
    out = []
    for n in range(lo, hi + 1):
        cid = f"alternating/st/catalog/{n}"
        stmt = f"(s + w_{n})/|A_{n}| < 10/{n}^2"
        if not catalog.has_primitive_data(n):
            out.append(skipped(cid, ANCHOR_ST, stmt, f"no primitive maximal subgroup data for degree {n}", (PROV_GAP,)))
            continue
        order = factorial(n) // 2
        s = sum(sorted({e.order for e in catalog.degree(n, "primitive")}))
        lhs = Fraction(s, order) + wn_ratio(n)
        out.append(certify(cid, ANCHOR_ST, stmt, lhs, Fraction(10, n * n), (catalog.provenance or PROV_GAP,), {"s": s}))
    return out


def st_tail_branch(n_max: int, precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    out = []
    # 44 <= n <= 52: s <= 16^n / n
    rows = []
    for n in range(44, 53):
        order = factorial(n) // 2
        val = Fraction(16**n, n * order) + wn_ratio(n) - Fraction(10, n * n)
        rows.append((n, Enclosure.exact(val)))
    out.append(sweep_max(
        "alternating/st/44..52", ANCHOR_ST, "16^n/(n |A_n|) + w_n/|A_n| - 10/n^2 < 0 for 44 <= n <= 52", rows, 0, (PROV_PS,),
    ))
    # n >= 53: (16e)^44 < n^42, monotone in n, so n = 53 suffices
    e = _e(precision)
    out.append(certify(
        "alternating/st/(16e)^44<n^42", ANCHOR_ST, "(16e)^44 < 53^42, hence (16e/n)^44 < 1/n^2 for all n >= 53",
        (16 * e) ** 44, 53**42, (), {"16e_at_most_44": (16 * e).hi <= 44},
    ))
    # 2/n + 3 + 2n/(n-1) + 6n/((n-1)(n-2)) < 10, termwise non-increasing in n
    top = max(n_max, 53)

    def chain(n: int) -> Fraction:
        return Fraction(2, n) + 3 + Fraction(2 * n, n - 1) + Fraction(6 * n, (n - 1) * (n - 2))

    rows = ((n, Enclosure.exact(chain(n))) for n in range(53, top + 1))
    cert = sweep_max(
        f"alternating/st/53..{top}", ANCHOR_ST,
        f"n^2 (2/n^3 + 3/n^2 + 2/(n(n-1)) + 6/(n(n-1)(n-2))) < 10 for 53 <= n <= {top}", rows, 10, (PROV_PS,),
    )
    out.append(cert)
    # tail beyond top: 2/n, 2n/(n-1) = 2 + 2/(n-1), 6n/((n-1)(n-2)) all decrease, so the value at top bounds them
    decreasing = chain(top + 1) <= chain(top) and (6 * (top + 1)) * (top - 1) <= 6 * top * top
    out.append(tail_certificate(
        f"alternating/st/tail>{top}", ANCHOR_ST, f"the chain bound is non-increasing for n >= {top}",
        {"termwise_non_increasing": decreasing, "value_at_top_below_10": chain(top) < 10},
    ))
    return out


# ---------------------------------------------------------------------------
# B(n!/2) and the induction step


def _ln_factorials(n_max: int, precision: int):
    """Yield (n, ln n, ln(n!/2)) for n >= 2 with a running sum of enclosures."""
    acc = -ln_enclosure(2, precision)
    for n in range(2, n_max + 1):
        ln_n = ln_enclosure(n, precision)
        acc = acc + ln_n
        yield n, ln_n, acc


def b_factorial_branch(n_max: int, precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    eg = constant("e_gamma", precision)
    rows = []
    for n, ln_n, ln_half_fact in _ln_factorials(n_max, precision):
        if n < 14:
            continue
        b = robin_bound_from_lnln(ln_interval(ln_half_fact, precision), precision)
        rows.append((n, b - (Fraction(3, 2) * eg * ln_n + Fraction(7, 10))))
    out = [sweep_max(
        f"alternating/B(n!/2)/14..{n_max}", ANCHOR_B, f"B(n!/2) - (3/2) e^g ln n - 0.7 < 0 for 14 <= n <= {n_max}",
        rows, 0, (PROV_ROBIN,),
    )]
    # beyond: n!/2 <= n^n, lnln(n^n) = ln n + lnln n <= (3/2) ln n since ln y <= y/2,
    # and 0.6483/lnln(n!/2) <= 0.7 once lnln(n!/2) >= 0.6483/0.7, true from n = 14 on
    ln14 = ln_enclosure(factorial(14) // 2, precision)
    lnln14 = ln_interval(ln14, precision)
    ln2 = ln_enclosure(2, precision)
    out.append(tail_certificate(
        "alternating/B(n!/2)/all-n", ANCHOR_B, "B(n!/2) <= (3/2) e^g ln n + 0.7 for every n >= 14",
        {"ln(y) <= y/2 (max of ln y - y/2 is ln 2 - 1 < 0)": ln2.hi < 1,
         "lnln(14!/2) >= 0.6483/0.7": lnln14.lo >= Fraction(6483, 7000)},
    ))
    return out


def induction_step(n: int, precision: int = DEFAULT_PRECISION, ln_n: Enclosure | None = None) -> Enclosure:
    """1 + 4/(3n) + ((3/2) e^g ln n + 0.7) * 10/n^2."""
    eg = constant("e_gamma", precision)
    if ln_n is None:
        ln_n = ln_enclosure(n, precision)
    return 1 + Fraction(4, 3 * n) + (Fraction(3, 2) * eg * ln_n + Fraction(7, 10)) * Fraction(10, n * n)


def induction_branch(n_max: int, precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    rows = ((n, induction_step(n, precision)) for n in range(20, n_max + 1))
    out = [sweep_max(
        f"alternating/induction/20..{n_max}", ANCHOR_INDUCTION,
        f"1 + 4/(3n) + ((3/2) e^g ln n + 0.7) 10/n^2 < 4/3 for 20 <= n <= {n_max}", rows, Fraction(4, 3), (PROV_ROBIN,),
    )]
    # with f(n) = n^2 - 4n - 45 e^g ln n - 21 the step is f(n) > 0; f'' = 2 + 45 e^g/n^2 > 0,
    # so f' >= 0 at n_max and f(n_max) > 0 carry the inequality to every n >= n_max
    eg = constant("e_gamma", precision)
    f_top = Enclosure.exact(n_max * n_max - 4 * n_max - 21) - 45 * eg * ln_enclosure(n_max, precision)
    df_top = Enclosure.exact(2 * n_max - 4) - 45 * eg / n_max
    out.append(tail_certificate(
        f"alternating/induction/tail>{n_max}", ANCHOR_INDUCTION, f"the induction step holds for all n >= {n_max}",
        {"f(n_max) > 0": f_top.lo > 0, "f'(n_max) > 0": df_top.lo > 0, "f'' > 0": eg.lo > 0},
        {"f": f_top, "df": df_top},
    ))
    return out


def catalog_chain(catalog: AlternatingCatalog, tables: Tables, precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    """J(A_n) < 4/3 for 14 <= n <= 19, starting from the stored bound for A_13."""
    out = []
    j_prev = tables_j_bound(tables, 13)
    broken = None
    for n in range(14, 20):
        cid = f"alternating/chain/{n}"
        stmt = f"1 + J(A_{n - 1})/{n} + sum B(|M|)|M|/|A_{n}| < 4/3"
        if broken is not None or j_prev is None:
            reason = broken or "no stored bound for J(A_13)"
            out.append(skipped(cid, ANCHOR_SMALL, stmt, reason, (PROV_GAP,)))
            continue
        if not catalog.has_primitive_data(n):
            broken = f"no primitive maximal subgroup data for degree {n}"
            out.append(skipped(cid, ANCHOR_SMALL, stmt, broken, (PROV_GAP,)))
            continue
        order = factorial(n) // 2
        bound = reduced_j_bound(order, [(order // n, j_prev)], catalog.maximal_orders(n), precision)
        cert = certify(cid, ANCHOR_SMALL, stmt, bound, Fraction(4, 3), (catalog.provenance or PROV_GAP, PROV_ROBIN),
                       {"J_previous_upper": j_prev})
        out.append(cert)
        j_prev = bound.hi
    return out


def tables_j_bound(tables: Tables, n: int) -> Fraction | None:
    for ax in tables.j_axioms:
        if ax.n == n:
            return ax.value
    return None


def verify_alternating(
    n_max: int = 10**4,
    catalog: AlternatingCatalog | None = None,
    tables: Tables | None = None,
    precision: int = DEFAULT_PRECISION,
) -> list[Certificate]:
    if n_max < 53:
        raise ValueError("n_max must be at least 53")
    tables = tables or load_tables()
    catalog = catalog if catalog is not None else default_catalog()
    out: list[Certificate] = []
    j13 = tables_j_bound(tables, 13)
    out.append(predicate(
        "alternating/axiom/J(A13)", ANCHOR_SMALL, "stored bound J(A_13) < 1.11", j13 is not None and j13 <= Fraction(111, 100),
        (PROV_GAP,), {"value": j13},
    ))
    out += primitive_branch(precision)
    out += intransitive_branch()
    out += imprimitive_branch(precision)
    out += catalog_chain(catalog, tables, precision)
    out += st_catalog_branch(catalog)
    out += st_tail_branch(n_max, precision)
    out += b_factorial_branch(n_max, precision)
    out += induction_branch(n_max, precision)
    return out
