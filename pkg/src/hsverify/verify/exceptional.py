"""Exceptional groups of Lie type, and the count of maximal subgroup types of E8(q)."""

from __future__ import annotations

import math

from ..enclosure import DEFAULT_PRECISION, Enclosure, ln_enclosure, ln_interval, log2log2_enclosure
from ..exact import IntPolynomial
from ..families import (
    E8_STATED_MAXIMUM,
    PROV_E8,
    PROV_EXCEPTIONAL,
    PROV_ORDERS,
    E8ClassCounts,
    ExceptionalRecord,
    Tables,
    e8_relevant_primes,
    load_tables,
)
from .bounds import E_GAMMA_PLUS_ONE_RATIONAL, log2log2_dominated, log_dominated, sweep_max, tail_certificate
from .certificate import Certificate, certify, predicate

ANCHOR = "exceptional groups: 2.8 (C + log2 log2 q)/m_1 * ln(r ln q) < 1"
ANCHOR_E8 = "E8(q) has at most 166 isomorphism types of non-subfield maximal subgroups"

X = IntPolynomial.x()
TAIL_T_LIMIT = 10**4


def exceptional_bound(rec: ExceptionalRecord, q: int, precision: int = DEFAULT_PRECISION) -> Enclosure:
    ll2 = log2log2_enclosure(q, precision)
    inner = ln_interval(ln_enclosure(q, precision) * rec.r, precision)
    return E_GAMMA_PLUS_ONE_RATIONAL * (rec.C + ll2) / rec.m1(q) * inner


def exceptional_tail(rec: ExceptionalRecord, t_start: int, precision: int) -> tuple[int | None, dict]:
    """With t = sqrt q: ln(r ln q) <= t and log2 log2 q <= t from t0^2 on, so it remains to
    show 2.8 (C + t) t < m_1(t^2), i.e. 5 m1_num(t^2) - 14 (C + t) t m1_den(t^2) > 0."""
    poly = 5 * rec.m1_num.compose_power(2) - 14 * (rec.C + X) * X * rec.m1_den.compose_power(2)
    t = max(t_start, 2)
    while t <= TAIL_T_LIMIT:
        checks = {
            "ln(r ln q) <= sqrt q": log_dominated(1, rec.r, 2, t, precision),
            "log2log2 q <= sqrt q": log2log2_dominated(2, t, precision),
            "polynomial": poly.positive_from(t),
        }
        if all(checks.values()):
            return t, {"t0": t, "Q": t * t, "polynomial_degree": poly.degree, "checks": checks}
        t = t + 1 if t < 64 else t * 2
    return None, {"polynomial_degree": poly.degree}


def verify_exceptional_row(rec: ExceptionalRecord, qmax: int, precision: int) -> list[Certificate]:
    cid = f"exceptional/{rec.name}"
    t0, tail_info = exceptional_tail(rec, math.isqrt(qmax), precision)
    top = max(qmax, t0 * t0 if t0 else qmax)
    qs = rec.admissible_qs(top)
    out = []
    if not qs:
        return [predicate(cid, ANCHOR, f"{rec.name}: no admissible q up to {top}", False)]
    smallest = qs[0]
    order_ok, m1_ok = [], []
    for q in qs[:3]:
        order = rec.order(q)
        m1_ok.append(order % rec.m1(q) == 0)
    for q in qs:
        order_ok.append(rec.order(q) <= q**rec.r)
    out.append(certify(
        f"{cid}/smallest-q", ANCHOR, f"bound < 1 for {rec.name}({smallest}), the smallest admissible q",
        exceptional_bound(rec, smallest, precision), 1, (PROV_EXCEPTIONAL, PROV_ORDERS),
        {"q": smallest, "C": rec.C, "r": rec.r, "m1": rec.m1(smallest), "constant": "2.8"},
    ))
    rows = [(q, exceptional_bound(rec, q, precision)) for q in qs]
    sweep = sweep_max(
        f"{cid}/sweep", ANCHOR, f"bound < 1 for {rec.name}(q), admissible q <= {top}", rows, 1,
        (PROV_EXCEPTIONAL, PROV_ORDERS), {"cases_order_at_most_q^r": all(order_ok), "m1_divides_order": all(m1_ok)},
    )
    if not (all(order_ok) and all(m1_ok)):
        sweep = predicate(sweep.id, sweep.anchor, sweep.statement + " (with |G| <= q^r and m_1 | |G|)", False,
                          sweep.provenance, sweep.details)
    out.append(sweep)
    out.append(tail_certificate(
        f"{cid}/tail", ANCHOR, f"bound < 1 for {rec.name}(q) and every q >= {top}",
        {"tail found": t0 is not None, "tail starts within sweep": t0 is not None and t0 * t0 <= top}, tail_info,
    ))
    return out


def verify_exceptional(qmax: int = 10**4, tables: Tables | None = None, precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    tables = tables or load_tables()
    out = []
    for rec in tables.exceptional:
        out += verify_exceptional_row(rec, qmax, precision)
    out.append(verify_e8_count(tables.e8))
    return out


def e8_totals(counts: E8ClassCounts) -> dict[int, int]:
    return {p: counts.total(p) for p in e8_relevant_primes(counts)}


def verify_e8_count(counts: E8ClassCounts | None = None) -> Certificate:
    """The per-characteristic total is at most 166, attained at p = 2.

    Each subclass bound is constant outside the finitely many primes it names,
    so the named primes plus one prime beyond all of them cover every case.
    """
    counts = counts or load_tables().e8
    totals = e8_totals(counts)
    best = max(totals.values())
    at = min(p for p, v in totals.items() if v == best)
    stmt = f"max over p of the E8 subgroup-type total = {best} at p={at}, at most {E8_STATED_MAXIMUM}"
    cert = certify(
        "e8/count", ANCHOR_E8, stmt, best, E8_STATED_MAXIMUM + 1, (PROV_E8,),
        {"max_total": best, "argmax_p": at, "totals": {str(p): v for p, v in sorted(totals.items())},
         "attains_stated_maximum": best == E8_STATED_MAXIMUM},
    )
    if best != E8_STATED_MAXIMUM or at != 2:
        cert = predicate(cert.id, cert.anchor, stmt + f" (expected exactly {E8_STATED_MAXIMUM} at p=2)", False,
                         cert.provenance, cert.details)
    return cert


def e8_summary_line(cert: Certificate) -> str:
    return f"max total = {cert.details['max_total']} at p={cert.details['argmax_p']}; {cert.verdict}"

