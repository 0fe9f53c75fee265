import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsverify.enclosure import Enclosure
from hsverify.families import load_tables, mutable_cells, parse_catalog
from hsverify.verify import alternating, classical, exceptional, general, sporadic
from hsverify.verify.bounds import (
    BoundInput,
    bn_bound,
    log_dominated,
    reduced_j_bound,
    robin_sweep,
    sweep_max,
    verify_b_monotone_threshold,
)
from hsverify.verify.certificate import (
    FAILED,
    INCONCLUSIVE,
    SKIPPED,
    VERIFIED,
    Certificate,
    certify,
    certify_with_retry,
    predicate,
)
from hsverify.verify.report import RunOptions, VerificationReport, overall_verdict, report, run, summarize

mpmath.mp.dps = 60

bounds = st.fractions(-10, 10)


@given(bounds, st.fractions(0, 5), bounds)
def test_soundness_gate(lo, width, rhs):
    c = certify("t", "a", "s", Enclosure(lo, lo + width), rhs)
    if c.verdict == VERIFIED:
        assert lo + width < rhs
    if lo + width >= rhs:
        assert c.verdict != VERIFIED
    if lo <= rhs <= lo + width:
        assert c.verdict in (INCONCLUSIVE, FAILED)


def test_equality_is_not_verified():
    assert certify("t", "a", "s", Fraction(1), 1).verdict == FAILED
    assert certify("t", "a", "s", Enclosure(0, 1), 1).verdict == INCONCLUSIVE


def test_verified_requires_strict_inequality():
    with pytest.raises(ValueError):
        Certificate("t", "a", "s", Enclosure(0, 2), Fraction(1), VERIFIED)


@given(bounds, st.fractions(0, 5), bounds, st.dictionaries(st.text(min_size=1, max_size=5), st.integers()))
def test_certificate_json_round_trip(lo, width, rhs, details):
    c = certify("x/y", "anchor", "stmt", Enclosure(lo, lo + width), rhs, ("p",), details)
    assert Certificate.from_json(c.to_json()) == c


def test_retry_raises_precision():
    seen = []

    def evaluate(bits):
        seen.append(bits)
        return Enclosure(0, 2) if bits < 512 else Enclosure(0, Fraction(1, 2))

    c = certify_with_retry(evaluate, 1, "t", "a", "s")
    assert c.verdict == VERIFIED and seen[-1] == 512 and c.details["retried_at_bits"] == 512


def bn_oracle(order, ms, ell, level):
    eg1 = mpmath.exp(mpmath.euler) + 1
    total = mpmath.mpf(0)
    for i, m in enumerate(ms[:level], 1):
        w = 1 if i < level else ell - level + 1
        total += w * mpmath.log(mpmath.log(mpmath.mpf(order) / m)) / m
    return eg1 * total


@given(st.integers(10**4, 10**30), st.lists(st.integers(2, 500), min_size=1, max_size=4, unique=True), st.integers(0, 50))
@settings(max_examples=80)
def test_bn_bound_oracle(order, ms, extra):
    ms = sorted(ms)
    inp = BoundInput(order, tuple(ms), len(ms) + extra)
    for level in range(1, len(ms) + 1):
        e = bn_bound(inp, level)
        v = bn_oracle(order, ms, len(ms) + extra, level)
        assert mpmath.mpf(e.lo.numerator) / e.lo.denominator <= v <= mpmath.mpf(e.hi.numerator) / e.hi.denominator


def test_bn_bound_rejects_small_quotient():
    with pytest.raises(ValueError):
        bn_bound(BoundInput(10, (5,), 1), 1)
    with pytest.raises(ValueError):
        BoundInput(100, (5, 3), 2)


def test_reduced_j_bound_exact_parts():
    b = reduced_j_bound(60, [(12, Fraction(11, 6))], [], 64)
    assert b == Enclosure.exact(1 + Fraction(11, 6) * Fraction(12, 60))


@given(st.integers(1, 6), st.integers(2, 40), st.fractions(Fraction(1, 2), 4))
@settings(max_examples=60, deadline=None)
def test_log_dominated_is_sound(d, t0, a):
    if log_dominated(a, 1, d, t0):
        for k in range(0, 60, 3):
            q = mpmath.mpf(t0) ** d * (1 + k) ** 2
            inner = mpmath.log(q)
            if inner > 1:
                assert float(a) * mpmath.log(inner) <= q ** (mpmath.mpf(1) / d) + mpmath.mpf("1e-30")


def test_sweep_max_records_worst():
    c = sweep_max("s", "a", "stmt", [(1, Enclosure(0, Fraction(1, 2))), (2, Enclosure(Fraction(1, 3), Fraction(3, 4)))], 1)
    assert c.verdict == VERIFIED and c.details["worst_case"] == 2 and c.lhs.hi == Fraction(3, 4)
    c = sweep_max("s", "a", "stmt", [(1, Enclosure(0, 2))], 1)
    assert c.details["offenders"] == [1]


def test_b_threshold():
    assert verify_b_monotone_threshold().verdict == VERIFIED
    low = verify_b_monotone_threshold(precision=2)
    assert low.verdict == INCONCLUSIVE and low.details["required_precision_hint"] == 16


def test_robin_sweep_small_matches_direct():
    assert robin_sweep(20000) == []
    limit = 5000
    from hsverify.enclosure import robin_bound
    from hsverify.exact import sigma
    direct = [n for n in range(1, limit + 1) if not sigma(n) <= n * robin_bound(n).hi]
    assert direct == robin_sweep(limit)


def test_general_small_groups():
    certs = general.small_group_inspection()
    assert len(certs) == 20 and all(c.verdict == VERIFIED for c in certs)


def test_stirling_short():
    assert general.stirling_sandwich(200).verdict == VERIFIED


def test_sporadic_suite():
    certs = {c.id: c for c in sporadic.verify_sporadic()}
    assert len(certs) == 27
    assert certs["sporadic/M11"].lhs.hi == Fraction(431, 330)
    assert certs["sporadic/M12"].verdict == FAILED
    assert all(c.verdict == VERIFIED for k, c in certs.items() if k != "sporadic/M12")


def test_mutated_order_fails_sporadic():
    t = load_tables()
    label, apply = next(c for c in mutable_cells(t) if c[0] == "sporadic/J1/m1")
    mutated = apply(t, -265)  # collapses m_1 so that B_1 exceeds 1
    certs = {c.id: c for c in sporadic.verify_sporadic(mutated)}
    assert certs["sporadic/J1"].verdict != VERIFIED


def test_alternating_without_catalog_skips():
    certs = alternating.verify_alternating(200)
    skipped = [c for c in certs if c.verdict == SKIPPED]
    assert {c.id for c in skipped} >= {f"alternating/st/catalog/{n}" for n in range(20, 44)}
    assert all(c.verdict == VERIFIED for c in certs if c.verdict != SKIPPED)


def synthetic_catalog():
    """Made-up primitive rows of order n(n-1): they exercise the data branches, nothing more."""
    lines = [f"{n} primitive 1 {n * (n - 1)}" for n in range(14, 44)]
    return parse_catalog("\n".join(lines), provenance="synthetic test fixture")


def test_alternating_data_branches_run_with_catalog():
    certs = alternating.verify_alternating(100, catalog=synthetic_catalog())
    ids = {c.id: c for c in certs}
    assert not [c for c in certs if c.verdict == SKIPPED]
    for n in range(14, 20):
        assert ids[f"alternating/chain/{n}"].verdict == VERIFIED
    for n in range(20, 44):
        assert ids[f"alternating/st/catalog/{n}"].verdict == VERIFIED


def test_alternating_thresholds():
    ids = {c.id: c for c in alternating.imprimitive_branch() + alternating.intransitive_branch()}
    assert ids["alternating/index/b=2"].details["onset"] == 26
    assert ids["alternating/index/ratio-cutoff"].details["cutoff"] == 18
    assert ids["alternating/index/binomial"].verdict == VERIFIED
    assert 3 * math.comb(13, 4) <= 13**3 and 3 * math.comb(14, 4) > 14**3


def test_induction_value_at_20():
    assert abs(float(alternating.induction_step(20)) - 1.28425) < 1e-4


def test_classical_small_q():
    certs = classical.verify_classical(qmax=300, crosscheck=False)
    bad = [c.id for c in certs if c.verdict != VERIFIED]
    assert not bad


def test_classical_cross_check():
    certs = classical.cross_check()
    assert all(c.verdict == VERIFIED for c in certs)
    assert all(c.lhs.hi < 2 for c in certs)


def test_exceptional_rows():
    certs = {c.id: c for c in exceptional.verify_exceptional(qmax=400)}
    assert all(c.verdict == VERIFIED for c in certs.values())
    assert abs(float(certs["exceptional/2B2/smallest-q"].lhs.hi) - 0.6072) < 1e-3
    assert certs["e8/count"].details["max_total"] == 166


def test_report_aggregation():
    certs = [predicate("a/1", "x", "s", True), predicate("b/1", "x", "s", False),
             Certificate("c/1", "x", "s", None, None, SKIPPED)]
    rep = report(certs, trend=False)
    assert rep.summary == {"verified": 1, "failed": 1, "inconclusive": 0, "skipped": 1}
    assert rep.verdict == "failed" and rep.failing_ids == ["b/1"]
    assert overall_verdict(summarize(certs[:1] + certs[2:])) == "verified-with-skips"
    again = VerificationReport.from_json(rep.to_json())
    assert summarize(again.certificates) == rep.summary


def test_injected_failure_is_named():
    t = load_tables()
    label, apply = next(c for c in mutable_cells(t) if c[0] == "sporadic/J1/order")
    rep = report(run("tables", RunOptions(tables=apply(t, 1))), trend=False)
    assert rep.verdict == "failed"
    assert any(i.startswith("tables/") for i in rep.failing_ids)
