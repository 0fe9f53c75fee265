"""Checks of general-purpose facts: the divisor-sum bound, Stirling's envelope,
and the bound J(M) <= (e^g+1) lnln |M| on groups of order 7..15."""

from __future__ import annotations

from fractions import Fraction

from .. import exact
from ..enclosure import DEFAULT_PRECISION, lnln_enclosure, robin_bound, stirling_envelope
from ..families import PROV_ROBIN
from ..groupspec import build_group
from ..permgroup import SMALL_GROUPS_7_TO_15, jvalue
from .bounds import e_gamma_plus_one, robin_sweep, verify_b_increasing_check, verify_b_monotone_threshold
from .certificate import Certificate, certify, predicate

ANCHOR_ROBIN = "divisor-sum bound sigma(n)/n <= B(n)"
ANCHOR_STIRLING = "Robbins two-sided factorial bounds"
ANCHOR_SMALL = "J(M) <= (e^g+1) ln ln |M| for groups of order 7 to 15"


def robin_sweep_certificate(limit: int = 10**6) -> Certificate:
    bad = robin_sweep(limit)
    return predicate(
        f"general/sigma<=nB(n)/1..{limit}", ANCHOR_ROBIN,
        f"sigma(n) <= n B(n).hi for 1 <= n <= {limit}", not bad, (PROV_ROBIN,),
        {"counterexamples": bad[:20], "limit": limit},
    )


def stirling_sandwich(m_max: int = 2000, precision: int = DEFAULT_PRECISION) -> Certificate:
    """lower.hi < m! < upper.lo for every 1 <= m <= m_max."""
    bad = []
    fact = 1
    for m in range(1, m_max + 1):
        fact *= m
        lower, upper = stirling_envelope(m, precision)
        if not (lower.hi < fact < upper.lo):
            bad.append(m)
    return predicate(
        f"general/stirling/1..{m_max}", ANCHOR_STIRLING,
        f"sqrt(2 pi m)(m/e)^m e^(1/(12m+1)) < m! < sqrt(2 pi m)(m/e)^m e^(1/(12m)) for 1 <= m <= {m_max}",
        not bad, (), {"failures": bad[:20]},
    )


def small_group_inspection(precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    out = []
    for name in SMALL_GROUPS_7_TO_15:
        g = build_group(name)
        j = jvalue(g)
        rhs_enc = e_gamma_plus_one(precision) * lnln_enclosure(g.order, precision)
        # J < rhs  <=>  J - rhs < 0
        out.append(certify(
            f"general/small-order/{name}", ANCHOR_SMALL, f"J({name}) = {exact.format_rational(j)} < (e^g+1) lnln {g.order}",
            j - rhs_enc, 0, ("subgroup lattice enumeration",), {"order": g.order, "jvalue": j, "rhs": rhs_enc},
        ))
    return out


def degenerate_route(groups: dict, precision: int = DEFAULT_PRECISION) -> list[Certificate]:
    """J(G) <= B(|G|) for every given group (the route via sigma(|G|)/|G|).

    For |G| <= 2, B is rational and equality is possible, so the check is exact.
    """
    out = []
    for name in sorted(groups):
        g = groups[name]
        j = jvalue(g)
        cid, stmt = f"general/J<=B/{name}", f"J({name}) <= B({g.order})"
        details = {"jvalue": j, "sigma_ratio": Fraction(exact.sigma(g.order), g.order)}
        if g.order <= 2:
            out.append(predicate(cid, ANCHOR_ROBIN, stmt, j <= robin_bound(g.order, precision).lo, (PROV_ROBIN,), details))
        else:
            out.append(certify(cid, ANCHOR_ROBIN, stmt + " (strict)", j - robin_bound(g.order, precision), 0, (PROV_ROBIN,), details))
    return out


def verify_general(robin_limit: int = 10**6, stirling_max: int = 2000) -> list[Certificate]:
    return [
        verify_b_monotone_threshold(),
        verify_b_increasing_check(),
        robin_sweep_certificate(robin_limit),
        stirling_sandwich(stirling_max),
        *small_group_inspection(),
    ]
