"""Sporadic groups and the Tits group: B_n(G) < 1 from the tabulated indices."""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction

from ..exact import format_rational
from ..families import PROV_SPORADIC, SporadicRecord, Tables, load_tables
from ..permgroup import jvalue, mathieu11
from .bounds import BoundInput, bn_bound
from .certificate import Certificate, certify, certify_with_retry, failed_with

ANCHOR = "sporadic groups and the Tits group: B_n(G) < 1"


@lru_cache(maxsize=1)
def m11_jvalue() -> Fraction:
    return jvalue(mathieu11())


def verify_sporadic_row(rec: SporadicRecord) -> Certificate:
    cid = f"sporadic/{rec.name}"
    if rec.bn_level == 0:
        j = m11_jvalue()
        return certify(
            cid, ANCHOR, f"J({rec.name}) = {format_rational(j)} < 2", j, 2,
            ("subgroup lattice enumeration",), {"order": rec.order, "jvalue": j},
        )
    inp = BoundInput(rec.order, rec.minimal_indices, rec.ell_bound)
    level = rec.bn_level
    stmt = f"B_{level}({rec.name}) < 1 with m = {list(rec.minimal_indices[:level])}, ell <= {rec.ell_bound}"
    details = {"order": rec.order, "level": level, "constant": "e^gamma + 1 (enclosure)"}
    try:
        return certify_with_retry(lambda p: bn_bound(inp, level, p), 1, cid, ANCHOR, stmt, (PROV_SPORADIC,), details)
    except ValueError as exc:
        return failed_with(cid, ANCHOR, stmt, str(exc), (PROV_SPORADIC,))


def verify_sporadic(tables: Tables | None = None) -> list[Certificate]:
    tables = tables or load_tables()
    out = []
    for rec in tables.sporadic:
        try:
            out.append(verify_sporadic_row(rec))
        except ValueError as exc:  # malformed row, e.g. unsorted indices
            out.append(failed_with(f"sporadic/{rec.name}", ANCHOR, "row is well formed", str(exc), (PROV_SPORADIC,)))
    return out
