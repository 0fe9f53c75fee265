"""Exhaustive search for partitions of a small group into right cosets.

Cosets are bitmasks over the lexicographically ordered elements of G, and the
search is Algorithm X: pick the uncovered element lying in the fewest usable
cosets, branch on those cosets.  With distinct indices required, a branch is
also cut when the cosets of still-unused indices cannot cover what is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .permgroup import OrderCapExceeded, PermGroup, SubgroupLattice, jvalue_from_indices
from .verify.certificate import Certificate, certify, failed_with

COSET_ORDER_CAP = 1000
DEFAULT_NODE_LIMIT = 5_000_000


@dataclass(frozen=True)
class Coset:
    class_id: int
    index: int
    mask: int


@dataclass(frozen=True)
class CosetSystem:
    group_order: int
    cosets: tuple[Coset, ...]
    elements: tuple  # the element ordering the masks refer to


@dataclass(frozen=True)
class PartitionWitness:
    cosets: tuple[int, ...]  # positions in CosetSystem.cosets
    indices: tuple[int, ...]


@dataclass(frozen=True)
class SearchResult:
    witness: PartitionWitness | None
    nodes: int
    exhausted: bool  # False when the node limit stopped the search


def enumerate_cosets(group: PermGroup, proper_only: bool = True, lattice: SubgroupLattice | None = None) -> CosetSystem:
    """All right cosets Hx of all subgroups H (proper ones only if asked)."""
    order = group.order
    if order > COSET_ORDER_CAP:
        raise OrderCapExceeded(order, COSET_ORDER_CAP)
    lattice = lattice or SubgroupLattice(group)
    ig = lattice.ig
    cosets = []
    for h in lattice.all_subgroups():
        if proper_only and len(h) == order:
            continue
        cid = lattice._lookup[h]
        index = order // len(h)
        covered = 0
        for x in range(ig.n):
            if covered >> x & 1:
                continue
            table = ig.right_table(x)
            mask = 0
            for e in h:
                mask |= 1 << table[e]
            covered |= mask
            cosets.append(Coset(cid, index, mask))
    return CosetSystem(order, tuple(cosets), tuple(ig.elements))


def find_partition(system: CosetSystem, distinct_indices: bool, node_limit: int = DEFAULT_NODE_LIMIT) -> SearchResult:
    n = system.group_order
    full = (1 << n) - 1
    cosets = system.cosets
    containing: list[list[int]] = [[] for _ in range(n)]
    for i, c in enumerate(cosets):
        m = c.mask
        while m:
            low = m & -m
            containing[low.bit_length() - 1].append(i)
            m ^= low
    all_indices = sorted({c.index for c in cosets})
    nodes = 0
    chosen: list[int] = []

    def usable(i: int, covered: int, used: frozenset) -> bool:
        c = cosets[i]
        return not (c.mask & covered) and not (distinct_indices and c.index in used)

    def search(covered: int, used: frozenset) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise _NodeLimit
        if covered == full:
            return True
        uncovered = n - bin(covered).count("1")
        if distinct_indices:
            capacity = sum(n // m for m in all_indices if m not in used)
            if capacity < uncovered:
                return False
        best: list[int] | None = None
        rest = full & ~covered
        while rest:
            low = rest & -rest
            e = low.bit_length() - 1
            options = [i for i in containing[e] if usable(i, covered, used)]
            if best is None or len(options) < len(best):
                best = options
                if not options:
                    return False
            rest ^= low
        for i in best:
            chosen.append(i)
            c = cosets[i]
            if search(covered | c.mask, used | {c.index} if distinct_indices else used):
                return True
            chosen.pop()
        return False

    try:
        found = search(0, frozenset())
    except _NodeLimit:
        return SearchResult(None, nodes, False)
    if not found:
        return SearchResult(None, nodes, True)
    witness = PartitionWitness(tuple(chosen), tuple(cosets[i].index for i in chosen))
    return SearchResult(witness, nodes, True)


class _NodeLimit(Exception):
    pass


def validate_witness(system: CosetSystem, witness: PartitionWitness) -> bool:
    """Independent check: disjoint, covering, and sum of 1/index equal to 1."""
    seen = 0
    for i in witness.cosets:
        m = system.cosets[i].mask
        if m & seen:
            return False
        seen |= m
    if seen != (1 << system.group_order) - 1:
        return False
    return sum(Fraction(1, m) for m in witness.indices) == 1


def hs_scan(groups: Mapping[str, PermGroup], order_cap: int = COSET_ORDER_CAP) -> list[Certificate]:
    """One certificate per group: no partition into cosets with pairwise distinct indices."""
    out = []
    for name in sorted(groups):
        group = groups[name]
        cid = f"hs-scan/{name}"
        anchor = "coset partitions into distinct indices"
        statement = f"{name} has no partition into right cosets of proper subgroups with distinct indices"
        try:
            if group.order > order_cap:
                raise OrderCapExceeded(group.order, order_cap)
            lattice = SubgroupLattice(group)
            system = enumerate_cosets(group, True, lattice)
            result = find_partition(system, True)
        except OrderCapExceeded as exc:
            out.append(failed_with(cid, anchor, statement, str(exc)))
            continue
        table = lattice.class_table()
        j = jvalue_from_indices(table.group_order // o for o in table.orders)
        details = {"order": group.order, "search_nodes": result.nodes, "jvalue": j, "jvalue_below_2": j < 2}
        if not result.exhausted:
            out.append(Certificate(cid, anchor, statement, None, None, "inconclusive", (), 0, details))
            continue
        found = 0 if result.witness is None else 1
        if result.witness is not None:
            details["witness_indices"] = list(result.witness.indices)
        out.append(certify(cid, anchor, statement, found, 1, ("exhaustive exact-cover search",), details))
    return out
