from fractions import Fraction
from itertools import combinations

import pytest

from hsverify.groupspec import build_group, hs_scan_catalog
from hsverify.partition import enumerate_cosets, find_partition, hs_scan, validate_witness
from hsverify.permgroup import SubgroupLattice


def brute_force_partitions(system, distinct: bool) -> bool:
    """Any subset of cosets that tiles G (with distinct indices if asked)."""
    full = (1 << system.group_order) - 1
    cosets = system.cosets
    for r in range(2, len(cosets) + 1):
        for combo in combinations(range(len(cosets)), r):
            idx = [cosets[i].index for i in combo]
            if distinct and len(set(idx)) != len(idx):
                continue
            if sum(Fraction(1, m) for m in idx) != 1:
                continue
            acc = 0
            ok = True
            for i in combo:
                if acc & cosets[i].mask:
                    ok = False
                    break
                acc |= cosets[i].mask
            if ok and acc == full:
                return True
    return False


def test_s3_coset_count():
    # 1 trivial subgroup (6 cosets), 3 of order 2 (3 each), 1 of order 3 (2)
    assert len(enumerate_cosets(build_group("S3")).cosets) == 17


@pytest.mark.parametrize("spec", ["C2", "C3", "C4", "C2 x C2", "S3", "C6"])
def test_search_matches_brute_force(spec):
    system = enumerate_cosets(build_group(spec))
    for distinct in (True, False):
        result = find_partition(system, distinct)
        assert result.exhausted
        assert (result.witness is not None) == brute_force_partitions(system, distinct)


@pytest.mark.parametrize("spec", ["C12", "D4", "A4", "Q8", "C2 x C2 x C2"])
def test_witness_with_repeats_validates(spec):
    system = enumerate_cosets(build_group(spec))
    result = find_partition(system, False)
    assert result.witness is not None
    assert validate_witness(system, result.witness)
    assert sum(Fraction(1, m) for m in result.witness.indices) == 1


def test_validate_witness_rejects_overlap():
    system = enumerate_cosets(build_group("C4"))
    result = find_partition(system, False)
    w = result.witness
    bad = type(w)(w.cosets + w.cosets[:1], w.indices + w.indices[:1])
    assert not validate_witness(system, bad)


def test_masks_are_cosets():
    g = build_group("D4")
    system = enumerate_cosets(g, lattice=SubgroupLattice(g))
    for c in system.cosets:
        assert bin(c.mask).count("1") * c.index == g.order


def test_node_limit_reports_undecided():
    system = enumerate_cosets(build_group("C12"))
    result = find_partition(system, False, node_limit=1)
    assert not result.exhausted and result.witness is None


def test_scan_small_catalog():
    groups = {k: v for k, v in hs_scan_catalog(12).items()}
    certs = hs_scan(groups)
    assert len(certs) == len(groups)
    assert all(c.verdict == "verified" for c in certs)
