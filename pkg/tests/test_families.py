import random
from fractions import Fraction

import pytest

from hsverify import families
from hsverify.families import (
    AUDITED_DIGEST,
    CatalogError,
    default_catalog,
    ingest_catalog,
    load_tables,
    mutable_cells,
    parse_catalog,
    validate_tables,
)


def test_bundled_tables_validate():
    certs = validate_tables()
    assert certs and all(c.verdict == "verified" for c in certs)
    assert load_tables().digest() == AUDITED_DIGEST


def test_sporadic_rows():
    t = load_tables()
    names = [r.name for r in t.sporadic]
    assert len(names) == 27 and "Tits" in names and "M" in names
    monster = next(r for r in t.sporadic if r.name == "M")
    assert monster.order == families.MONSTER_ORDER


def test_monster_order_factorization():
    n = 1
    for p, k in families.MONSTER_FACTORIZATION:
        n *= p**k
    assert n == families.MONSTER_ORDER


@pytest.mark.parametrize("fam,n,q,order", [
    ("PSL", 2, 7, 168), ("PSL", 3, 2, 168), ("PSL", 2, 8, 504), ("PSU", 3, 3, 6048),
    ("PSp", 4, 3, 25920), ("POmega+", 8, 2, 174182400),
])
def test_classical_orders(fam, n, q, order):
    assert families.classical_order(fam, n, q) == order


@pytest.mark.parametrize("name,q,order", [("2B2", 8, 29120), ("G2", 3, 4245696), ("2G2", 27, 10073444472),
                                          ("3D4", 2, 211341312), ("2F4", 8, 264905352699586176614400)])
def test_exceptional_orders(name, q, order):
    rec = next(r for r in families.EXCEPTIONAL if r.name == name)
    assert rec.order(q) == order
    assert order % rec.m1(q) == 0


def test_exceptional_admissibility():
    sz = next(r for r in families.EXCEPTIONAL if r.name == "2B2")
    assert sz.admissible_qs(600) == [8, 32, 128, 512]
    ree = next(r for r in families.EXCEPTIONAL if r.name == "2G2")
    assert ree.admissible_qs(3**7) == [27, 243, 2187]


def test_e8_totals():
    c = families.E8_COUNTS
    assert c.total(2) == 166
    assert c.total(5) == 8 + 29 + 7 + 3 + (0 + 17 + 2 + 3 + 64)
    primes = families.e8_relevant_primes()
    beyond = primes[-1]
    assert beyond > 2617 and c.subclass_bound("N5b", beyond) == 0


def test_catalog_round_trip(tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("# comment\n14 intransitive 1 3113510400\n14 primitive 2 1092\n13 axiom-j 1 111/100\n")
    cat = ingest_catalog(path)
    assert cat.has_primitive_data(14)
    assert not cat.has_primitive_data(15)
    assert cat.j_axiom(13) == Fraction(111, 100)
    assert 1092 in cat.maximal_orders(14)


@pytest.mark.parametrize("text,line", [
    ("14 intransitive 1\n", 1),
    ("\n14 weird 1 10\n", 2),
    ("14 primitive 1 11\n", 1),  # 11 does not divide 14!/2
    ("14 primitive 1 -5\n", 1),
    ("14 primitive 1 3/2\n", 1),
    ("14 primitive x 1092\n", 1),
])
def test_catalog_errors(text, line):
    with pytest.raises(CatalogError) as info:
        parse_catalog(text)
    assert info.value.line == line


def test_default_catalog_has_no_primitive_rows():
    cat = default_catalog()
    assert all(not cat.has_primitive_data(n) for n in range(14, 44))
    assert cat.degree(14, "intransitive")


def test_derived_catalog_rows_match_bundle():
    cat = default_catalog()
    for n in (14, 20, 43):
        derived = parse_catalog("\n".join(families.derived_catalog_lines(n)))
        assert sorted(e.order for e in derived.entries) == sorted(e.order for e in cat.degree(n) if e.kind != "axiom-j")


def test_every_single_cell_mutation_is_caught():
    t = load_tables()
    for label, apply in mutable_cells(t):
        for delta in (1, -1):
            certs = validate_tables(apply(t, delta))
            assert any(c.verdict != "verified" for c in certs), (label, delta)


def test_random_mutations_break_consistency_or_digest():
    rng = random.Random(20240607)
    t = load_tables()
    cells = mutable_cells(t)
    for _ in range(50):
        label, apply = rng.choice(cells)
        bad = [c.id for c in validate_tables(apply(t, rng.choice((1, -1)))) if c.verdict != "verified"]
        assert bad, label


def test_order_mutation_is_caught_semantically():
    t = load_tables()
    label, apply = next(c for c in mutable_cells(t) if c[0] == "sporadic/J1/order")
    bad = [c.id for c in validate_tables(apply(t, 1)) if c.verdict != "verified"]
    assert any(b != "tables/digest" for b in bad)
