import pytest
from hypothesis import given
from hypothesis import strategies as st

from hsverify.groupspec import (
    Generators,
    GroupSpecError,
    Named,
    Product,
    build_group,
    parse_group_spec,
    render,
)


def test_named():
    assert parse_group_spec("A5") == Named("A", (5,))
    assert parse_group_spec(" S 4 ") == Named("S", (4,))
    assert parse_group_spec("EA(2,3)") == Named("EA", (2, 3))
    assert parse_group_spec("M11") == Named("M11", ())


@pytest.mark.parametrize("text", ["PSL2(7)", "PSL2 7", "PSL(2,7)"])
def test_psl_forms(text):
    assert parse_group_spec(text) == Named("PSL2", (2, 7))
    assert render(parse_group_spec(text)) == "PSL(2,7)"


def test_products_flatten():
    spec = parse_group_spec("C2 x C4 × C3")
    assert spec == Product((Named("C", (2,)), Named("C", (4,)), Named("C", (3,))))
    assert build_group(spec).order == 24


def test_generators():
    spec = parse_group_spec("perm: (1 2 3)(4 5), (1 2)")
    assert isinstance(spec, Generators)
    assert spec.generators == (((1, 2, 3), (4, 5)), ((1, 2),))
    assert build_group(spec).order == 12


def test_generators_with_degree():
    spec = parse_group_spec("perm(6): (1 2)")
    assert spec.degree == 6
    assert build_group(spec).degree == 6


@pytest.mark.parametrize("text", ["", "A", "perm: (1 2 1)", "PSL2(6)", "PSL(2,12)", "A5 %", "Z3", "perm: ()",
                                  "C2 x", "EA(2)", "perm(2): (1 3)"])
def test_rejected(text):
    with pytest.raises(GroupSpecError) as info:
        build_group(text)
    assert isinstance(info.value.position, int)


def test_error_position():
    with pytest.raises(GroupSpecError) as info:
        parse_group_spec("A5 x ?")
    assert info.value.position == 5


@given(st.sampled_from(["A5", "S4", "C7", "D4", "Q12", "EA(2,3)", "PSL(2,7)", "M11", "C2 x D3",
                        "perm: (1 2 3)(4 5), (1 2)", "perm(6): (1 2)"]))
def test_render_round_trip(text):
    spec = parse_group_spec(text)
    assert parse_group_spec(render(spec)) == spec


@given(st.lists(st.sampled_from(["C2", "C3", "D3", "Q8", "A4"]), min_size=1, max_size=3))
def test_product_order_multiplies(names):
    text = " x ".join(names)
    expected = 1
    for n in names:
        expected *= build_group(n).order
    assert build_group(text).order == expected
