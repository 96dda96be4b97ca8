import pytest
from hypothesis import given, settings, strategies as st

from extcalc.groups import (
    ZERO,
    AbelianGroup,
    GradedGroup,
    Z,
    divisor_chain,
    group_tensor,
    group_tor,
    kunneth_product,
    primary_decomposition,
)

groups = st.builds(
    AbelianGroup,
    st.integers(0, 2),
    st.lists(st.integers(2, 36), max_size=3).map(tuple),
)
graded = st.dictionaries(st.integers(0, 4), groups, max_size=3).map(GradedGroup)


def test_normal_forms():
    g = AbelianGroup(0, (2, 5))
    assert g == AbelianGroup(0, (10,))
    assert str(g) == "Z/2 + Z/5"
    assert g.chain_str() == "Z/10"
    assert divisor_chain([4, 6]) == [2, 12]
    assert primary_decomposition([12]) == [3, 4]


def test_rendering():
    assert str(ZERO) == "0"
    assert str(Z) == "Z"
    assert str(AbelianGroup(2, (2, 2, 3))) == "Z^2 + Z/2 + Z/2 + Z/3"
    assert AbelianGroup(2, (2, 2, 3)).chain_str() == "Z^2 + Z/2 + Z/6"


@pytest.mark.parametrize("text", ["0", "Z", "Z^3", "Z/10", "Z/2 + Z/5", "(Z/2)^3 + Z/9", "Z^2 ⊕ Z/4"])
def test_parse_round_trip(text):
    g = AbelianGroup.parse(text)
    assert AbelianGroup.parse(str(g)) == g
    assert AbelianGroup.parse(g.chain_str()) == g


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        AbelianGroup.parse("Q/2")


def test_cyclic_and_order():
    assert AbelianGroup.cyclic(0) == Z
    assert AbelianGroup.cyclic(1) == ZERO
    assert AbelianGroup(0, (4, 6)).order() == 24
    assert Z.order() is None


def test_json_round_trip():
    g = AbelianGroup(1, (2, 4, 3))
    assert AbelianGroup.from_json(g.to_json()) == g


def test_tensor_and_tor_examples():
    a, b = AbelianGroup.cyclic(4), AbelianGroup.cyclic(6)
    assert group_tensor(a, b) == AbelianGroup.cyclic(2)
    assert group_tor(a, b) == AbelianGroup.cyclic(2)
    assert group_tensor(Z, b) == b
    assert group_tor(Z, b) == ZERO


@given(groups, groups)
def test_tensor_tor_commute(a, b):
    assert group_tensor(a, b) == group_tensor(b, a)
    assert group_tor(a, b) == group_tor(b, a)


@given(groups, groups, groups)
def test_tensor_tor_distribute(a, b, c):
    assert group_tensor(a, b + c) == group_tensor(a, b) + group_tensor(a, c)
    assert group_tor(a, b + c) == group_tor(a, b) + group_tor(a, c)


def test_graded_drops_zero_parts():
    g = GradedGroup({0: ZERO, 2: Z})
    assert g.degrees() == [2]
    assert g[5] == ZERO
    assert GradedGroup.from_strings(g.to_json()) == g


def test_kunneth_example():
    # Z/2 in degree 1 with itself: tensor in degree 2, Tor in degree 1
    g = GradedGroup({1: AbelianGroup.cyclic(2)})
    assert kunneth_product(g, g) == GradedGroup({1: AbelianGroup.cyclic(2), 2: AbelianGroup.cyclic(2)})


def test_kunneth_keeps_negative_tor_degree():
    g = GradedGroup({0: AbelianGroup.cyclic(3)})
    assert kunneth_product(g, g) == GradedGroup({-1: AbelianGroup.cyclic(3), 0: AbelianGroup.cyclic(3)})


@settings(max_examples=60, deadline=None)
@given(graded, graded)
def test_kunneth_commutative(g, h):
    assert kunneth_product(g, h) == kunneth_product(h, g)


@settings(max_examples=60, deadline=None)
@given(graded, graded, graded)
def test_kunneth_associative(f, g, h):
    assert kunneth_product(kunneth_product(f, g), h) == kunneth_product(f, kunneth_product(g, h))


def test_kunneth_unit():
    unit = GradedGroup({0: Z})
    g = GradedGroup({1: AbelianGroup(1, (4,)), 3: AbelianGroup.cyclic(5)})
    assert kunneth_product(unit, g) == g
