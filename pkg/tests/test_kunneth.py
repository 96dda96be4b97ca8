import pytest

from extcalc.groups import AbelianGroup, GradedGroup
from extcalc.homology import homology_all
from extcalc.kunneth import (
    compositions,
    ext_tensorpower_lambda,
    ext_tensorpower_lambda_closed,
    ext_tensorpower_sd,
    graded_ext_a_lambda,
)

from conftest import load


def test_compositions():
    assert compositions(4, 2) == [(1, 3), (2, 2), (3, 1)]
    assert compositions(3, 3) == [(1, 1, 1)]
    assert compositions(3, 1) == [(3,)]
    with pytest.raises(ValueError):
        compositions(0, 1)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_t2_lists(d):
    assert ext_tensorpower_sd(2, d) == GradedGroup.from_strings(load("t2_lists.json")[str(d)])


def test_c_one_is_sd():
    for d in range(1, 7):
        assert ext_tensorpower_sd(1, d) == homology_all(d)


def test_c_above_d_is_zero():
    assert ext_tensorpower_sd(4, 3) == GradedGroup()
    assert ext_tensorpower_lambda(4, 3) == GradedGroup()


def test_lambda_building_block():
    assert graded_ext_a_lambda(3) == GradedGroup({2: AbelianGroup(1)})


def test_lambda_closed_form():
    for d in range(1, 10):
        for c in range(1, d + 1):
            assert ext_tensorpower_lambda(c, d) == ext_tensorpower_lambda_closed(c, d)
    assert ext_tensorpower_lambda_closed(2, 5) == GradedGroup({3: AbelianGroup(4)})
