import pytest

from extcalc.complex import Cochain, h1_generator
from extcalc.groups import ZERO, AbelianGroup
from extcalc.homology import (
    class_order,
    homology_all,
    homology_at,
    homology_mod_pn,
    homology_mod_pn_lattice,
    homology_mod_pn_uct,
    is_coboundary,
)

from conftest import load


@pytest.mark.parametrize("d", range(1, 10))
def test_table_rows(d):
    expected = {int(i): AbelianGroup.parse(g) for i, g in load("table1.json")[str(d)].items()}
    computed = homology_all(d)
    for i in range(9):
        assert computed[i] == expected.get(i, ZERO), (d, i)


def test_vanishing_above_top_degree():
    for d in range(1, 8):
        assert homology_at(d, d) == ZERO
        assert homology_at(d, d + 3) == ZERO


def test_only_free_part_is_degree_zero_for_d1():
    assert homology_at(1, 0) == AbelianGroup(1)
    for d in range(2, 10):
        assert all(g.is_finite() for g in homology_all(d).parts.values())


def test_class_order():
    assert class_order(8, 1, h1_generator(8)) == 2
    z = h1_generator(8)
    assert class_order(8, 1, 2 * z) == 1
    assert is_coboundary(8, 1, 2 * z)
    with pytest.raises(ValueError):
        class_order(4, 1, Cochain(4, 1, {(1,): 1}))


@pytest.mark.parametrize("p,N", [(2, 1), (2, 2), (3, 1), (3, 3), (5, 2)])
def test_mod_pn_routes_agree(p, N):
    for d in range(2, 10):
        for k in range(d):
            uct = homology_mod_pn_uct(p, N, d, k)
            assert uct == homology_mod_pn_lattice(p, N, d, k, localized=True)
            assert uct == homology_mod_pn_lattice(p, N, d, k, localized=False)


def test_mod_pn_examples():
    # d = 6 lies in A(2): H^1 = Z/2 for every N
    for N in (1, 2, 3):
        assert homology_mod_pn(2, N, 6, 1) == [2]
    assert homology_mod_pn(3, 2, 7, 1) == []
