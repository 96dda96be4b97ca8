from fractions import Fraction

import numpy as np
import pytest

from extcalc import hopf
from extcalc.hopf import (
    HopfError,
    Relation,
    check_all_relations,
    check_relation,
    ed_dim,
    ed_legend,
    ed_matrix,
    gen,
    monomials,
    relation_instances,
    section_obstruction,
    symmetric_power_of,
    word_matrix,
)


def test_monomial_order():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert ed_dim(2, 2) == 5
    assert ed_legend(2, 2) == ["e1^2", "e1*e2", "e2^2", "e1", "e2"]


def test_delta_block_matrix():
    m = ed_matrix(gen("delta"), 2)
    assert m.tolist() == [[1, 0], [2, 1], [1, 0], [0, 1], [0, 1]]


def test_antipode_block():
    assert ed_matrix(gen("antipode"), 2).tolist() == [[1, 1], [0, -1]]
    assert ed_matrix(gen("antipode"), 3).tolist() == [[-1, 0], [0, -1]]


def test_matrices_are_read_only():
    with pytest.raises(ValueError):
        ed_matrix(gen("nabla"), 2)[0, 0] = 5


def test_generator_validation():
    with pytest.raises(HopfError):
        gen("bogus")
    with pytest.raises(HopfError):
        gen("tau", -1, 0)
    with pytest.raises(HopfError):
        ed_matrix(gen("tau"), 6)
    with pytest.raises(HopfError):
        word_matrix((gen("nabla"), gen("nabla")), 2)


def test_symmetric_power_is_functorial():
    a = np.array([[1, 2], [0, 1], [3, -1]])
    b = np.array([[2, 0, 1], [1, 1, 1]])
    for d in (1, 2, 3):
        lhs = np.asarray(symmetric_power_of(b @ a, d), dtype=object)
        rhs = np.asarray(symmetric_power_of(b, d), dtype=object) @ np.asarray(symmetric_power_of(a, d), dtype=object)
        assert (lhs == rhs).all()


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_all_relations_small(d):
    report = check_all_relations(d, max_rank=3)
    assert report.passed, report.failure
    assert report.checked == len(relation_instances(3))


def test_instance_count_and_families():
    rels = relation_instances(4)
    families = {r.family for r in rels}
    assert {"monoidality", "braid", "symmetry naturality", "antipode", "bialgebra", "unit-counit"} <= families
    assert all(max(r.objects()) <= 4 for r in rels)


def test_false_relation_detected():
    # composing with the antipode changes the product
    bogus = Relation("bogus", (gen("nabla"), gen("antipode")), (gen("nabla"),), 2)
    assert not check_relation(4, bogus)


def test_perturbed_block_fails(monkeypatch):
    original = hopf.d_block

    def perturbed(g, d):
        out = np.array(original(g, d), dtype=object)
        if g.kind == "delta":
            out[1, g.n] += 1
        return out

    monkeypatch.setattr(hopf, "d_block", perturbed)
    hopf._ed_cached.cache_clear()
    try:
        assert not check_all_relations(4, max_rank=3).passed
    finally:
        monkeypatch.undo()
        hopf._ed_cached.cache_clear()
    assert check_all_relations(4, max_rank=3).passed


@pytest.mark.parametrize("d,p", [(2, 2), (3, 3), (4, 2), (5, 5), (8, 2), (9, 3)])
def test_section_obstruction(d, p):
    out = section_obstruction(d)
    assert out["certified"]
    assert Fraction(out["lambda"]) == Fraction(-1, p)
    assert not out["integral"]
    if p == 2:
        assert Fraction(out["equivariant"]["v"]) == Fraction(-1, 2)
    else:
        assert out["equivariant"]["status"] == "unconstrained"
