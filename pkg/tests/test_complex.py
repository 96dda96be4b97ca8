import math

import pytest

from extcalc.complex import (
    Cochain,
    ComplexError,
    ComplexHandle,
    apply_differential,
    check_element,
    complement_cochain,
    differential,
    differential_matrix,
    enumerate_basis,
    exterior_cross_effect_dims,
    format_cochain,
    h1_generator,
    h1_modpn_generator,
    h2_generator,
    h2_generators,
    localized_differential_matrix,
    phi_matrix,
    u_cochain,
)


def test_basis_is_lexicographic():
    assert enumerate_basis(5, 2) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert enumerate_basis(4, 0) == [()]
    assert enumerate_basis(3, 3) == []


@pytest.mark.parametrize("bad", [(2, 1), (0, 2), (1, 4), (3, 3)])
def test_check_element_rejects(bad):
    with pytest.raises(ComplexError):
        check_element(4, bad)


def test_differential_of_empty_element():
    # delta<> = sum_m -C(d, m) <m>
    assert differential(4, 0, ()).coefficients == {(1,): -4, (2,): -6, (3,): -4}


def test_differential_degree_one():
    # inserting before and after n: -C(n, m) <m n> + C(d - n, m - n) <n m>
    z = differential(4, 1, (2,))
    assert z.coefficients == {(1, 2): -2, (2, 3): 2}


def test_differential_matrix_shape_and_entries():
    m = differential_matrix(3, 0)
    assert m.shape == (2, 1)
    assert sorted(m.triplets()) == [(0, 0, -3), (1, 0, -3)]


@pytest.mark.parametrize("d", range(1, 11))
def test_delta_squared_is_zero(d):
    for k in range(d - 2):
        assert (differential_matrix(d, k + 1) @ differential_matrix(d, k)).is_zero()


@pytest.mark.parametrize("p,N", [(2, 1), (2, 3), (3, 2), (5, 1)])
def test_localized_complex_is_a_complex_and_conjugate(p, N):
    q = p**N
    for d in range(2, 9):
        for k in range(d - 1):
            loc = localized_differential_matrix(p, N, d, k)
            lhs = (phi_matrix(p, N, d, k + 1) @ differential_matrix(d, k)).reduce_mod(q)
            rhs = (loc @ phi_matrix(p, N, d, k)).reduce_mod(q)
            assert lhs == rhs
            if k + 1 < d - 1:
                nxt = localized_differential_matrix(p, N, d, k + 1)
                assert (nxt @ loc).reduce_mod(q).is_zero()


def test_cochain_formatting():
    z = Cochain(4, 1, {(1,): 2, (2,): -3, (3,): 0})
    assert str(z) == "2*<1> - 3*<2>"
    assert str(Cochain(4, 1, {})) == "0"
    assert format_cochain({(1, 2): 1}) == "<1 2>"


def test_cochain_algebra_and_vectors():
    a = Cochain.from_vector(4, 1, [1, 2, 3])
    b = Cochain.from_vector(4, 1, [1, 0, -3])
    assert (a + b).to_vector() == [2, 2, 0]
    assert (a - a).is_zero()
    assert (2 * a).to_vector() == [2, 4, 6]
    assert a.reduce(2).to_vector() == [1, 0, 1]
    with pytest.raises(ComplexError):
        a + Cochain(5, 1, {})


def test_h1_generator_examples():
    assert str(h1_generator(4)) == "2*<1> + 3*<2> + 2*<3>"
    assert str(h1_generator(2)) == "<1>"
    with pytest.raises(ComplexError):
        h1_generator(6)


def test_h2_generator_examples():
    assert str(h2_generator(3, 2, 0, 1)) == "<1 2>"
    assert str(h2_generator(4, 3, 0, 1)) == "<1 2> + <1 3>"
    assert str(h2_generator(6, 2, 1, 1)) == "-<1 2> + 2*<2 3> + 3*<2 4> + 2*<2 5>"
    with pytest.raises(ComplexError):
        h2_generator(7, 2, 1, 1)


def test_h2_generators_cover_j_set():
    assert sorted(h2_generators(12)) == [2, 3, 11]
    for p, (n, m, z) in h2_generators(30).items():
        assert 30 == p**n * (p**m + 1)
        assert apply_differential(z).is_zero()


def test_h1_modpn_generator():
    z = h1_modpn_generator(2, 3, 6)
    assert z.coefficients == {(2,): 4}
    assert z.modulus == 8
    with pytest.raises(ComplexError):
        h1_modpn_generator(2, 1, 7)


def test_complement_notation():
    assert complement_cochain(4, {(): 1}).coefficients == {(1, 2, 3): 1}
    assert u_cochain(4, 2).coefficients == {(1, 3): 1, (2, 3): 1}
    with pytest.raises(ComplexError):
        u_cochain(2, 2)


def test_handle_outside_range_is_zero():
    h = ComplexHandle(4)
    assert h.dim(-1) == 0 and h.dim(3) == 1 and h.dim(4) == 0
    assert h.matrix(-1).shape == (1, 0)
    assert h.matrix(3).shape == (0, 1)
    assert h.estimated_nnz(1) == 3 * 2


def test_exterior_cross_effects_concentrated():
    for d in range(1, 10):
        dims = exterior_cross_effect_dims(d)
        assert dims[d - 1] == 1 and sum(dims) == 1
