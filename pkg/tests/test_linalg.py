import random

import pytest
from hypothesis import given, settings, strategies as st

from extcalc.linalg import (
    SparseIntMatrix,
    image_order,
    integer_rank,
    rank_mod_prime,
    smith_normal_form,
    solve_integer_system,
)

from conftest import dense_invariant_factors, random_matrix

small_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_sparse_matrix_basics():
    A = SparseIntMatrix.from_dense([[1, 0], [0, 0], [3, -2]])
    assert A.shape == (3, 2)
    assert A.nnz == 3
    assert A[2, 1] == -2 and A[1, 1] == 0
    assert A.transpose().to_dense() == [[1, 0, 3], [0, 0, -2]]
    assert A @ [1, 1] == [1, 0, 1]
    assert (A.transpose() @ A).to_dense() == [[10, -6], [-6, 4]]
    assert A.reduce_mod(2).to_dense() == [[1, 0], [0, 0], [1, 0]]
    assert sorted(A.triplets()) == [(0, 0, 1), (2, 0, 3), (2, 1, -2)]


def test_known_smith_form():
    A = SparseIntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert smith_normal_form(A).diagonal == [2, 6, 12]


def test_zero_and_empty():
    assert smith_normal_form(SparseIntMatrix(3, 4)).diagonal == []
    assert smith_normal_form(SparseIntMatrix(0, 0)).rank == 0


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_invariants_match_dense_oracle(rows):
    form = smith_normal_form(SparseIntMatrix.from_dense(rows), keep_transforms=True)
    assert form.diagonal == dense_invariant_factors(rows)
    for a, b in zip(form.diagonal, form.diagonal[1:]):
        assert b % a == 0


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_transform_identity(rows):
    A = SparseIntMatrix.from_dense(rows)
    form = smith_normal_form(A, keep_transforms=True)
    U, V = form.u_matrix(), form.v_matrix()
    assert U @ A @ V == form.diagonal_matrix()


def test_transforms_are_unimodular():
    import sympy

    rng = random.Random(7)
    for _ in range(20):
        A = SparseIntMatrix.from_dense(random_matrix(rng, 8))
        form = smith_normal_form(A, keep_transforms=True)
        assert abs(sympy.Matrix(form.u_matrix().to_dense()).det()) == 1
        assert abs(sympy.Matrix(form.v_matrix().to_dense()).det()) == 1


def test_apply_v_inverse_undoes_apply_v():
    rng = random.Random(3)
    A = SparseIntMatrix.from_dense(random_matrix(rng, 10))
    form = smith_normal_form(A, keep_transforms=True)
    x = [rng.randint(-5, 5) for _ in range(A.cols)]
    assert form.apply_v_inverse(form.apply_v(x)) == x


def test_rank_functions_agree():
    rng = random.Random(11)
    for _ in range(50):
        A = SparseIntMatrix.from_dense(random_matrix(rng, 15))
        r = smith_normal_form(A).rank
        assert integer_rank(A) == r
        assert rank_mod_prime(A) == r


def test_solve_integer_system():
    A = SparseIntMatrix.from_dense([[2, 0], [0, 3]])
    assert solve_integer_system(A, [4, 9]) == [2, 3]
    assert solve_integer_system(A, [1, 0]) is None
    x = solve_integer_system(SparseIntMatrix.from_dense([[2, 4], [1, 1]]), [6, 2])
    assert x is not None and [2 * x[0] + 4 * x[1], x[0] + x[1]] == [6, 2]


def test_image_order():
    A = SparseIntMatrix.from_dense([[6], [0]])
    form = smith_normal_form(A, keep_transforms=True)
    assert image_order(form, [1, 0]) == 6
    assert image_order(form, [3, 0]) == 2
    assert image_order(form, [0, 1]) is None
    assert image_order(form, [0, 0]) == 1
