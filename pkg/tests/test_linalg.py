"""Exact linear algebra: ranks, kernels, solves, the sparse eliminator."""

import random
from fractions import Fraction

import pytest

from nilschober.linalg import (
    LinAlgError,
    identity_matrix,
    is_zero_matrix,
    mat_eq,
    mat_mul,
    nullspace,
    rank,
    rref,
    solve_matrix,
    sparse_nullspace,
    zeros,
)


def F(x):
    return Fraction(x)


def test_rank_hand_cases():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([]) == 0
    assert rank([[Fraction(1, 2), F(1)], [F(1), F(2)]]) == 1


def test_rref_pivots():
    reduced, pivots = rref([[2, 4, 6], [1, 2, 4]])
    assert pivots == [0, 2]
    assert reduced[0][:2] == [F(1), F(2)]


def test_nullspace_annihilates():
    rng = random.Random(99)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[F(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        basis = nullspace(m)
        k = len(basis[0]) if basis and basis[0] else 0
        assert k == cols - rank(m)
        if k:
            assert is_zero_matrix(mat_mul(m, basis))


def test_solve_matrix_roundtrip():
    a = [[F(1), F(0)], [F(2), F(1)], [F(0), F(3)]]
    x = [[F(2)], [F(-1)]]
    b = mat_mul(a, x)
    assert mat_eq(solve_matrix(a, b), x)


def test_solve_matrix_rejects_inconsistent():
    a = [[F(1)], [F(0)]]
    b = [[F(0)], [F(1)]]  # second coordinate unreachable
    with pytest.raises(LinAlgError):
        solve_matrix(a, b)


def test_solve_matrix_rejects_rank_deficient():
    a = [[F(1), F(2)], [F(2), F(4)]]
    with pytest.raises(LinAlgError):
        solve_matrix(a, [[F(1)], [F(2)]])


def test_sparse_nullspace_matches_dense():
    rng = random.Random(7)
    for _ in range(25):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        dense = [
            [F(rng.choice((-1, 0, 0, 0, 1, 2))) for _ in range(cols)]
            for _ in range(rows)
        ]
        sparse = [
            {j: v for j, v in enumerate(row) if v} for row in dense
        ]
        dense_basis = nullspace(dense)
        sparse_basis = sparse_nullspace(sparse, cols)
        k_dense = len(dense_basis[0]) if dense_basis and dense_basis[0] else 0
        k_sparse = len(sparse_basis[0]) if sparse_basis and sparse_basis[0] else 0
        assert k_dense == k_sparse
        if k_sparse:
            assert is_zero_matrix(mat_mul(dense, sparse_basis))


def test_identity_and_zeros_shapes():
    assert mat_eq(mat_mul(identity_matrix(3), identity_matrix(3)),
                  identity_matrix(3))
    assert zeros(2, 0) == [[], []]
    assert nullspace([], cols=3) == identity_matrix(3)
