from fractions import Fraction

import numpy as np
import pytest

from netctrl.linear_algebra import (
    exact_identity,
    exact_matmul,
    exact_matrix,
    exact_rank,
    exact_zeros,
    integer_rows,
    to_float,
)


def test_exact_matrix():
    matrix = exact_matrix([[1, Fraction(1, 2)], [Fraction(4, 2), 0]])
    assert matrix.dtype == object
    assert matrix.tolist() == [[1, Fraction(1, 2)], [2, 0]]
    # whole fractions are stored as ints
    assert type(matrix[1, 0]) is int
    assert exact_matrix([], n_cols=3).shape == (0, 3)
    with pytest.raises(TypeError):
        exact_matrix([[1.0, 2]])
    with pytest.raises(TypeError):
        exact_matrix([[True, 2]])
    with pytest.raises(ValueError):
        exact_matrix([[1, 2], [3]])


def test_zeros_and_identity():
    assert exact_zeros(2, 3).tolist() == [[0, 0, 0], [0, 0, 0]]
    assert exact_identity(2).tolist() == [[1, 0], [0, 1]]


def test_integer_rows():
    assert integer_rows([[Fraction(1, 2), Fraction(1, 3)], [2, 4]]) == [[3, 2], [2, 4]]


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[1, 2], [3, 4]]) == 2
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([]) == 0
    assert exact_rank([[], []]) == 0
    assert exact_rank([[0, 1, 1], [0, 1, 1], [0, 0, 1]]) == 2
    assert exact_rank([[Fraction(1, 3), Fraction(2, 3)], [1, 2]]) == 1
    assert exact_rank(exact_identity(5)) == 5
    # float elimination would call this matrix singular
    big = 10**20
    assert exact_rank([[big, big + 1], [big - 1, big]]) == 2


def test_exact_rank_against_numpy():
    rng = np.random.default_rng(5)
    for _ in range(200):
        rows, cols = (int(v) for v in rng.integers(1, 7, size=2))
        rank = int(rng.integers(0, min(rows, cols) + 1))
        left = rng.integers(-3, 4, size=(rows, rank))
        right = rng.integers(-3, 4, size=(rank, cols))
        matrix = left @ right
        expected = np.linalg.matrix_rank(matrix.astype(np.float64))
        assert exact_rank(matrix.tolist()) == expected


def test_exact_matmul():
    left = exact_matrix([[1, 2], [3, 4]])
    right = exact_matrix([[Fraction(1, 2)], [1]])
    assert exact_matmul(left, right).tolist() == [[Fraction(5, 2)], [Fraction(11, 2)]]
    assert exact_matmul(exact_zeros(2, 0), exact_zeros(0, 3)).tolist() == [[0] * 3] * 2
    with pytest.raises(ValueError):
        exact_matmul(left, exact_zeros(3, 1))


def test_to_float():
    matrix = to_float(exact_matrix([[Fraction(1, 4), 2]]))
    assert matrix.dtype == np.float64
    assert matrix.tolist() == [[0.25, 2.0]]
    assert to_float(exact_zeros(3, 0)).shape == (3, 0)
