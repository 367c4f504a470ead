"""The module provides exact linear algebra over the rationals: matrices are NumPy
arrays with ``dtype=object`` holding Python ``int`` and ``fractions.Fraction`` entries,
and ranks are computed by fraction-free (Bareiss) Gaussian elimination on integer rows,
so no rank decision ever depends on a floating point tolerance.
"""


import math
from fractions import Fraction
from typing import Any, List, Sequence, Union

import numpy as np

from netctrl.data_types import EXACT_MATRIX, RATIONAL


def _normalise(value: Any) -> RATIONAL:
    if isinstance(value, (bool, float, np.floating)):
        raise TypeError(
            f"Error: exact arithmetic requires int or Fraction, got {value!r}"
        )
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    return int(value)


def exact_matrix(
    rows: Union[Sequence[Sequence[Any]], EXACT_MATRIX], n_cols: int = 0
) -> EXACT_MATRIX:
    """Builds an exact matrix from nested sequences of ints/Fractions.

    :param rows: Matrix rows.
    :param n_cols: Number of columns, only used if ``rows`` is empty.

    :return: 2-D ``numpy.ndarray`` of ``dtype=object``.
    """
    if len(rows) == 0:
        return np.empty((0, n_cols), dtype=object)
    matrix = np.array(
        [[_normalise(value) for value in row] for row in rows], dtype=object
    )
    if matrix.ndim != 2:
        raise ValueError("Error: rows of an exact matrix must have equal length.")
    return matrix


def exact_zeros(n_rows: int, n_cols: int) -> EXACT_MATRIX:
    """Returns an ``n_rows x n_cols`` exact zero matrix."""
    matrix = np.empty((n_rows, n_cols), dtype=object)
    matrix.fill(0)
    return matrix


def exact_identity(size: int) -> EXACT_MATRIX:
    matrix = exact_zeros(size, size)
    for i in range(size):
        matrix[i, i] = 1
    return matrix


def integer_rows(
    matrix: Union[Sequence[Sequence[Any]], EXACT_MATRIX]
) -> List[List[int]]:
    """Scales every row by the least common multiple of its denominators.

    Row scaling by nonzero integers leaves the rank unchanged.
    """
    result = []
    for row in matrix:
        if all(type(value) is int for value in row):  # pylint: disable=C0123
            result.append(list(row))
            continue
        values = [Fraction(_normalise(value)) for value in row]
        scale = math.lcm(*(value.denominator for value in values)) if values else 1
        result.append([int(value * scale) for value in values])
    return result


def exact_rank(matrix: Union[Sequence[Sequence[Any]], EXACT_MATRIX]) -> int:
    """Computes the rank of an exact matrix over the rationals.

    Uses fraction-free Gaussian elimination: after each pivot step, the updated entries
    are exactly divisible by the previous pivot, which bounds the growth of intermediate
    integers to the size of the minors of the matrix.

    :param matrix: Matrix with int/Fraction entries.

    :return: Rank of ``matrix``.
    """
    rows = integer_rows(matrix)
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    previous_pivot = 1
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, n_rows):
            factor = rows[r][col]
            row = rows[r]
            for c in range(col, n_cols):
                row[c] = (pivot * row[c] - factor * rows[rank][c]) // previous_pivot
        previous_pivot = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def exact_matmul(left: EXACT_MATRIX, right: EXACT_MATRIX) -> EXACT_MATRIX:
    """Exact matrix product, also for empty operands."""
    if left.shape[1] != right.shape[0]:
        raise ValueError(
            f"Error: cannot multiply {left.shape} by {right.shape} matrices."
        )
    if 0 in left.shape or 0 in right.shape:
        return exact_zeros(left.shape[0], right.shape[1])
    product: EXACT_MATRIX = np.dot(left, right)
    return product


def to_float(matrix: EXACT_MATRIX) -> np.ndarray[Any, np.dtype[np.float64]]:
    """Converts an exact matrix to ``float64``."""
    return np.array(
        [[float(value) for value in row] for row in matrix], dtype=np.float64
    ).reshape(matrix.shape)
