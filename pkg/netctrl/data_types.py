"""
``netctrl.data_types`` Module

This module defines type aliases used as type hints throughout netctrl, utilizing
the 'numpy' and 'numpy.typing' libraries and Python's ``fractions`` module.

Exact Types
-----------
- ``RATIONAL``: A type alias representing an exact scalar, either a Python ``int`` or a ``fractions.Fraction``.
- ``INT_VECTOR``: A tuple of Python integers, used for the parameterization vectors ``c_k``, ``r1_k``, ``r2_k``.
- ``EXACT_MATRIX``: A NumPy ``ndarray`` with ``dtype=object`` holding ``int``/``Fraction`` entries.

Floating Point Types
--------------------
- ``FLOAT``: A type alias representing either a NumPy floating-point number or a Python float.
- ``INT``: A type alias representing either a NumPy integer or a Python int.
- ``NUMERIC``: A type alias representing either an ``INT`` or a ``FLOAT``.
- ``FLOAT_ARRAY``: A NumPy ``ndarray`` of ``float64``.
- ``INT_MATRIX``: A NumPy ``ndarray`` of ``int64``, used for the transfer matrix and permutation matrices.

Graph Types
-----------
- ``EDGE``: An unordered node pair stored as ``(min(i, j), max(i, j))`` with 1-based node ids.
- ``ARC``: A directed pair ``(tail, head)`` of 1-based vertex ids.
- ``PARENT_MAP``: A mapping from a reached vertex to the vertex it was reached from.

Usage Example
-------------

.. code-block:: python

    from netctrl.data_types import EXACT_MATRIX, RATIONAL

    def trace(matrix: EXACT_MATRIX) -> RATIONAL:
        return sum(matrix[i, i] for i in range(matrix.shape[0]))

"""
# pylint: disable=C0103


from fractions import Fraction
from typing import Any, Dict, Tuple, Union

import numpy as np

# Exact scalars and containers
RATIONAL = Union[int, Fraction]
INT_VECTOR = Tuple[int, ...]
EXACT_MATRIX = np.ndarray[Any, np.dtype[np.object_]]

# Numeric types
FLOAT = Union[np.floating, float]
INT = Union[np.integer, int]
NUMERIC = Union[INT, FLOAT]
FLOAT_ARRAY = np.ndarray[Any, np.dtype[np.float64]]
INT_MATRIX = np.ndarray[Any, np.dtype[np.int64]]

# Graph types
EDGE = Tuple[int, int]
ARC = Tuple[int, int]
PARENT_MAP = Dict[int, int]
