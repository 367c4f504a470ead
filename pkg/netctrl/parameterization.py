"""The module provides the linear parameterization of the follower subsystem of a
consensus network,

    ``A(w) = sum_k c_k w_k r1_k``,    ``B(w) = sum_k c_k w_k r2_k``,

where every weight symbol ``w_k`` belongs to one edge of the communication topology.
It also assembles concrete (exact) matrices for a given ``WeightAssignment``, the
Laplacian of the whole topology and the aggregated whole-network model, and derives the
flow graph of the parameterized pair.

Sign conventions of a triple ``(c_k, r1_k, r2_k)``:

- follower-follower edge between follower columns ``i < j``:
  ``c_k(i) = -1, c_k(j) = +1, r1_k(i) = +1, r1_k(j) = -1, r2_k = 0``,
- leader-follower edge with follower column ``i`` and leader column ``p``:
  ``c_k(i) = +1, r1_k(i) = -1, r2_k(p) = +1``.
"""


import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from netctrl.data_types import EXACT_MATRIX, INT_VECTOR, RATIONAL
from netctrl.exceptions import DimensionMismatchError, InvalidWeightError
from netctrl.linear_algebra import exact_zeros
from netctrl.topology import CommunicationTopology
from netctrl.type_utilities import type_validation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParameterTriple:
    """The vectors ``(c_k, r1_k, r2_k)`` attached to one weight symbol ``w_k``."""

    c: INT_VECTOR
    r1: INT_VECTOR
    r2: INT_VECTOR

    @property
    def r(self) -> INT_VECTOR:
        """The row ``[r1_k | r2_k]``."""
        return self.r1 + self.r2

    @property
    def is_leader_edge(self) -> bool:
        return any(self.r2)


@dataclass(frozen=True)
class LinearParameterization:
    """Linear parameterization of a pair ``(A(w), B(w))``.

    Attributes:
        - ``n`` (``int``): Number of states (followers).
        - ``m`` (``int``): Number of inputs (leaders).
        - ``triples`` (``Tuple[ParameterTriple, ...]``): One triple per weight symbol, in
          weight-symbol order.
        - ``follower_ids`` (``Tuple[int, ...]``): Node id of each state column.
        - ``leader_ids`` (``Tuple[int, ...]``): Node id of each input column.
    """

    # Attributes:
    n: int
    m: int
    triples: Tuple[ParameterTriple, ...]
    follower_ids: Tuple[int, ...]
    leader_ids: Tuple[int, ...]

    @property
    def sigma(self) -> int:
        return len(self.triples)

    @property
    def follower_index(self) -> Dict[int, int]:
        """Maps a follower node id to its state column ``1..n``."""
        return {node: col for col, node in enumerate(self.follower_ids, start=1)}

    @property
    def leader_index(self) -> Dict[int, int]:
        """Maps a leader node id to its input column ``1..m``."""
        return {node: col for col, node in enumerate(self.leader_ids, start=1)}

    @classmethod
    def from_triples(
        cls,
        c: Sequence[Sequence[int]],
        r1: Sequence[Sequence[int]],
        r2: Sequence[Sequence[int]],
    ) -> "LinearParameterization":
        """Builds a parameterization of an arbitrary pair from its vectors.

        States are labelled ``1..n`` and inputs ``n+1..n+m``.

        :param c: The column vectors ``c_k`` (each of length ``n``).
        :param r1: The row vectors ``r1_k`` (each of length ``n``).
        :param r2: The row vectors ``r2_k`` (each of length ``m``).
        """
        if not len(c) == len(r1) == len(r2):
            raise DimensionMismatchError(
                "c, r1 and r2 must provide one vector per weight symbol"
            )
        if not c:
            raise DimensionMismatchError("at least one weight symbol is required")
        n, m = len(c[0]), len(r2[0])
        for c_k, r1_k, r2_k in zip(c, r1, r2):
            if len(c_k) != n or len(r1_k) != n or len(r2_k) != m:
                raise DimensionMismatchError(
                    f"vectors must have lengths c:{n}, r1:{n}, r2:{m}"
                )
        triples = tuple(
            ParameterTriple(tuple(c_k), tuple(r1_k), tuple(r2_k))
            for c_k, r1_k, r2_k in zip(c, r1, r2)
        )
        return cls(
            n=n,
            m=m,
            triples=triples,
            follower_ids=tuple(range(1, n + 1)),
            leader_ids=tuple(range(n + 1, n + m + 1)),
        )


@dataclass(frozen=True)
class WeightAssignment:
    """Concrete values ``w = [w_1 ... w_sigma]`` of the weight symbols, all nonzero
    and exact (``int`` or ``Fraction``)."""

    values: Tuple[RATIONAL, ...]

    def __post_init__(self) -> None:
        type_validation(weight_values=self.values)
        if any(value == 0 for value in self.values):
            raise InvalidWeightError("Error: every weight must be nonzero.")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_positive(self) -> bool:
        return all(value > 0 for value in self.values)

    @classmethod
    def ones(cls, sigma: int) -> "WeightAssignment":
        return cls(tuple(1 for _ in range(sigma)))

    @classmethod
    def from_strings(cls, tokens: Iterable[str]) -> "WeightAssignment":
        """Parses exact weights such as ``"2"``, ``"-3"`` or ``"5/2"``."""
        values: List[RATIONAL] = []
        for token in tokens:
            try:
                value = Fraction(token.strip())
            except ValueError as exc:
                raise InvalidWeightError(f"Error: invalid weight {token!r}.") from exc
            values.append(value.numerator if value.denominator == 1 else value)
        return cls(tuple(values))

    @classmethod
    def random(
        cls, sigma: int, rng: np.random.Generator, low: int = 1, high: int = 10**6
    ) -> "WeightAssignment":
        """Draws ``sigma`` integer weights uniformly from ``[low, high]`` (0 excluded)."""
        if low <= 0 <= high:
            raise InvalidWeightError("Error: the weight range must not contain 0.")
        draws = rng.integers(low, high, size=sigma, endpoint=True)
        return cls(tuple(int(value) for value in draws))


@dataclass(frozen=True)
class FlowGraph:
    """Flow graph of a parameterized pair: a digraph on ``n + m`` vertices with an arc
    ``v_j -> v_i`` labelled ``k`` whenever ``w_k`` enters entry ``(i, j)`` of ``[A | B]``.

    Attributes:
        - ``n`` (``int``): Number of state vertices ``v_1..v_n``.
        - ``m`` (``int``): Number of input vertices ``v_{n+1}..v_{n+m}``.
        - ``edges`` (``Tuple[Tuple[int, int, int], ...]``): ``(tail, head, k)`` triples,
          sorted.
    """

    n: int
    m: int
    edges: Tuple[Tuple[int, int, int], ...]

    @property
    def vertex_count(self) -> int:
        return self.n + self.m

    @property
    def input_vertices(self) -> Tuple[int, ...]:
        return tuple(range(self.n + 1, self.n + self.m + 1))

    def arcs(self) -> List[Tuple[int, int]]:
        """Distinct ``(tail, head)`` pairs, weight labels collapsed."""
        return sorted({(tail, head) for tail, head, _ in self.edges})


def build_parameterization(topology: CommunicationTopology) -> LinearParameterization:
    """Builds the linear parameterization of the follower subsystem ``A = -L_ff``,
    ``B`` = follower/leader block of ``-L``.

    Follower columns are ordered by ascending node id, leader columns likewise; triples
    follow the weight-symbol order of the topology, i.e. ascending ``(min, max)`` edge
    order, wherever the leader edges fall in it. The star with leader 4 attached to agent
    1 and agents 2, 3 hanging off agent 1 therefore gets ``w1 = {1, 2}``,
    ``w2 = {1, 3}``, ``w3 = {1, 4}``. A numbering that lists the leader edge first only
    permutes the triples (and the rows and columns of the transfer matrix); build it with
    ``LinearParameterization.from_triples``.

    :param topology: A validated communication topology.

    :return: The ``LinearParameterization``.
    """
    followers = topology.follower_ids
    leaders = topology.leader_ids
    f_col = {node: col for col, node in enumerate(followers)}
    l_col = {node: col for col, node in enumerate(leaders)}
    n, m = len(followers), len(leaders)

    triples = []
    for i, j in topology.edges:
        c = [0] * n
        r1 = [0] * n
        r2 = [0] * m
        if i in f_col and j in f_col:
            lo, hi = sorted((f_col[i], f_col[j]))
            c[lo], c[hi] = -1, 1
            r1[lo], r1[hi] = 1, -1
        else:
            follower, leader = (i, j) if i in f_col else (j, i)
            c[f_col[follower]] = 1
            r1[f_col[follower]] = -1
            r2[l_col[leader]] = 1
        triples.append(ParameterTriple(tuple(c), tuple(r1), tuple(r2)))

    param = LinearParameterization(
        n=n,
        m=m,
        triples=tuple(triples),
        follower_ids=followers,
        leader_ids=leaders,
    )
    logger.debug("parameterization with n=%d, m=%d, sigma=%d", n, m, param.sigma)
    return param


def _check_weights(param: LinearParameterization, w: WeightAssignment) -> None:
    if len(w) != param.sigma:
        raise DimensionMismatchError(
            f"expected {param.sigma} weights, got {len(w)}"
        )


def assemble_matrices(
    param: LinearParameterization, w: WeightAssignment
) -> Tuple[EXACT_MATRIX, EXACT_MATRIX]:
    """Assembles ``A = sum_k c_k w_k r1_k`` and ``B = sum_k c_k w_k r2_k`` exactly.

    :param param: The linear parameterization.
    :param w: One nonzero weight per weight symbol.

    :return: Tuple ``(A, B)`` of exact ``n x n`` and ``n x m`` matrices.

    Raises:
        ``DimensionMismatchError``: If ``w`` does not have ``sigma`` entries.
    """
    _check_weights(param, w)
    a_mat = exact_zeros(param.n, param.n)
    b_mat = exact_zeros(param.n, param.m)
    for triple, weight in zip(param.triples, w.values):
        for i, c_i in enumerate(triple.c):
            if c_i == 0:
                continue
            for j, r_j in enumerate(triple.r1):
                if r_j:
                    a_mat[i, j] += c_i * weight * r_j
            for p, r_p in enumerate(triple.r2):
                if r_p:
                    b_mat[i, p] += c_i * weight * r_p
    return a_mat, b_mat


def flow_graph(param: LinearParameterization) -> FlowGraph:
    """Derives the flow graph of a parameterized pair.

    For each weight symbol ``k``, a nonzero entry ``i`` of ``c_k`` is an arc into
    ``v_i`` and a nonzero entry ``j`` of ``[r1_k | r2_k]`` an arc out of ``v_j``, so
    every such pair yields the arc ``(v_j -> v_i, k)``. Diagonal terms give self-loops.
    """
    edges = set()
    for k, triple in enumerate(param.triples, start=1):
        heads = [i for i, value in enumerate(triple.c, start=1) if value]
        tails = [j for j, value in enumerate(triple.r, start=1) if value]
        edges.update((tail, head, k) for head in heads for tail in tails)
    return FlowGraph(n=param.n, m=param.m, edges=tuple(sorted(edges)))


def laplacian_matrix(
    topology: CommunicationTopology, w: WeightAssignment
) -> EXACT_MATRIX:
    """Weighted Laplacian of the whole topology, rows/columns in node-id order:
    ``L(i, i) = sum of incident weights``, ``L(i, j) = -w_ij`` for neighbours."""
    if len(w) != topology.sigma:
        raise DimensionMismatchError(
            f"expected {topology.sigma} weights, got {len(w)}"
        )
    lap = exact_zeros(topology.node_count, topology.node_count)
    for (i, j), weight in zip(topology.edges, w.values):
        lap[i - 1, i - 1] += weight
        lap[j - 1, j - 1] += weight
        lap[i - 1, j - 1] -= weight
        lap[j - 1, i - 1] -= weight
    return lap


def aggregated_matrices(
    topology: CommunicationTopology, w: WeightAssignment
) -> Tuple[EXACT_MATRIX, EXACT_MATRIX]:
    """Whole-network model ``dx/dt = F x + G u*`` in node-id order.

    Follower rows of ``F`` are the rows of ``-L``, leader rows are zero; ``G`` maps
    the ``l`` leader velocities onto the leader rows.

    :return: Tuple ``(F, G)`` of exact ``N x N`` and ``N x l`` matrices.
    """
    f_mat = -laplacian_matrix(topology, w)
    g_mat = exact_zeros(topology.node_count, topology.leader_count)
    for col, leader in enumerate(topology.leader_ids):
        f_mat[leader - 1, :] = 0
        g_mat[leader - 1, col] = 1
    return f_mat, g_mat
