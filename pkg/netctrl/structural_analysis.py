"""This module decides structural controllability of a leader-follower consensus
network along two routes:

- the *theorem shortcut*: a network with one leader is structurally controllable iff its
  topology is connected, and a network with several leaders iff every connected
  component contains a leader,
- the *certificate*: the linearly parameterized pair ``(A(w), B(w))`` is structurally
  controllable iff

  .. code-block:: text

      min over s of (rank C_s + rank R_{q-s}) = n

  and the transfer graph has a spanning tree rooted at its input node ``gamma_{sigma+1}``.

It further provides the graph constructions behind the certificate: the transfer matrix
and graph, irreducibility of the flow graph, and the line and quotient graphs of the
flow graph, whose quotient is isomorphic to the transfer graph without its input node.
"""


import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import (
    AbstractSet,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Set,
    Tuple,
    Union,
)

import networkx as nx
import numpy as np

from netctrl.data_types import ARC, EXACT_MATRIX, INT_MATRIX, PARENT_MAP, RATIONAL
from netctrl.exceptions import SubsetIndexError
from netctrl.linear_algebra import exact_matrix, exact_rank
from netctrl.parameterization import (
    FlowGraph,
    LinearParameterization,
    WeightAssignment,
    flow_graph,
)
from netctrl.topology import (
    CommunicationTopology,
    ComponentPartition,
    connected_components,
    is_connected,
    is_leader_follower_connected,
)
from netctrl.type_utilities import type_validation

logger = logging.getLogger(__name__)

DEFAULT_RANK_CAP = 20


class Decision(enum.Enum):
    """Outcome of a structural controllability test."""

    STRUCTURALLY_CONTROLLABLE = "StructurallyControllable"
    NOT_STRUCTURALLY_CONTROLLABLE = "NotStructurallyControllable"
    # truncated min-rank search whose bound reached n
    INCONCLUSIVE = "Inconclusive"


class Route(enum.Enum):
    """The route a verdict was obtained by."""

    THEOREM_SHORTCUT = "TheoremShortcut"
    CERTIFICATE = "Certificate"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class TransferMatrix:
    """The ``sigma x (sigma + 1)`` integer matrix ``T`` with ``T(i, j) = r1_i . c_j``
    and the last column taken from ``r2_i``."""

    entries: INT_MATRIX

    @property
    def sigma(self) -> int:
        return int(self.entries.shape[0])

    def to_list(self) -> List[List[int]]:
        return [[int(value) for value in row] for row in self.entries]


@dataclass(frozen=True)
class TransferGraph:
    """Digraph on ``gamma_1..gamma_{sigma+1}`` with an arc ``gamma_j -> gamma_i`` for
    every nonzero ``T(i, j)``.

    Attributes:
        - ``vertex_count`` (``int``): ``sigma + 1``.
        - ``edges`` (``Tuple[ARC, ...]``): ``(tail, head)`` pairs, sorted.
        - ``values`` (``Tuple[int, ...]``): The entry ``T(head, tail)`` of each arc.
    """

    vertex_count: int
    edges: Tuple[ARC, ...]
    values: Tuple[int, ...]

    @property
    def input_vertex(self) -> int:
        return self.vertex_count

    def weight_arcs(self) -> Set[ARC]:
        """Arcs among ``gamma_1..gamma_sigma``, the input node removed."""
        return {
            (tail, head)
            for tail, head in self.edges
            if tail != self.input_vertex and head != self.input_vertex
        }

    def to_networkx(self) -> nx.DiGraph:
        return _digraph(range(1, self.vertex_count + 1), self.edges)


@dataclass(frozen=True)
class LineGraph:
    """Line graph of a flow graph.

    A vertex ``(i, j, k)`` is the flow-graph arc ``v_i -> v_j`` carrying ``w_k``; there is
    an arc ``(i, j, k) -> (j, j', k')`` whenever the second flow arc leaves the head of
    the first.
    """

    vertices: Tuple[Tuple[int, int, int], ...]
    edges: Tuple[Tuple[Tuple[int, int, int], Tuple[int, int, int]], ...]


@dataclass(frozen=True)
class QuotientGraph:
    """Line graph collapsed by weight symbol: vertex ``k`` stands for the class
    ``H_k = {(i, j, k)}`` and ``k -> k'`` whenever a line-graph arc joins ``H_k`` to
    ``H_k'``."""

    vertex_count: int
    edges: Tuple[ARC, ...]


class SpanningForest(NamedTuple):
    """Result of a reachability test from a root set."""

    spans: bool
    unreachable: Tuple[int, ...]
    parents: PARENT_MAP


class SubsetSlice(NamedTuple):
    """The matrices ``C_s`` (``n x |s|``) and ``R_s`` (``|s| x (n + m)``) of a weight
    subset ``s``, and the diagonal of ``W_s``."""

    c_s: EXACT_MATRIX
    r_s: EXACT_MATRIX
    w_s: Tuple[Union[str, RATIONAL], ...]


@dataclass(frozen=True)
class MinRankResult:
    """Minimum of ``rank C_s + rank R_{q-s}`` over the searched subsets ``s``.

    Attributes:
        - ``value`` (``int``): The minimum found.
        - ``witness_subset`` (``Tuple[int, ...]``): A subset attaining it, the
          lexicographically smallest one among all minimizers.
        - ``rank_c`` / ``rank_r`` (``int``): ``rank C_s`` and ``rank R_{q-s}`` at the witness.
        - ``exhaustive`` (``bool``): ``False`` if only a subset of ``2**sigma`` was searched,
          in which case ``value`` is an upper bound.
        - ``subsets_evaluated`` (``int``): Number of subsets searched.
    """

    value: int
    witness_subset: Tuple[int, ...]
    rank_c: int
    rank_r: int
    exhaustive: bool
    subsets_evaluated: int


@dataclass(frozen=True)
class Verdict:
    """Decision of one route together with its evidence.

    Only the evidence of the route taken is set: the component partition for the theorem
    shortcut, the min-rank result and the spanning tree of the transfer graph for the
    certificate, the witness weights for the oracle.
    """

    decision: Decision
    route: Route
    components: Optional[ComponentPartition] = None
    min_rank: Optional[MinRankResult] = None
    spanning_tree: Optional[PARENT_MAP] = None
    unreachable: Tuple[int, ...] = field(default_factory=tuple)
    witness_weights: Optional[WeightAssignment] = None

    @property
    def is_controllable(self) -> bool:
        return self.decision is Decision.STRUCTURALLY_CONTROLLABLE


def _digraph(vertices: Iterable[int], arcs: Iterable[ARC]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(arcs)
    return graph


def transfer_matrix(param: LinearParameterization) -> TransferMatrix:
    """Computes the transfer matrix ``T`` of a parameterization.

    ``T(i, j) = r1_i . c_j`` for ``i, j`` in ``1..sigma``; ``T(i, sigma + 1)`` is the
    nonzero entry of ``r2_i`` (0 if ``w_i`` does not enter ``B``).

    :param param: The linear parameterization.

    :return: ``TransferMatrix`` of shape ``sigma x (sigma + 1)``.
    """
    sigma = param.sigma
    r1_rows = np.array([t.r1 for t in param.triples], dtype=np.int64).reshape(
        sigma, param.n
    )
    c_cols = np.array([t.c for t in param.triples], dtype=np.int64).reshape(
        sigma, param.n
    )
    last = np.array(
        [next((value for value in t.r2 if value), 0) for t in param.triples],
        dtype=np.int64,
    ).reshape(sigma, 1)
    entries = np.hstack([r1_rows @ c_cols.T, last])
    return TransferMatrix(entries=entries)


def transfer_graph(tm: TransferMatrix) -> TransferGraph:
    """Builds the transfer graph: an arc ``gamma_j -> gamma_i`` whenever ``T(i, j)`` is
    nonzero, self-loops included."""
    arcs = sorted(
        (int(j) + 1, int(i) + 1) for i, j in zip(*np.nonzero(tm.entries))
    )
    values = tuple(int(tm.entries[head - 1, tail - 1]) for tail, head in arcs)
    return TransferGraph(vertex_count=tm.sigma + 1, edges=tuple(arcs), values=values)


def has_spanning_forest_rooted_at(
    graph: nx.DiGraph, roots: AbstractSet[int]
) -> SpanningForest:
    """Tests whether every vertex of ``graph`` is reachable from one of ``roots``.

    Breadth-first search from the roots in ascending order; the first search to reach a
    vertex fixes its parent.

    :param graph: A directed graph.
    :param roots: Nonempty set of vertices of ``graph``.

    :return: ``SpanningForest(spans, unreachable, parents)``, where ``parents`` maps each
        reached non-root vertex to the vertex it was reached from.
    """
    type_validation(roots=set(roots))
    if not roots:
        raise ValueError("Error: at least one root is required.")
    missing = set(roots).difference(graph.nodes)
    if missing:
        raise ValueError(
            f"Error: roots {sorted(missing)} are not vertices of the graph."
        )
    parents: PARENT_MAP = {}
    reached = set(roots)
    for root in sorted(roots):
        for tail, head in nx.bfs_edges(graph, root, sort_neighbors=sorted):
            if head not in reached:
                reached.add(head)
                parents[head] = tail
    unreachable = tuple(sorted(set(graph.nodes).difference(reached)))
    return SpanningForest(
        spans=not unreachable, unreachable=unreachable, parents=parents
    )


def is_irreducible(param: LinearParameterization) -> Tuple[bool, Tuple[int, ...]]:
    """Tests irreducibility of ``(A, B)``: the flow graph must have a spanning forest
    rooted at the input vertices.

    :return: Tuple ``(irreducible, unreachable)`` where ``unreachable`` lists the node ids
        of the followers no input reaches.
    """
    if param.m == 0:
        return False, param.follower_ids
    fg = flow_graph(param)
    graph = _digraph(range(1, fg.vertex_count + 1), fg.arcs())
    forest = has_spanning_forest_rooted_at(graph, set(fg.input_vertices))
    unreachable = tuple(param.follower_ids[v - 1] for v in forest.unreachable)
    return forest.spans, unreachable


def irreducible_permutation(
    param: LinearParameterization, unreachable: Iterable[int]
) -> Tuple[INT_MATRIX, int]:
    """Builds the permutation matrix ``Q`` that moves the ``unreachable`` followers to
    the top, so that ``Q A Q^T`` has a zero upper-right block and ``Q B`` a zero top
    block of height ``h``.

    :param param: The linear parameterization.
    :param unreachable: Follower node ids, as returned by ``is_irreducible``.

    :return: Tuple ``(Q, h)``.
    """
    index = param.follower_index
    top = sorted(index[node] - 1 for node in unreachable)
    bottom = [col for col in range(param.n) if col not in top]
    q_mat = np.zeros((param.n, param.n), dtype=np.int64)
    for row, col in enumerate(top + bottom):
        q_mat[row, col] = 1
    return q_mat, len(top)


def line_graph(fg: FlowGraph) -> LineGraph:
    """Builds the line graph of a flow graph. Parallel arcs with different weight
    symbols are distinct vertices."""
    multigraph = nx.MultiDiGraph()
    multigraph.add_nodes_from(range(1, fg.vertex_count + 1))
    for tail, head, k in fg.edges:
        multigraph.add_edge(tail, head, key=k)
    lg = nx.line_graph(multigraph)
    return LineGraph(
        vertices=tuple(sorted(lg.nodes)),
        edges=tuple(sorted(lg.edges(keys=False))),
    )


def quotient_graph(lg: LineGraph, sigma: int) -> QuotientGraph:
    """Collapses the line graph by weight symbol.

    :param lg: The line graph.
    :param sigma: Number of weight symbols.
    """
    type_validation(sigma=sigma)
    if any(not 1 <= k <= sigma for _, _, k in lg.vertices):
        raise SubsetIndexError(f"line graph carries weight ids outside 1..{sigma}")
    arcs = sorted({(first[2], second[2]) for first, second in lg.edges})
    return QuotientGraph(vertex_count=sigma, edges=tuple(arcs))


def _check_subset(
    param: LinearParameterization, subset: Iterable[int]
) -> Tuple[int, ...]:
    chosen = tuple(sorted(set(subset)))
    type_validation(subset=chosen)
    outside = [k for k in chosen if not 1 <= k <= param.sigma]
    if outside:
        raise SubsetIndexError(
            f"weight indices {outside} lie outside 1..{param.sigma}"
        )
    return chosen


def slice_subset(
    param: LinearParameterization,
    subset: Iterable[int],
    w: Optional[WeightAssignment] = None,
) -> SubsetSlice:
    """Selects the columns ``c_k`` and rows ``[r1_k | r2_k]`` of the weight symbols in
    ``subset``, in ascending order.

    :param param: The linear parameterization.
    :param subset: Weight indices, a subset of ``1..sigma``.
    :param w: (optional) Weights; without them ``w_s`` lists the symbols ``"w<k>"``.

    :return: ``SubsetSlice(c_s, r_s, w_s)``.

    Raises:
        ``SubsetIndexError``: If an index lies outside ``1..sigma``.
    """
    chosen = _check_subset(param, subset)
    triples = [param.triples[k - 1] for k in chosen]
    c_s = exact_matrix([t.c for t in triples], n_cols=param.n).T.reshape(
        param.n, len(chosen)
    )
    r_s = exact_matrix([t.r for t in triples], n_cols=param.n + param.m)
    if w is None:
        w_s: Tuple[Union[str, RATIONAL], ...] = tuple(f"w{k}" for k in chosen)
    else:
        w_s = tuple(w.values[k - 1] for k in chosen)
    return SubsetSlice(c_s=c_s, r_s=r_s, w_s=w_s)


def _rank_pair(
    param: LinearParameterization, subset: Tuple[int, ...]
) -> Tuple[int, int]:
    chosen = set(subset)
    # rank C_s computed on its transpose
    rank_c = exact_rank([param.triples[k - 1].c for k in subset])
    rank_r = exact_rank(
        [t.r for k, t in enumerate(param.triples, start=1) if k not in chosen]
    )
    return rank_c, rank_r


def _candidate_subsets(sigma: int, exhaustive: bool) -> Iterable[Tuple[int, ...]]:
    weights = tuple(range(1, sigma + 1))
    if exhaustive:
        for size in range(sigma + 1):
            yield from itertools.combinations(weights, size)
        return
    yield ()
    yield weights
    for k in weights:
        yield (k,)
    for k in weights:
        yield tuple(o for o in weights if o != k)


def min_rank_condition(
    param: LinearParameterization, cap: int = DEFAULT_RANK_CAP
) -> MinRankResult:
    """Minimizes ``rank C_s + rank R_{q-s}`` over subsets ``s`` of ``q = {1..sigma}``,
    ``s = {}`` and ``s = q`` included.

    All ``2**sigma`` subsets are searched if ``sigma <= cap``. Otherwise only ``{}``,
    ``q``, the singletons and their complements are, and the result is flagged as not
    exhaustive. Ranks are exact.

    :param param: The linear parameterization.
    :param cap: Largest ``sigma`` for which the search is exhaustive.

    :return: ``MinRankResult``; ties are broken towards the lexicographically smallest
        subset.
    """
    type_validation(cap=cap)
    if cap < 0:
        raise ValueError("Error: cap must not be negative.")
    exhaustive = param.sigma <= cap
    best: Optional[Tuple[int, Tuple[int, ...], int, int]] = None
    evaluated = 0
    for subset in _candidate_subsets(param.sigma, exhaustive):
        evaluated += 1
        rank_c, rank_r = _rank_pair(param, subset)
        candidate = (rank_c + rank_r, subset, rank_c, rank_r)
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    assert best is not None
    if not exhaustive:
        logger.warning(
            "sigma=%d exceeds the rank cap %d, min-rank search truncated to %d subsets",
            param.sigma,
            cap,
            evaluated,
        )
    logger.debug("min-rank value %d over %d subsets", best[0], evaluated)
    return MinRankResult(
        value=best[0],
        witness_subset=best[1],
        rank_c=best[2],
        rank_r=best[3],
        exhaustive=exhaustive,
        subsets_evaluated=evaluated,
    )


def certificate_decision(
    param: LinearParameterization, cap: int = DEFAULT_RANK_CAP
) -> Verdict:
    """Decides structural controllability by the rank condition and the spanning tree of
    the transfer graph rooted at ``gamma_{sigma+1}``.

    A truncated search that found a subset with ``value < n`` still proves the pair is
    not structurally controllable; one whose bound reached ``n`` is ``INCONCLUSIVE``.

    :param param: The linear parameterization.
    :param cap: See ``min_rank_condition``.

    :return: ``Verdict`` with route ``CERTIFICATE``.
    """
    min_rank = min_rank_condition(param, cap)
    tg = transfer_graph(transfer_matrix(param))
    forest = has_spanning_forest_rooted_at(tg.to_networkx(), {tg.input_vertex})

    if min_rank.value < param.n or not forest.spans:
        decision = Decision.NOT_STRUCTURALLY_CONTROLLABLE
    elif min_rank.exhaustive:
        decision = Decision.STRUCTURALLY_CONTROLLABLE
    else:
        decision = Decision.INCONCLUSIVE
        logger.warning(
            "certificate inconclusive: truncated min-rank bound %d equals n",
            min_rank.value,
        )
    logger.info("certificate verdict: %s", decision.value)
    return Verdict(
        decision=decision,
        route=Route.CERTIFICATE,
        min_rank=min_rank,
        spanning_tree=forest.parents,
        unreachable=forest.unreachable,
    )


def theorem_decision(topology: CommunicationTopology) -> Verdict:
    """Decides structural controllability from the topology alone: connectivity for a
    single leader, leader-follower connectivity for several leaders.

    :return: ``Verdict`` with route ``THEOREM_SHORTCUT`` and the component partition.
    """
    if topology.leader_count == 1:
        controllable = is_connected(topology)
    else:
        controllable = is_leader_follower_connected(topology)
    decision = (
        Decision.STRUCTURALLY_CONTROLLABLE
        if controllable
        else Decision.NOT_STRUCTURALLY_CONTROLLABLE
    )
    logger.info("theorem verdict: %s", decision.value)
    return Verdict(
        decision=decision,
        route=Route.THEOREM_SHORTCUT,
        components=connected_components(topology),
    )


def check_lemma2(param: LinearParameterization) -> bool:
    """Checks that irreducibility of ``(A, B)`` implies a spanning tree of the transfer
    graph rooted at ``gamma_{sigma+1}``. Vacuously ``True`` for reducible pairs."""
    irreducible, _ = is_irreducible(param)
    if not irreducible:
        return True
    tg = transfer_graph(transfer_matrix(param))
    return has_spanning_forest_rooted_at(tg.to_networkx(), {tg.input_vertex}).spans
