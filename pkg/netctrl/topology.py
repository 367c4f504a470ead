"""This module is the entry point of netctrl. It provides

- a public class ``CommunicationTopology``, an undirected graph of ``N`` agents in which a
  distinguished subset of agents act as *leaders* and the remaining agents are *followers*
  obeying the consensus law,
- a public class ``ComponentPartition`` holding the connected components of a topology,
- functions to parse, render and read topologies in the line-oriented text format

  .. code-block:: text

      # the star of four agents led by agent 4
      nodes 4
      leaders 4
      edge 1 4
      edge 1 2
      edge 1 3

- the graph-theoretic tests ``is_connected`` and ``is_leader_follower_connected``, and
- generators of random and exhaustively enumerated topologies used by the property suites.

Node ids are 1-based everywhere. Each edge is mapped to a weight symbol ``w_k``: edges are
sorted by ``(min(i, j), max(i, j))`` and numbered ``k = 1..sigma`` in that order.
"""

import itertools
import logging
import pathlib
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from netctrl.data_types import EDGE
from netctrl.exceptions import (
    AllLeaderError,
    DuplicateEdgeError,
    LeaderEdgeError,
    NodeIndexError,
    NoLeaderError,
    SelfLoopError,
    TopologySyntaxError,
)
from netctrl.type_utilities import type_validation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommunicationTopology:
    """Undirected communication graph with a distinguished leader subset.

    Instances are created through :func:`make_topology` or :func:`parse_topology`,
    which validate the invariants and bring the edges into weight-symbol order.

    Attributes:
        - ``node_count`` (``int``): Number of agents ``N``.
        - ``leader_ids`` (``Tuple[int, ...]``): Leader node ids, ascending.
        - ``edges`` (``Tuple[EDGE, ...]``): Edges as ``(min, max)`` pairs; the position of an
          edge (1-based) is its weight symbol ``k``.
    """

    # Attributes:
    node_count: int
    leader_ids: Tuple[int, ...]
    edges: Tuple[EDGE, ...]

    @property
    def sigma(self) -> int:
        """Number of weight symbols, equal to the number of edges."""
        return len(self.edges)

    @property
    def leader_count(self) -> int:
        return len(self.leader_ids)

    @property
    def follower_ids(self) -> Tuple[int, ...]:
        """Follower node ids, ascending."""
        leaders = set(self.leader_ids)
        return tuple(v for v in range(1, self.node_count + 1) if v not in leaders)

    @property
    def weight_ids(self) -> Dict[EDGE, int]:
        """Maps each edge to its weight symbol index ``k`` in ``1..sigma``."""
        return {edge: k for k, edge in enumerate(self.edges, start=1)}

    def is_leader(self, node: int) -> bool:
        return node in self.leader_ids

    def edge_id(self, i: int, j: int) -> int:
        """Returns the weight symbol of the edge ``{i, j}``.

        :param i: One end of the edge.
        :param j: The other end of the edge.

        :return: ``k`` such that the edge carries ``w_k``.
        """
        key = (min(i, j), max(i, j))
        try:
            return self.weight_ids[key]
        except KeyError as exc:
            raise KeyError(f"no edge between {i} and {j}") from exc

    def to_networkx(self) -> nx.Graph:
        """Returns the topology as an undirected ``networkx.Graph``.

        Nodes carry a boolean ``leader`` attribute, edges a ``weight_id`` attribute.
        """
        graph = nx.Graph()
        for node in range(1, self.node_count + 1):
            graph.add_node(node, leader=self.is_leader(node))
        for k, (i, j) in enumerate(self.edges, start=1):
            graph.add_edge(i, j, weight_id=k)
        return graph

    def __str__(self) -> str:
        return (
            f"Communication topology with {self.node_count} nodes, "
            f"{self.leader_count} leader(s) and {self.sigma} edge(s)."
        )


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components of a topology.

    Components are sorted by their smallest member, and each component lists its
    members ascending.
    """

    components: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.components)

    def component_of(self, node: int) -> Tuple[int, ...]:
        """Returns the component containing ``node``."""
        for component in self.components:
            if node in component:
                return component
        raise KeyError(f"node {node} is not covered by the partition")


def make_topology(
    node_count: int,
    leader_ids: Iterable[int],
    edges: Iterable[Tuple[int, int]],
    line_numbers: Optional[Dict[int, int]] = None,
) -> CommunicationTopology:
    """Validates the ingredients of a topology and returns it in canonical form.

    :param node_count: Number of agents ``N``.
    :param leader_ids: Leader node ids (1-based).
    :param edges: Node pairs, in any order and orientation.
    :param line_numbers: (optional) Maps the position of an edge in ``edges`` to the
         line it was read from, so that validation errors can point at it.

    :return: A validated ``CommunicationTopology``.

    Raises:
        ``NodeIndexError``, ``SelfLoopError``, ``DuplicateEdgeError``, ``LeaderEdgeError``,
        ``NoLeaderError``, ``AllLeaderError``
    """
    line_numbers = line_numbers or {}
    leaders = sorted(set(leader_ids))
    type_validation(node_count=node_count, leader_ids=leaders)
    if node_count < 1:
        raise NodeIndexError(f"node count must be positive, got {node_count}")
    if not leaders:
        raise NoLeaderError("at least one leader is required")
    for leader in leaders:
        if not 1 <= leader <= node_count:
            raise NodeIndexError(f"leader id {leader} outside [1, {node_count}]")
    if len(leaders) >= node_count:
        raise AllLeaderError(
            f"all {node_count} nodes are leaders, at least one follower is required"
        )

    leader_set = set(leaders)
    seen: Dict[EDGE, int] = {}
    for position, (i, j) in enumerate(edges):
        line = line_numbers.get(position)
        for node in (i, j):
            if not 1 <= node <= node_count:
                raise NodeIndexError(f"node id {node} outside [1, {node_count}]", line)
        if i == j:
            raise SelfLoopError(f"self-loop on node {i}", line)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdgeError(f"edge {key[0]}-{key[1]} appears twice", line)
        if i in leader_set and j in leader_set:
            raise LeaderEdgeError(f"edge {key[0]}-{key[1]} joins two leaders", line)
        seen[key] = position

    return CommunicationTopology(
        node_count=node_count,
        leader_ids=tuple(leaders),
        edges=tuple(sorted(seen)),
    )


def _parse_ints(tokens: Sequence[str], line_number: int) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError as exc:
        raise TopologySyntaxError(
            f"expected integers, got {' '.join(tokens)!r}", line_number
        ) from exc


def parse_topology(text: str) -> CommunicationTopology:
    """Parses a topology document.

    The format is line-oriented, ``#`` starts a comment and blank lines are ignored:

    .. code-block:: text

        nodes <N>
        leaders <id> [<id> ...]
        edge <i> <j>

    :param text: The document.

    :return: A validated ``CommunicationTopology``.

    Raises:
        ``TopologySyntaxError``: Malformed line (the line number is reported).
        ``TopologyValidationError``: One of its subclasses for invalid topologies.
    """
    # Type validations:
    type_validation(text=text)
    node_count: Optional[int] = None
    leader_ids: Optional[List[int]] = None
    edges: List[Tuple[int, int]] = []
    line_numbers: Dict[int, int] = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "nodes":
            if node_count is not None:
                raise TopologySyntaxError("'nodes' given twice", line_number)
            if len(args) != 1:
                raise TopologySyntaxError("'nodes' takes one integer", line_number)
            node_count = _parse_ints(args, line_number)[0]
        elif keyword == "leaders":
            if leader_ids is not None:
                raise TopologySyntaxError("'leaders' given twice", line_number)
            leader_ids = _parse_ints(args, line_number)
            if len(set(leader_ids)) != len(leader_ids):
                raise TopologySyntaxError("duplicate leader id", line_number)
        elif keyword == "edge":
            if len(args) != 2:
                raise TopologySyntaxError("'edge' takes two node ids", line_number)
            i, j = _parse_ints(args, line_number)
            line_numbers[len(edges)] = line_number
            edges.append((i, j))
        else:
            raise TopologySyntaxError(f"unknown keyword {keyword!r}", line_number)

    if node_count is None:
        raise TopologySyntaxError("missing 'nodes' line")
    topology = make_topology(node_count, leader_ids or [], edges, line_numbers)
    logger.debug("parsed %s", topology)
    return topology


def read_topology(path: Union[str, pathlib.Path]) -> CommunicationTopology:
    """Reads and parses a UTF-8 topology file. See ``parse_topology``."""
    type_validation(path=path)
    return parse_topology(pathlib.Path(path).read_text(encoding="utf-8"))


def render_topology(topology: CommunicationTopology) -> str:
    """Renders the canonical text form of a topology, edges in weight-symbol order.

    ``parse_topology(render_topology(t)) == t`` holds for every valid topology.
    """
    lines = [
        f"nodes {topology.node_count}",
        "leaders " + " ".join(str(v) for v in topology.leader_ids),
    ]
    lines.extend(f"edge {i} {j}" for i, j in topology.edges)
    return "\n".join(lines) + "\n"


def connected_components(topology: CommunicationTopology) -> ComponentPartition:
    """Computes the connected components of the (undirected) topology.

    :return: Components sorted by their smallest member.
    """
    components = sorted(
        tuple(sorted(component))
        for component in nx.connected_components(topology.to_networkx())
    )
    return ComponentPartition(components=tuple(components))


def is_connected(topology: CommunicationTopology) -> bool:
    """Returns ``True`` iff the topology has exactly one connected component."""
    return len(connected_components(topology)) == 1


def is_leader_follower_connected(topology: CommunicationTopology) -> bool:
    """Returns ``True`` iff every connected component contains at least one leader."""
    leaders = set(topology.leader_ids)
    return all(leaders.intersection(c) for c in connected_components(topology))


def spanning_subgraph(topology: CommunicationTopology) -> CommunicationTopology:
    """Returns a spanning forest of the topology with exactly ``N - l`` edges, each
    tree rooted at a leader.

    Every follower is reached exactly once by a breadth-first search started from all
    leaders at the same time, the search edges form the forest.

    Raises:
        ``ValueError``: If the topology is not leader-follower connected.
    """
    if not is_leader_follower_connected(topology):
        raise ValueError("Error: topology is not leader-follower connected.")
    graph = topology.to_networkx()
    # virtual root 0 joins all leaders, its edges are not part of the forest
    graph.add_edges_from((0, leader) for leader in topology.leader_ids)
    forest = [edge for edge in nx.bfs_edges(graph, 0) if 0 not in edge]
    return make_topology(topology.node_count, topology.leader_ids, forest)


def admissible_edges(node_count: int, leader_ids: Iterable[int]) -> List[EDGE]:
    """Lists every node pair that may carry an edge, i.e. all pairs except
    leader-leader pairs, in weight-symbol order."""
    leaders = set(leader_ids)
    return [
        (i, j)
        for i, j in itertools.combinations(range(1, node_count + 1), 2)
        if not (i in leaders and j in leaders)
    ]


def random_topology(
    node_count: int,
    leader_count: int,
    edge_probability: float,
    rng: np.random.Generator,
) -> CommunicationTopology:
    """Draws a random topology: each admissible edge is present independently with
    probability ``edge_probability``. The leaders are the last ``leader_count`` nodes.

    :param node_count: Number of agents ``N``.
    :param leader_count: Number of leaders ``l``, ``1 <= l < N``.
    :param edge_probability: Probability of each admissible edge.
    :param rng: NumPy random generator.
    """
    # Type validations:
    type_validation(
        node_count=node_count,
        leader_count=leader_count,
        edge_probability=edge_probability,
    )
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge probability is expected to be between 0 and 1.")
    leaders = range(node_count - leader_count + 1, node_count + 1)
    candidates = admissible_edges(node_count, leaders)
    keep = rng.random(len(candidates)) < edge_probability
    edges = [edge for edge, flag in zip(candidates, keep) if flag]
    return make_topology(node_count, leaders, edges)


def enumerate_topologies(
    node_count: int, leader_ids: Iterable[int]
) -> Iterator[CommunicationTopology]:
    """Yields every valid topology on ``node_count`` nodes with the given leaders, one
    per subset of the admissible edges (``2**len(admissible_edges)`` topologies)."""
    leaders = sorted(leader_ids)
    candidates = admissible_edges(node_count, leaders)
    for mask in range(1 << len(candidates)):
        edges = [edge for bit, edge in enumerate(candidates) if mask >> bit & 1]
        yield make_topology(node_count, leaders, edges)
