"""Graphviz DOT renderings of the graphs netctrl builds.

Every renderer returns the DOT text as a string whose bytes depend only on the graph:
vertices and edges are emitted in sorted order. To turn the text into an image, save it
as ``graph.dot`` and run::

    $ dot -Tpng graph.dot > graph.png
"""


from typing import Callable, Dict, List

from netctrl.parameterization import FlowGraph, build_parameterization, flow_graph
from netctrl.structural_analysis import (
    LineGraph,
    QuotientGraph,
    TransferGraph,
    line_graph,
    quotient_graph,
    transfer_graph,
    transfer_matrix,
)
from netctrl.topology import CommunicationTopology
from netctrl.type_utilities import type_validation


def _finish(lines: List[str]) -> str:
    lines.append("}")
    return "\n".join(lines) + "\n"


def topology_to_dot(topology: CommunicationTopology) -> str:
    """Undirected communication graph; leaders are drawn as boxes, edges labelled with
    their weight symbol."""
    lines = ["graph topology {"]
    for node in range(1, topology.node_count + 1):
        shape = "box" if topology.is_leader(node) else "circle"
        lines.append(f'  {node} [label="{node}", shape={shape}];')
    for k, (i, j) in enumerate(topology.edges, start=1):
        lines.append(f'  {i} -- {j} [label="w{k}"];')
    return _finish(lines)


def flow_graph_to_dot(fg: FlowGraph) -> str:
    """Flow graph on ``v1..v(n+m)``; input vertices are drawn as boxes."""
    lines = ["digraph flow {"]
    inputs = set(fg.input_vertices)
    for vertex in range(1, fg.vertex_count + 1):
        shape = "box" if vertex in inputs else "circle"
        lines.append(f'  v{vertex} [label="v{vertex}", shape={shape}];')
    for tail, head, k in sorted(fg.edges):
        lines.append(f'  v{tail} -> v{head} [label="w{k}"];')
    return _finish(lines)


def transfer_graph_to_dot(tg: TransferGraph) -> str:
    """Transfer graph on ``gamma1..gamma(sigma+1)``, arcs labelled with their entry of
    ``T``; the input node is drawn as a box."""
    lines = ["digraph transfer {"]
    for vertex in range(1, tg.vertex_count + 1):
        shape = "box" if vertex == tg.input_vertex else "circle"
        lines.append(f'  g{vertex} [label="gamma{vertex}", shape={shape}];')
    for (tail, head), value in zip(tg.edges, tg.values):
        lines.append(f'  g{tail} -> g{head} [label="{value}"];')
    return _finish(lines)


def line_graph_to_dot(lg: LineGraph) -> str:
    """Line graph, a vertex ``i_j_k`` per flow-graph arc ``v_i -> v_j`` with ``w_k``."""
    lines = ["digraph line {"]
    for i, j, k in lg.vertices:
        lines.append(f'  e{i}_{j}_{k} [label="v{i}->v{j} w{k}"];')
    for (i, j, k), (_, j2, k2) in lg.edges:
        lines.append(f"  e{i}_{j}_{k} -> e{j}_{j2}_{k2};")
    return _finish(lines)


def quotient_graph_to_dot(qg: QuotientGraph) -> str:
    """Quotient of the line graph by weight symbol, on ``gamma1..gamma(sigma)``."""
    lines = ["digraph quotient {"]
    for vertex in range(1, qg.vertex_count + 1):
        lines.append(f'  g{vertex} [label="gamma{vertex}", shape=circle];')
    for tail, head in qg.edges:
        lines.append(f"  g{tail} -> g{head};")
    return _finish(lines)


def _render_flow(topology: CommunicationTopology) -> str:
    return flow_graph_to_dot(flow_graph(build_parameterization(topology)))


def _render_transfer(topology: CommunicationTopology) -> str:
    tm = transfer_matrix(build_parameterization(topology))
    return transfer_graph_to_dot(transfer_graph(tm))


def _render_line(topology: CommunicationTopology) -> str:
    return line_graph_to_dot(line_graph(flow_graph(build_parameterization(topology))))


def _render_quotient(topology: CommunicationTopology) -> str:
    lg = line_graph(flow_graph(build_parameterization(topology)))
    return quotient_graph_to_dot(quotient_graph(lg, topology.sigma))


RENDERERS: Dict[str, Callable[[CommunicationTopology], str]] = {
    "topology": topology_to_dot,
    "flow": _render_flow,
    "transfer": _render_transfer,
    "line": _render_line,
    "quotient": _render_quotient,
}


def export_dot(topology: CommunicationTopology, what: str) -> str:
    """Renders one of the graphs derived from ``topology``.

    :param topology: The communication topology.
    :param what: One of ``"topology"``, ``"flow"``, ``"transfer"``, ``"line"``,
        ``"quotient"``.

    :return: DOT text.
    """
    # Type validations:
    type_validation(what=what)
    if what not in RENDERERS:
        raise ValueError(
            f"Error: cannot export {what!r}, choose one of {', '.join(RENDERERS)}."
        )
    return RENDERERS[what](topology)
