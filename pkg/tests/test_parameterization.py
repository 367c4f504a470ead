from fractions import Fraction

import numpy as np
import pytest

from netctrl.exceptions import DimensionMismatchError, InvalidWeightError
from netctrl.parameterization import (
    LinearParameterization,
    ParameterTriple,
    WeightAssignment,
    aggregated_matrices,
    assemble_matrices,
    build_parameterization,
    flow_graph,
    laplacian_matrix,
)
from netctrl.topology import parse_topology, random_topology

STAR = "nodes 4\nleaders 4\nedge 1 4\nedge 1 2\nedge 1 3\n"
CHAIN = "nodes 2\nleaders 2\nedge 1 2\n"
PATH = "nodes 3\nleaders 3\nedge 1 2\nedge 2 3\n"

# the star with its leader edge numbered first: w1 = {1,4}, w2 = {1,2}, w3 = {1,3}
STAR_TRIPLES = (
    ParameterTriple(c=(1, 0, 0), r1=(-1, 0, 0), r2=(1,)),
    ParameterTriple(c=(-1, 1, 0), r1=(1, -1, 0), r2=(0,)),
    ParameterTriple(c=(-1, 0, 1), r1=(1, 0, -1), r2=(0,)),
)


def fan_out_system():
    # A = [[w2, 0, w2], [w1, 0, 0], [w1, 0, 0]], no inputs
    return LinearParameterization.from_triples(
        c=[[0, 1, 1], [1, 0, 0]], r1=[[1, 0, 0], [1, 0, 1]], r2=[[], []]
    )


def test_build_star():
    param = build_parameterization(parse_topology(STAR))
    assert (param.n, param.m, param.sigma) == (3, 1, 3)
    assert param.follower_index == {1: 1, 2: 2, 3: 3}
    assert param.leader_index == {4: 1}
    # sorted edge order (1,2), (1,3), (1,4) relabels the leader-first numbering
    assert param.triples == (STAR_TRIPLES[1], STAR_TRIPLES[2], STAR_TRIPLES[0])
    assert param.triples[2].is_leader_edge
    assert param.triples[2].r == (-1, 0, 0, 1)


def test_build_chain_and_path():
    param = build_parameterization(parse_topology(CHAIN))
    assert param.triples == (ParameterTriple(c=(1,), r1=(-1,), r2=(1,)),)
    param = build_parameterization(parse_topology(PATH))
    follower_edge = param.triples[0]
    assert sorted(follower_edge.c) == [-1, 1]
    assert sorted(follower_edge.r1) == [-1, 1]
    assert follower_edge.r2 == (0,)


def test_assemble_star():
    param = build_parameterization(parse_topology(STAR))
    a_mat, b_mat = assemble_matrices(param, WeightAssignment.ones(3))
    assert a_mat.tolist() == [[-3, 1, 1], [1, -1, 0], [1, 0, -1]]
    assert b_mat.tolist() == [[1], [0], [0]]
    # the leader-first numbering gives the same matrices
    paper = LinearParameterization.from_triples(
        c=[t.c for t in STAR_TRIPLES],
        r1=[t.r1 for t in STAR_TRIPLES],
        r2=[t.r2 for t in STAR_TRIPLES],
    )
    a_paper, b_paper = assemble_matrices(paper, WeightAssignment((5, 2, 3)))
    a_sorted, b_sorted = assemble_matrices(param, WeightAssignment((2, 3, 5)))
    assert a_paper.tolist() == a_sorted.tolist()
    assert b_paper.tolist() == b_sorted.tolist()
    assert a_paper.tolist() == [[-10, 2, 3], [2, -2, 0], [3, 0, -3]]


def test_assemble_path():
    param = build_parameterization(parse_topology(PATH))
    a_mat, b_mat = assemble_matrices(param, WeightAssignment((2, 5)))
    assert a_mat.tolist() == [[-2, 2], [2, -7]]
    assert b_mat.tolist() == [[0], [5]]


def test_assemble_fractions():
    param = build_parameterization(parse_topology(PATH))
    a_mat, _ = assemble_matrices(param, WeightAssignment((Fraction(1, 2), 1)))
    assert a_mat.tolist() == [
        [Fraction(-1, 2), Fraction(1, 2)],
        [Fraction(1, 2), Fraction(-3, 2)],
    ]


def test_assemble_dimension_mismatch():
    param = build_parameterization(parse_topology(STAR))
    with pytest.raises(DimensionMismatchError):
        assemble_matrices(param, WeightAssignment.ones(2))


def test_from_triples():
    param = fan_out_system()
    assert (param.n, param.m, param.sigma) == (3, 0, 2)
    a_mat, b_mat = assemble_matrices(param, WeightAssignment((7, 11)))
    assert a_mat.tolist() == [[11, 0, 11], [7, 0, 0], [7, 0, 0]]
    assert b_mat.shape == (3, 0)
    with pytest.raises(DimensionMismatchError):
        LinearParameterization.from_triples(c=[[1, 0]], r1=[[1]], r2=[[0]])
    with pytest.raises(DimensionMismatchError):
        LinearParameterization.from_triples(c=[[1]], r1=[[1], [0]], r2=[[0]])
    with pytest.raises(DimensionMismatchError):
        LinearParameterization.from_triples(c=[], r1=[], r2=[])


def test_flow_graph_star():
    fg = flow_graph(build_parameterization(parse_topology(STAR)))
    assert fg.vertex_count == 4
    assert fg.input_vertices == (4,)
    assert fg.arcs() == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 3), (4, 1)]
    assert (4, 1, 3) in fg.edges
    # the self-loop on v1 carries every weight
    assert {k for tail, head, k in fg.edges if tail == head == 1} == {1, 2, 3}


def test_flow_graph_fan_out():
    fg = flow_graph(fan_out_system())
    assert fg.edges == ((1, 1, 2), (1, 2, 1), (1, 3, 1), (3, 1, 2))
    assert fg.input_vertices == ()


def test_flow_graph_chain():
    fg = flow_graph(build_parameterization(parse_topology(CHAIN)))
    assert fg.edges == ((1, 1, 1), (2, 1, 1))


def test_pattern_and_laplacian_properties():
    rng = np.random.default_rng(11)
    for _ in range(100):
        node_count = int(rng.integers(2, 8))
        leader_count = int(rng.integers(1, min(3, node_count - 1) + 1))
        topology = random_topology(node_count, leader_count, 0.5, rng)
        param = build_parameterization(topology)
        w = WeightAssignment.random(param.sigma, rng, low=1, high=1000)
        a_mat, b_mat = assemble_matrices(param, w)
        stacked = np.hstack([a_mat, b_mat])
        pattern = {
            (j + 1, i + 1)
            for i in range(param.n)
            for j in range(param.n + param.m)
            if stacked[i, j] != 0
        }
        assert pattern == set(flow_graph(param).arcs())
        assert (a_mat == a_mat.T).all()
        assert all(sum(row) == 0 for row in stacked.tolist())
        leader_edges = sum(
            1
            for i, j in topology.edges
            if topology.is_leader(i) or topology.is_leader(j)
        )
        assert sum(1 for t in param.triples if t.is_leader_edge) == leader_edges


def test_laplacian_and_aggregated_matrices():
    topology = parse_topology(STAR)
    w = WeightAssignment.ones(3)
    laplacian = laplacian_matrix(topology, w)
    assert laplacian.tolist() == [
        [3, -1, -1, -1],
        [-1, 1, 0, 0],
        [-1, 0, 1, 0],
        [-1, 0, 0, 1],
    ]
    f_mat, g_mat = aggregated_matrices(topology, w)
    assert f_mat.tolist() == [
        [-3, 1, 1, 1],
        [1, -1, 0, 0],
        [1, 0, -1, 0],
        [0, 0, 0, 0],
    ]
    assert g_mat.tolist() == [[0], [0], [0], [1]]
    a_mat, _ = assemble_matrices(build_parameterization(topology), w)
    assert f_mat[:3, :3].tolist() == a_mat.tolist()
    with pytest.raises(DimensionMismatchError):
        laplacian_matrix(topology, WeightAssignment.ones(4))


def test_weight_assignment():
    w = WeightAssignment.from_strings(["2", " -3", "5/2"])
    assert w.values == (2, -3, Fraction(5, 2))
    assert not w.is_positive
    assert len(w) == 3
    assert WeightAssignment.ones(2).values == (1, 1)
    with pytest.raises(InvalidWeightError):
        WeightAssignment((1, 0))
    with pytest.raises(InvalidWeightError):
        WeightAssignment.from_strings(["1", "x"])
    with pytest.raises(TypeError):
        WeightAssignment((1.5, 2))
    with pytest.raises(InvalidWeightError):
        WeightAssignment.random(3, np.random.default_rng(0), low=-1, high=1)
    drawn = WeightAssignment.random(50, np.random.default_rng(0))
    assert all(1 <= value <= 10**6 for value in drawn.values)
    assert all(type(value) is int for value in drawn.values)
