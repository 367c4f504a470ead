# -*- coding: utf-8 -*-
# <nbformat>4</nbformat>

# <markdowncell>

# # Example:
# ## Deciding structural controllability of a leader-follower network
# Note: The topologies are provided as text files in `data/`.

# <codecell>

import pathlib

import numpy as np

from netctrl.numeric_oracle import OracleConfig, oracle_decide
from netctrl.parameterization import build_parameterization
from netctrl.report import analyse_topology
from netctrl.structural_analysis import (
    certificate_decision,
    min_rank_condition,
    theorem_decision,
    transfer_matrix,
)

# importing netctrl's function to read a topology from file
from netctrl.topology import random_topology, read_topology

# <markdowncell>

# ## Reading a topology with `read_topology()`
# The star network: leader 4 is connected to agent 1 only, agents 2 and 3 hear agent 1.

# <codecell>

data_path = pathlib.Path.cwd() / ".." / "data"
topology = read_topology(data_path / "star.top")
print(topology.edges)
print(topology.weight_ids)

# <markdowncell>

# ## All routes at once
# `analyse_topology()` runs the theorem shortcut, the certificate and (given a config) the oracle, and collects the verdicts in a report.

# <codecell>

report = analyse_topology(topology, oracle_config=OracleConfig(seed=0), timings=False)
print(report.to_json())

# <markdowncell>

# ## Linear parameterization and transfer matrix
# The follower dynamics are `dx/dt = A(w) x + B(w) u` with `[A | B] = sum_k w_k c_k [r1_k | r2_k]`.

# <codecell>

param = build_parameterization(topology)
for k, triple in enumerate(param.triples, start=1):
    print(f"w{k}: c={triple.c}, r1={triple.r1}, r2={triple.r2}")
print(transfer_matrix(param).entries)

# <markdowncell>

# ## The min-rank condition
# `min(rank C_s + rank R_{q-s})` over all weight subsets `s` equals the number of followers.

# <codecell>

result = min_rank_condition(param)
print(result)

# <markdowncell>

# ## A network with a leaderless component
# The component `{3, 4}` hears no leader, so no route finds it controllable.

# <codecell>

disconnected = read_topology(data_path / "disconnected.top")
print(theorem_decision(disconnected).decision)
verdict = certificate_decision(build_parameterization(disconnected))
print(verdict.decision, verdict.min_rank.value, verdict.unreachable)
print(oracle_decide(disconnected, OracleConfig(trials=3, seed=1)))

# <markdowncell>

# ## Several leaders
# With several leaders it suffices that every connected component holds a leader.

# <codecell>

two_leaders = read_topology(data_path / "two-leaders.top")
print(analyse_topology(two_leaders, timings=False).agreement)

# <markdowncell>

# ## A sweep over random networks
# Counting how often the routes agree on random topologies with two leaders.

# <codecell>

rng = np.random.default_rng(42)
agreements = 0
for _ in range(50):
    random_network = random_topology(7, 2, 0.3, rng)
    sweep_report = analyse_topology(
        random_network, oracle_config=OracleConfig(trials=3), timings=False
    )
    agreements += sweep_report.agreement
print(f"routes agree on {agreements} of 50 random networks")
