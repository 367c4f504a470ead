# -*- coding: utf-8 -*-
# <nbformat>4</nbformat>

# <markdowncell>

# # Example:
# ## Simulating and steering a leader-follower consensus network

# <codecell>

import pathlib

import matplotlib.pyplot as plt

from netctrl.dynamics import replay, simulate, steer, zero_signal
from netctrl.exceptions import SteeringInfeasibleError
from netctrl.parameterization import WeightAssignment
from netctrl.topology import read_topology

# <codecell>

# plotting style:
plt.style.use("seaborn-v0_8-darkgrid")
# set line width
plt.rcParams["lines.linewidth"] = 2
# set font size for titles
plt.rcParams["axes.titlesize"] = 14
# set font size for labels on axes
plt.rcParams["axes.labelsize"] = 12
# set figure size
plt.rcParams["figure.figsize"] = (10, 6)

# <markdowncell>

# ## Consensus with a leader at rest
# All followers converge to the state of the leader.

# <codecell>

data_path = pathlib.Path.cwd() / ".." / "data"
topology = read_topology(data_path / "star.top")
w = WeightAssignment.ones(topology.sigma)
trajectory = simulate(topology, w, zero_signal(1), [0.0, 0.0, 0.0, 1.0], t_f=50.0)
print(trajectory.final_state)
trajectory.plot(leader_ids=topology.leader_ids)
plt.show()

# <markdowncell>

# ## Steering the followers to a target
# With unit weights, agents 2 and 3 are indistinguishable to the leader, so distinct weights are used.

# <codecell>

w = WeightAssignment((1, 2, 3))
plan = steer(topology, w, x0_followers=[0.0, 0.0, 0.0], x_f=[1.0, 2.0, 3.0], t_f=5.0)
print(f"Gramian rank {plan.gramian_rank}, replay error {plan.predicted_error:.3g}")
steered = replay(topology, w, plan)
steered.plot(leader_ids=topology.leader_ids)
plt.show()

# <markdowncell>

# ## The leader command
# The plan is piecewise constant on the simulation grid.

# <codecell>

plan.to_dataframe().plot(title="Leader velocity")
plt.show()

# <markdowncell>

# ## A network that can not be steered
# The followers 3 and 4 hear no leader; their average never changes.

# <codecell>

disconnected = read_topology(data_path / "disconnected.top")
try:
    steer(
        disconnected,
        WeightAssignment((1, 2, 3)),
        x0_followers=[0.0, 0.0, 0.0, 0.0],
        x_f=[1.0, 1.0, 1.0, 2.0],
        t_f=5.0,
    )
except SteeringInfeasibleError as exc:
    print(exc)
