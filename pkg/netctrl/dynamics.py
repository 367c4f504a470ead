"""This module simulates a leader-follower consensus network and steers its followers.

The whole network evolves as

    ``dx/dt = F x + G u*``

with ``F``/``G`` from ``aggregated_matrices``: followers obey the consensus law
``dx_i/dt = -sum_j w_ij (x_i - x_j)``, leaders integrate their commanded velocity
``dx_j/dt = u*_j``. Integration uses fixed-step fourth-order Runge-Kutta.

``steer`` computes the minimum-energy, piecewise-constant leader command moving the
followers from their initial states to a target within a finite horizon. It exists
exactly when the follower pair ``(A(w), B(w))`` is controllable, which is decided on the
exact Kalman rank; the floating point Gramian only serves to compute the command.
"""


import logging
import pathlib
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import matplotlib.pylab as plt
import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from scipy.linalg import expm

from netctrl.data_types import FLOAT_ARRAY, NUMERIC
from netctrl.exceptions import (
    DimensionMismatchError,
    InvalidWeightError,
    SimulationError,
    SteeringInfeasibleError,
)
from netctrl.linear_algebra import to_float
from netctrl.numeric_oracle import controllability_rank
from netctrl.parameterization import (
    WeightAssignment,
    aggregated_matrices,
    assemble_matrices,
    build_parameterization,
)
from netctrl.topology import CommunicationTopology
from netctrl.type_utilities import type_validation

logger = logging.getLogger(__name__)

# singular values below this fraction of the largest one count as zero
GRAMIAN_TOLERANCE = 1e-9

LeaderSignal = Callable[[float], FLOAT_ARRAY]


@dataclass(frozen=True)
class Trajectory:
    """States of all ``N`` agents over time.

    Attributes:
        - ``times`` (``numpy.ndarray``): Strictly increasing time grid, shape ``(K + 1,)``.
        - ``states`` (``numpy.ndarray``): Shape ``(K + 1, N)``, row ``k`` is the state at
          ``times[k]``.
    """

    times: FLOAT_ARRAY
    states: FLOAT_ARRAY

    @property
    def final_state(self) -> FLOAT_ARRAY:
        return self.states[-1]

    def to_dataframe(self) -> pd.DataFrame:
        """Returns the trajectory with index ``t`` and columns ``x1..xN``."""
        columns = [f"x{i}" for i in range(1, self.states.shape[1] + 1)]
        dataframe = pd.DataFrame(self.states, index=self.times, columns=columns)
        dataframe.index.name = "t"
        return dataframe

    def to_csv(self, path: Optional[Union[str, pathlib.Path]] = None) -> str:
        """Writes the CSV ``t,x1,...,xN`` with full precision floats.

        :param path: (optional) File to write to.

        :return: The CSV text.
        """
        text: str = self.to_dataframe().to_csv(
            float_format="%.17g", lineterminator="\n"
        )
        if path is not None:
            pathlib.Path(path).write_text(text, encoding="utf-8")
        return text

    def plot(self, leader_ids: Sequence[int] = ()) -> None:
        """Plots every agent's state over time, leaders dashed.

        :param leader_ids: (optional) Node ids drawn as leaders.
        """
        fig = plt.figure()
        axis = fig.add_subplot(111)
        for node in range(1, self.states.shape[1] + 1):
            axis.plot(
                self.times,
                self.states[:, node - 1],
                linestyle="--" if node in leader_ids else "-",
                label=f"$x_{{{node}}}$",
            )
        # title
        plt.title("Evolution of the agent states")
        # legend
        plt.legend(ncol=2)
        # axis labels
        plt.xlabel("$t$")
        plt.ylabel("$x_i(t)$")


@dataclass(frozen=True)
class SteeringPlan:
    """Piecewise-constant leader command moving the followers to ``target``.

    Attributes:
        - ``horizon`` (``float``): ``t_f``.
        - ``times`` (``numpy.ndarray``): Grid ``0 = t_0 < ... < t_K = t_f``.
        - ``control`` (``numpy.ndarray``): Shape ``(K, l)``; row ``k`` is the leader
          velocity on ``[t_k, t_{k+1})``.
        - ``target`` (``numpy.ndarray``): Follower target ``x_f``.
        - ``initial_state`` (``numpy.ndarray``): Full initial state the plan was made for.
        - ``predicted_error`` (``float``): ``|x_followers(t_f) - x_f|`` on replay.
        - ``gramian_rank`` (``int``): Exact Kalman rank of the follower pair, the rank
          of its controllability Gramian.
    """

    horizon: float
    times: FLOAT_ARRAY
    control: FLOAT_ARRAY
    target: FLOAT_ARRAY
    initial_state: FLOAT_ARRAY
    predicted_error: float
    gramian_rank: int

    def to_dataframe(self) -> pd.DataFrame:
        columns = [f"u{j}" for j in range(1, self.control.shape[1] + 1)]
        dataframe = pd.DataFrame(self.control, index=self.times[:-1], columns=columns)
        dataframe.index.name = "t"
        return dataframe

    def to_csv(self, path: Optional[Union[str, pathlib.Path]] = None) -> str:
        """Writes the CSV ``t,u1,...,ul``, one row per grid interval."""
        text: str = self.to_dataframe().to_csv(
            float_format="%.17g", lineterminator="\n"
        )
        if path is not None:
            pathlib.Path(path).write_text(text, encoding="utf-8")
        return text


def constant_signal(values: Sequence[float]) -> LeaderSignal:
    """Leader command that is constant in time."""
    vector = np.asarray(values, dtype=np.float64)
    return lambda t: vector


def zero_signal(leader_count: int) -> LeaderSignal:
    """Leaders at rest."""
    return constant_signal([0.0] * leader_count)


def plan_signal(plan: SteeringPlan) -> LeaderSignal:
    """Leader command of a plan as a function of time (piecewise constant, the value of
    interval ``[t_k, t_{k+1})``; held beyond ``t_f``)."""

    def signal(t: float) -> FLOAT_ARRAY:
        k = int(np.searchsorted(plan.times, t, side="right")) - 1
        k = min(max(k, 0), plan.control.shape[0] - 1)
        row: FLOAT_ARRAY = plan.control[k]
        return row

    return signal


def time_grid(t_f: NUMERIC, dt: Optional[NUMERIC] = None) -> FLOAT_ARRAY:
    """Uniform grid on ``[0, t_f]`` with ``round(t_f / dt)`` steps (default
    ``dt = 1e-3 * t_f``).

    The grid always ends at ``t_f``. If ``dt`` does not divide ``t_f``, the step is
    adjusted to ``t_f / round(t_f / dt)`` and a warning is logged; e.g. ``t_f = 1``,
    ``dt = 0.3`` gives three steps of ``1/3``.
    """
    type_validation(t_f=t_f, dt=dt)
    if dt is None:
        dt = 1e-3 * t_f
    if dt <= 0:
        raise ValueError("Error: dt must be positive.")
    if t_f < dt:
        raise ValueError("Error: t_f must not be smaller than dt.")
    steps = max(1, int(round(t_f / dt)))
    step = float(t_f) / steps
    if abs(step - dt) > 1e-9 * dt:
        logger.warning("dt = %g does not divide t_f = %g, using step %g", dt, t_f, step)
    grid: FLOAT_ARRAY = np.linspace(0.0, float(t_f), steps + 1)
    return grid


def _float_model(
    topology: CommunicationTopology, w: WeightAssignment
) -> Tuple[FLOAT_ARRAY, FLOAT_ARRAY]:
    if not w.is_positive:
        raise InvalidWeightError("Error: consensus weights must be positive.")
    f_exact, g_exact = aggregated_matrices(topology, w)
    return to_float(f_exact), to_float(g_exact)


def _integrate(
    f_mat: FLOAT_ARRAY,
    g_mat: FLOAT_ARRAY,
    x0: FLOAT_ARRAY,
    times: FLOAT_ARRAY,
    stage_inputs: Callable[[int], Tuple[FLOAT_ARRAY, FLOAT_ARRAY, FLOAT_ARRAY]],
) -> FLOAT_ARRAY:
    states = np.empty((len(times), len(x0)))
    states[0] = x0
    x = np.array(x0, dtype=np.float64)
    for k in range(len(times) - 1):
        h = times[k + 1] - times[k]
        u_start, u_mid, u_end = stage_inputs(k)
        k1 = f_mat @ x + g_mat @ u_start
        k2 = f_mat @ (x + 0.5 * h * k1) + g_mat @ u_mid
        k3 = f_mat @ (x + 0.5 * h * k2) + g_mat @ u_mid
        k4 = f_mat @ (x + h * k3) + g_mat @ u_end
        x = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise SimulationError(f"state is not finite at t = {times[k + 1]:g}")
        states[k + 1] = x
    logger.debug("integrated %d RK4 steps", len(times) - 1)
    return states


def simulate(
    topology: CommunicationTopology,
    w: WeightAssignment,
    u_star: Union[LeaderSignal, SteeringPlan],
    x0: Sequence[float],
    t_f: NUMERIC,
    dt: Optional[NUMERIC] = None,
) -> Trajectory:
    """Simulates the whole network.

    :param topology: The communication topology.
    :param w: Positive consensus weights, one per edge.
    :param u_star: Leader velocities, either a function of time or a ``SteeringPlan``
         (then its own grid is used and each value held over its interval).
    :param x0: Initial states of all ``N`` agents in node-id order.
    :param t_f: Horizon.
    :param dt: (optional) Step, default ``1e-3 * t_f``.

    :return: ``Trajectory``.

    Raises:
        ``InvalidWeightError``: If a weight is not positive.
        ``DimensionMismatchError``: If ``x0`` does not have ``N`` entries.
        ``SimulationError``: If the state stops being finite.
    """
    # Type validations:
    type_validation(x0=x0)
    x_init = np.asarray(x0, dtype=np.float64)
    if x_init.shape != (topology.node_count,):
        raise DimensionMismatchError(
            f"x0 must have {topology.node_count} entries, got {x_init.shape}"
        )
    f_mat, g_mat = _float_model(topology, w)

    if isinstance(u_star, SteeringPlan):
        times = u_star.times
        plan = u_star

        def held(k: int) -> Tuple[FLOAT_ARRAY, FLOAT_ARRAY, FLOAT_ARRAY]:
            return plan.control[k], plan.control[k], plan.control[k]

        stage_inputs = held
    else:
        times = time_grid(t_f, dt)
        signal = u_star

        def sampled(k: int) -> Tuple[FLOAT_ARRAY, FLOAT_ARRAY, FLOAT_ARRAY]:
            t, t_next = times[k], times[k + 1]
            return signal(t), signal(0.5 * (t + t_next)), signal(t_next)

        stage_inputs = sampled

    states = _integrate(f_mat, g_mat, x_init, times, stage_inputs)
    return Trajectory(times=times, states=states)


def controllability_gramian(
    a_mat: FLOAT_ARRAY, b_mat: FLOAT_ARRAY, t_f: NUMERIC, dt: Optional[NUMERIC] = None
) -> FLOAT_ARRAY:
    """Finite-horizon controllability Gramian
    ``W = integral_0^t_f expm(A t) B B^T expm(A^T t) dt`` by the trapezoidal rule on the
    ``dt`` grid.

    :param a_mat: ``n x n`` matrix.
    :param b_mat: ``n x m`` matrix.
    :param t_f: Horizon.
    :param dt: (optional) Step, default ``1e-3 * t_f``.

    :return: Symmetric ``n x n`` matrix.
    """
    times = time_grid(t_f, dt)
    step = expm(a_mat * (times[1] - times[0]))
    propagator = np.eye(a_mat.shape[0])
    integrand = np.empty((len(times), a_mat.shape[0], a_mat.shape[0]))
    for k in range(len(times)):
        factor = propagator @ b_mat
        integrand[k] = factor @ factor.T
        propagator = step @ propagator
    gramian: FLOAT_ARRAY = trapezoid(integrand, times, axis=0)
    return 0.5 * (gramian + gramian.T)


def numerical_rank(matrix: FLOAT_ARRAY, tolerance: float = GRAMIAN_TOLERANCE) -> int:
    """Number of singular values above ``tolerance`` times the largest one."""
    if matrix.size == 0:
        return 0
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    if singular_values[0] == 0.0:
        return 0
    return int(np.sum(singular_values > tolerance * singular_values[0]))


def _zero_order_hold(
    f_mat: FLOAT_ARRAY, g_mat: FLOAT_ARRAY, h: float
) -> Tuple[FLOAT_ARRAY, FLOAT_ARRAY]:
    size, inputs = g_mat.shape
    block = np.zeros((size + inputs, size + inputs))
    block[:size, :size] = f_mat
    block[:size, size:] = g_mat
    discrete = expm(block * h)
    return discrete[:size, :size], discrete[:size, size:]


def steer(
    topology: CommunicationTopology,
    w: WeightAssignment,
    x0_followers: Sequence[float],
    x_f: Sequence[float],
    t_f: NUMERIC,
    dt: Optional[NUMERIC] = None,
    x0_leaders: Optional[Sequence[float]] = None,
) -> SteeringPlan:
    """Computes the minimum-energy piecewise-constant leader command that moves the
    followers from ``x0_followers`` to ``x_f`` within ``t_f``. The leaders' final states
    are left free.

    Feasibility is decided on the exact Kalman rank of the follower pair
    ``(A(w), B(w))``. The command is the minimum-norm input of the network sampled with
    zero-order hold on the ``dt`` grid, solved by least squares on the sampled
    reachability matrix, so it reaches ``x_f`` up to integration and rounding error;
    ``predicted_error`` is measured by replaying the plan.

    :param topology: The communication topology.
    :param w: Positive consensus weights.
    :param x0_followers: Initial follower states, follower-id order.
    :param x_f: Follower target, follower-id order.
    :param t_f: Horizon.
    :param dt: (optional) Step, default ``1e-3 * t_f``.
    :param x0_leaders: (optional) Initial leader states, default zeros.

    :return: ``SteeringPlan``.

    Raises:
        ``SteeringInfeasibleError``: If the follower pair is not controllable.
    """
    # Type validations:
    type_validation(x0_followers=x0_followers, x_f=x_f, x0_leaders=x0_leaders)
    n, m = topology.node_count - topology.leader_count, topology.leader_count
    start = np.asarray(x0_followers, dtype=np.float64)
    target = np.asarray(x_f, dtype=np.float64)
    leaders = np.zeros(m) if x0_leaders is None else np.asarray(x0_leaders, float)
    if start.shape != (n,) or target.shape != (n,) or leaders.shape != (m,):
        raise DimensionMismatchError(
            f"expected {n} follower and {m} leader states"
        )
    f_mat, g_mat = _float_model(topology, w)
    followers = [v - 1 for v in topology.follower_ids]
    x_init = np.zeros(topology.node_count)
    x_init[followers] = start
    x_init[[v - 1 for v in topology.leader_ids]] = leaders

    rank = controllability_rank(*assemble_matrices(build_parameterization(topology), w))
    logger.info("follower Kalman rank %d of %d", rank, n)
    if rank < n:
        raise SteeringInfeasibleError(rank=rank, n=n)

    times = time_grid(t_f, dt)
    steps = len(times) - 1
    phi, gamma = _zero_order_hold(f_mat, g_mat, times[1] - times[0])
    # reachability[:, k] = phi^(steps-1-k) gamma, restricted to the followers
    reachability = np.empty((n, steps, m))
    propagated = gamma
    for j in range(steps):
        reachability[:, steps - 1 - j, :] = propagated[followers]
        propagated = phi @ propagated
    reachability = reachability.reshape(n, steps * m)
    sampled_rank = numerical_rank(reachability @ reachability.T)
    if sampled_rank < n:
        logger.warning(
            "sampled Gramian is ill-conditioned: numerical rank %d of %d",
            sampled_rank,
            n,
        )
    free_response = np.linalg.matrix_power(phi, steps) @ x_init
    # minimum-norm solution, without squaring the condition number
    solution, *_ = np.linalg.lstsq(
        reachability, target - free_response[followers], rcond=None
    )
    control = solution.reshape(steps, m)

    draft = SteeringPlan(
        horizon=float(t_f),
        times=times,
        control=control,
        target=target,
        initial_state=x_init,
        predicted_error=0.0,
        gramian_rank=rank,
    )
    final = replay(topology, w, draft, x_init).final_state
    error = float(np.linalg.norm(final[followers] - target))
    logger.info("steering plan replays with error %.3g", error)
    return SteeringPlan(
        horizon=draft.horizon,
        times=times,
        control=control,
        target=target,
        initial_state=x_init,
        predicted_error=error,
        gramian_rank=rank,
    )


def replay(
    topology: CommunicationTopology,
    w: WeightAssignment,
    plan: SteeringPlan,
    x0: Optional[Sequence[float]] = None,
) -> Trajectory:
    """Simulates the whole network under a steering plan.

    :param x0: (optional) Initial states of all agents, default ``plan.initial_state``.
    """
    start = plan.initial_state if x0 is None else x0
    return simulate(topology, w, plan, start, plan.horizon)
