"""This module decides structural controllability by its definition: a parameterized
pair ``(A(w), B(w))`` is structurally controllable if *some* weight vector ``w`` makes it
controllable in Kalman's sense. The oracle draws random integer weights, assembles
``(A, B)`` exactly and computes the rank of the controllability matrix
``[B, AB, ..., A^(n-1) B]`` over the rationals.

A positive answer is a certificate (the witness weights are returned). A negative answer
is probabilistic evidence only: the weights for which a structurally controllable pair
loses rank form a set of measure zero, so a handful of independent trials suffices.

Trial ``t`` draws its weights from ``numpy.random.default_rng([seed, t])``, so the
weights of a trial do not depend on which other trials ran before it.
"""


import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from netctrl.data_types import EXACT_MATRIX, INT
from netctrl.exceptions import DimensionMismatchError
from netctrl.linear_algebra import exact_matmul, exact_rank, exact_zeros
from netctrl.parameterization import (
    LinearParameterization,
    WeightAssignment,
    assemble_matrices,
    build_parameterization,
)
from netctrl.structural_analysis import Decision, Route, Verdict
from netctrl.topology import CommunicationTopology
from netctrl.type_utilities import type_validation

logger = logging.getLogger(__name__)


class OracleConfig:
    """Settings of the randomized Kalman-rank oracle.

    :param trials: Number of independent weight draws, ``>= 1``.
    :param seed: Seed, ``0 <= seed < 2**64``.
    :param weight_range: Inclusive integer range the weights are drawn from; must not
        contain 0.
    """

    # Attributes:
    __trials: int
    __seed: int
    __weight_range: Tuple[int, int]

    def __init__(
        self,
        trials: int = 5,
        seed: int = 0,
        weight_range: Tuple[int, int] = (1, 10**6),
    ) -> None:
        self.trials = trials
        self.seed = seed
        self.weight_range = weight_range

    @property
    def trials(self) -> int:
        return self.__trials

    @trials.setter
    def trials(self, val: INT) -> None:
        type_validation(trials=val)
        if val < 1:
            raise ValueError("trials must be >= 1.")
        self.__trials = int(val)

    @property
    def seed(self) -> int:
        return self.__seed

    @seed.setter
    def seed(self, val: INT) -> None:
        type_validation(seed=val)
        if not 0 <= val < 2**64:
            raise ValueError("seed is expected to be a 64-bit unsigned integer.")
        self.__seed = int(val)

    @property
    def weight_range(self) -> Tuple[int, int]:
        return self.__weight_range

    @weight_range.setter
    def weight_range(self, val: Tuple[int, int]) -> None:
        if (
            not isinstance(val, tuple)
            or len(val) != 2
            or not all(isinstance(v, (int, np.integer)) for v in val)
        ):
            raise ValueError("weight range must be a tuple of two integers.")
        low, high = int(val[0]), int(val[1])
        if low > high:
            raise ValueError("weight range is empty.")
        if low <= 0 <= high:
            raise ValueError("weight range must not contain 0.")
        self.__weight_range = (low, high)

    def __repr__(self) -> str:
        return (
            f"OracleConfig(trials={self.trials}, seed={self.seed}, "
            f"weight_range={self.weight_range})"
        )


@dataclass(frozen=True)
class OracleResult:
    """Outcome of ``oracle_decide``.

    Attributes:
        - ``controllable`` (``bool``): ``True`` iff some trial reached Kalman rank ``n``.
        - ``witness`` (``WeightAssignment``, optional): The weights of that trial.
        - ``trials_run`` (``int``): Number of trials evaluated.
        - ``rank_achieved`` (``int``): Largest Kalman rank seen.
        - ``n`` (``int``): Number of follower states.
    """

    controllable: bool
    witness: Optional[WeightAssignment]
    trials_run: int
    rank_achieved: int
    n: int

    def to_verdict(self) -> Verdict:
        decision = (
            Decision.STRUCTURALLY_CONTROLLABLE
            if self.controllable
            else Decision.NOT_STRUCTURALLY_CONTROLLABLE
        )
        return Verdict(
            decision=decision, route=Route.ORACLE, witness_weights=self.witness
        )


def kalman_matrix(a_mat: EXACT_MATRIX, b_mat: EXACT_MATRIX) -> EXACT_MATRIX:
    """Builds the controllability matrix ``[B, AB, A^2 B, ..., A^(n-1) B]``.

    :param a_mat: Exact ``n x n`` matrix.
    :param b_mat: Exact ``n x m`` matrix.

    :return: Exact ``n x (n * m)`` matrix.

    Raises:
        ``DimensionMismatchError``: If ``A`` is not square or ``B`` has a different
        number of rows.
    """
    n = a_mat.shape[0]
    if a_mat.shape != (n, n) or b_mat.shape[0] != n:
        raise DimensionMismatchError(
            f"A must be square with as many rows as B, "
            f"got {a_mat.shape} and {b_mat.shape}"
        )
    if n == 0 or b_mat.shape[1] == 0:
        return exact_zeros(n, n * b_mat.shape[1])
    blocks: List[EXACT_MATRIX] = [b_mat]
    for _ in range(1, n):
        blocks.append(exact_matmul(a_mat, blocks[-1]))
    matrix: EXACT_MATRIX = np.hstack(blocks)
    return matrix


def controllability_rank(a_mat: EXACT_MATRIX, b_mat: EXACT_MATRIX) -> int:
    """Rank of the controllability matrix over the rationals."""
    return exact_rank(kalman_matrix(a_mat, b_mat))


def sample_weights(
    param: LinearParameterization, config: OracleConfig, trial: int
) -> WeightAssignment:
    """Draws the weights of one trial.

    :param param: The linear parameterization (fixes ``sigma``).
    :param config: Oracle settings.
    :param trial: Trial index, ``>= 1``.
    """
    type_validation(trial=trial)
    rng = np.random.default_rng([config.seed, trial])
    low, high = config.weight_range
    return WeightAssignment.random(param.sigma, rng, low=low, high=high)


def oracle_decide(
    topology: CommunicationTopology, config: Optional[OracleConfig] = None
) -> OracleResult:
    """Decides structural controllability by sampling weights.

    Trials ``1..config.trials`` are evaluated in order; the first one reaching Kalman
    rank ``n`` ends the search and its weights are the witness.

    :param topology: A validated communication topology.
    :param config: (optional) Oracle settings, default ``OracleConfig()``.

    :return: ``OracleResult``.
    """
    config = config or OracleConfig()
    param = build_parameterization(topology)
    best_rank = 0
    for trial in range(1, config.trials + 1):
        weights = sample_weights(param, config, trial)
        rank = controllability_rank(*assemble_matrices(param, weights))
        best_rank = max(best_rank, rank)
        logger.debug("oracle trial %d: Kalman rank %d of %d", trial, rank, param.n)
        if rank == param.n:
            logger.info("oracle: controllable witness found in trial %d", trial)
            return OracleResult(
                controllable=True,
                witness=weights,
                trials_run=trial,
                rank_achieved=rank,
                n=param.n,
            )
    logger.info(
        "oracle: no controllable witness in %d trials, best rank %d < %d",
        config.trials,
        best_rank,
        param.n,
    )
    return OracleResult(
        controllable=False,
        witness=None,
        trials_run=config.trials,
        rank_achieved=best_rank,
        n=param.n,
    )


def generic_rank(
    param: LinearParameterization, config: Optional[OracleConfig] = None
) -> int:
    """Lower bound on the generic rank of ``[A(w) B(w)]``: the largest rank over the
    trials of ``config``, exact with probability 1 per trial."""
    config = config or OracleConfig()
    best = 0
    for trial in range(1, config.trials + 1):
        a_mat, b_mat = assemble_matrices(param, sample_weights(param, config, trial))
        best = max(best, exact_rank(np.hstack([a_mat, b_mat])))
        if best == param.n:
            break
    return best
