"""
Custom Exceptions Module

This module defines custom exception classes that represent the error scenarios of
netctrl: malformed or invalid communication topologies, inconsistent dimensions between
a linear parameterization and a weight assignment, and failures of the numerical
simulation and steering of a consensus network.

Exceptions:
    - NetCtrlError: Base class of all netctrl exceptions.
    - TopologyError: Base class for problems with a communication topology.
    - TopologySyntaxError: Raised when a topology document cannot be parsed.
    - TopologyValidationError: Base class for topologies that parse but violate an invariant.
    - SelfLoopError, DuplicateEdgeError, LeaderEdgeError, NodeIndexError,
      NoLeaderError, AllLeaderError: The distinct validation failures.
    - DimensionMismatchError: Raised when matrix/vector dimensions do not agree.
    - InvalidWeightError: Raised for zero (or, where physical weights are required, non-positive) weights.
    - SubsetIndexError: Raised when a weight-index subset leaves ``{1..sigma}``.
    - SimulationError: Raised when the integrated state stops being finite.
    - SteeringInfeasibleError: Raised when the followers can not be steered to an arbitrary target.

Usage:
    Functions of netctrl raise these exceptions instead of returning sentinel values. The
    command-line front end maps them onto its exit codes.

Example:
    try:
        topology = read_topology("network.top")
    except TopologySyntaxError as exc:
        # Handle a malformed line, ``exc.line_number`` tells which one.
    except TopologyValidationError as exc:
        # Handle a topology that violates an invariant.

"""

from typing import Optional


class NetCtrlError(Exception):
    """
    Base Exception of netctrl

    All exceptions raised on purpose by netctrl derive from this class, so callers can
    catch everything netctrl-specific with a single ``except`` clause.
    """


class TopologyError(NetCtrlError):
    """
    Exception for Communication Topology Problems

    Common parent of syntax and validation errors of communication topologies.
    """


class TopologySyntaxError(TopologyError):
    """
    Exception for Malformed Topology Documents

    Raised when a line of a topology document does not follow the grammar
    ``nodes <N>``, ``leaders <id> ...`` or ``edge <i> <j>``.

    Example:
        try:
            count = int(token)
        except ValueError as exc:
            raise TopologySyntaxError("expected an integer", line_number=3) from exc
    """

    line_number: Optional[int]

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class TopologyValidationError(TopologyError):
    """
    Exception for Invalid Communication Topologies

    Raised when a topology is syntactically fine but violates one of the invariants of
    ``CommunicationTopology``. The specific failure is given by the subclass.
    """

    line_number: Optional[int]

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class SelfLoopError(TopologyValidationError):
    """Raised for an edge ``{i, i}``."""


class DuplicateEdgeError(TopologyValidationError):
    """Raised when an unordered node pair appears more than once."""


class LeaderEdgeError(TopologyValidationError):
    """
    Exception for Leader-Leader Edges

    Leaders are pure integrators, an edge between two leaders appears neither in the
    follower matrix ``A`` nor in the input matrix ``B``, so it is rejected.
    """


class NodeIndexError(TopologyValidationError):
    """Raised when a node id lies outside ``[1, N]``."""


class NoLeaderError(TopologyValidationError):
    """Raised when the topology declares no leader."""


class AllLeaderError(TopologyValidationError):
    """Raised when every node is a leader, leaving no follower to control."""


class DimensionMismatchError(NetCtrlError):
    """
    Exception for Inconsistent Dimensions

    Raised when, for instance, a weight assignment does not provide exactly ``sigma``
    weights for a parameterization, or when ``A`` and ``B`` do not have matching rows.

    Example:
        if len(weights) != param.sigma:
            raise DimensionMismatchError(
                f"expected {param.sigma} weights, got {len(weights)}"
            )
    """


class InvalidWeightError(NetCtrlError):
    """Raised for a zero weight, or for a non-positive weight where consensus weights are required."""


class SubsetIndexError(NetCtrlError):
    """Raised when a subset of weight indices contains an index outside ``{1..sigma}``."""


class SimulationError(NetCtrlError):
    """
    Exception for Diverging Simulations

    Raised when the integrated state of the network stops being finite, which happens
    when the step is too large for the weights (the Runge-Kutta scheme turns unstable).
    """


class SteeringInfeasibleError(NetCtrlError):
    """
    Exception for Infeasible Steering Problems

    Raised when the follower pair ``(A(w), B(w))`` is not controllable at the given
    weights, i.e. its controllability Gramian is singular and the followers cannot be
    steered to an arbitrary target. ``rank`` holds the exact Kalman rank of the pair and
    ``n`` the number of follower states.

    Example:
        if rank < n:
            raise SteeringInfeasibleError(rank=rank, n=n)
    """

    rank: int
    n: int

    def __init__(self, rank: int, n: int) -> None:
        self.rank = rank
        self.n = n
        super().__init__(
            f"controllability Gramian is singular: rank {rank} < {n} follower states"
        )
