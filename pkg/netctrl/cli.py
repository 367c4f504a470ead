"""
Command-Line Front End

Usage:
------
- ``netctrl analyze --input net.top``: decide structural controllability by every route
  and print the JSON report.
- ``netctrl export --input net.top --what flow``: print a graph as Graphviz DOT.
- ``netctrl simulate --input net.top --weights 1,1,1 --x0 0,0,0,1 --tf 50``: print the
  trajectory as CSV; with ``--target`` the followers are steered to the target first.

Exit codes:
-----------
- 0: success, all routes agree
- 1: invalid input (unreadable or invalid topology, malformed flag values)
- 2: steering infeasible (follower pair not controllable at the given weights)
- 3: the decision routes disagree

"""

import argparse
import logging
import pathlib
import sys
from typing import List, Optional, Sequence

import numpy as np

from netctrl.dot_export import RENDERERS, export_dot
from netctrl.dynamics import replay, simulate, steer, zero_signal
from netctrl.exceptions import NetCtrlError, SteeringInfeasibleError
from netctrl.numeric_oracle import OracleConfig
from netctrl.parameterization import WeightAssignment
from netctrl.report import analyse_topology
from netctrl.structural_analysis import DEFAULT_RANK_CAP
from netctrl.topology import CommunicationTopology, read_topology

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_STEERING_INFEASIBLE = 2
EXIT_DISAGREEMENT = 3


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        pathlib.Path(out).write_text(text, encoding="utf-8")


def _parse_floats(text: str, flag: str) -> List[float]:
    try:
        return [float(token) for token in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"{flag} expects a comma separated list of numbers") from exc


def _parse_weights(text: str, topology: CommunicationTopology) -> WeightAssignment:
    """``"1,2,5/2"`` or ``"random:<seed>"``."""
    if text.startswith("random:"):
        seed = int(text.split(":", 1)[1])
        return WeightAssignment.random(topology.sigma, np.random.default_rng(seed))
    return WeightAssignment.from_strings(text.split(","))


def cmd_analyze(args: argparse.Namespace) -> int:
    topology = read_topology(args.input)
    oracle_config = (
        OracleConfig(trials=args.oracle_trials, seed=args.seed)
        if args.oracle_trials > 0
        else None
    )
    report = analyse_topology(
        topology,
        rank_cap=args.rank_cap,
        oracle_config=oracle_config,
        timings=not args.no_timings,
    )
    _write(report.to_json(), args.out)
    return EXIT_OK if report.agreement else EXIT_DISAGREEMENT


def cmd_export(args: argparse.Namespace) -> int:
    topology = read_topology(args.input)
    _write(export_dot(topology, args.what), args.out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    topology = read_topology(args.input)
    weights = _parse_weights(args.weights, topology)
    x0 = _parse_floats(args.x0, "--x0")
    if len(x0) != topology.node_count:
        raise ValueError(f"--x0 expects {topology.node_count} values")

    if args.target is None:
        trajectory = simulate(
            topology, weights, zero_signal(topology.leader_count), x0, args.tf, args.dt
        )
        _write(trajectory.to_csv(), args.out)
        return EXIT_OK

    target = _parse_floats(args.target, "--target")
    plan = steer(
        topology,
        weights,
        [x0[v - 1] for v in topology.follower_ids],
        target,
        args.tf,
        args.dt,
        x0_leaders=[x0[v - 1] for v in topology.leader_ids],
    )
    trajectory = replay(topology, weights, plan)
    _write(trajectory.to_csv(), args.out)
    if args.plan_out is not None:
        plan.to_csv(args.plan_out)
    sys.stderr.write(
        f"steering plan: Gramian rank {plan.gramian_rank}, "
        f"achieved error {plan.predicted_error:.3g}\n"
    )
    return EXIT_OK


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
    --------
    argparse.Namespace: An object containing the parsed arguments.

    """

    parser = argparse.ArgumentParser(
        prog="netctrl",
        description="Structural controllability of leader-follower consensus networks.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log debug messages to stderr"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="decide structural controllability")
    analyze.add_argument("--input", required=True, help="topology file")
    analyze.add_argument("--out", help="report file (default: stdout)")
    analyze.add_argument(
        "--rank-cap",
        type=int,
        default=DEFAULT_RANK_CAP,
        help="largest number of edges with an exhaustive min-rank search",
    )
    analyze.add_argument(
        "--oracle-trials", type=int, default=5, help="oracle trials, 0 disables it"
    )
    analyze.add_argument("--seed", type=int, default=0, help="oracle seed")
    analyze.add_argument(
        "--no-timings", action="store_true", help="leave stage timings out"
    )
    analyze.set_defaults(handler=cmd_analyze)

    export = commands.add_parser("export", help="print a graph as Graphviz DOT")
    export.add_argument("--input", required=True, help="topology file")
    export.add_argument("--what", required=True, choices=sorted(RENDERERS))
    export.add_argument("--out", help="DOT file (default: stdout)")
    export.set_defaults(handler=cmd_export)

    sim = commands.add_parser("simulate", help="simulate or steer the network")
    sim.add_argument("--input", required=True, help="topology file")
    sim.add_argument(
        "--weights",
        required=True,
        help='comma separated positive weights, or "random:<seed>"',
    )
    sim.add_argument("--x0", required=True, help="initial states of all nodes")
    sim.add_argument("--target", help="follower target states")
    sim.add_argument("--tf", type=float, required=True, help="horizon")
    sim.add_argument("--dt", type=float, help="step (default: tf / 1000)")
    sim.add_argument("--out", help="trajectory CSV (default: stdout)")
    sim.add_argument("--plan-out", help="steering plan CSV")
    sim.set_defaults(handler=cmd_simulate)

    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command and returns its exit code."""
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        exit_code: int = args.handler(args)
    except SteeringInfeasibleError as exc:
        logger.error("%s", exc)
        return EXIT_STEERING_INFEASIBLE
    except (NetCtrlError, ValueError, TypeError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_INPUT_ERROR
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
