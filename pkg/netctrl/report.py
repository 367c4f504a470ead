"""
``netctrl.report`` Module

This module runs all decision routes on one topology and collects their verdicts in an
``AnalysisReport``, a ``pydantic`` model serialized to JSON with a fixed key order, so
that equal inputs give byte-identical reports (per-stage timings can be left out).

Example:

.. code-block:: python

    report = analyse_topology(read_topology("star.top"), timings=False)
    print(report.to_json())

"""


import json
import logging
import time
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from netctrl.numeric_oracle import OracleConfig, OracleResult, oracle_decide
from netctrl.parameterization import build_parameterization
from netctrl.structural_analysis import (
    DEFAULT_RANK_CAP,
    Decision,
    Verdict,
    certificate_decision,
    theorem_decision,
)
from netctrl.topology import CommunicationTopology
from netctrl.type_utilities import type_validation

logger = logging.getLogger(__name__)

SCHEMA_TAG = "netctrl-report/1"


class TopologySummary(BaseModel):
    node_count: int
    leader_count: int
    sigma: int
    components: List[List[int]]


class TheoremReport(BaseModel):
    decision: str
    route: str
    components: List[List[int]]


class MinRankReport(BaseModel):
    value: int
    witness_subset: List[int]
    rank_c: int
    rank_r: int
    exhaustive: bool
    subsets_evaluated: int


class CertificateReport(BaseModel):
    decision: str
    route: str
    rank_cap: int
    min_rank: MinRankReport
    # gamma vertex -> parent, keys as strings for JSON
    spanning_tree: Dict[str, int]
    unreachable: List[int]


class OracleReport(BaseModel):
    decision: str
    route: str
    controllable: bool
    # exact integer strings
    witness: Optional[List[str]]
    trials_run: int
    rank_achieved: int
    seed: int


class AnalysisReport(BaseModel):
    """Verdicts of all routes on one topology.

    ``agreement`` is ``True`` iff every conclusive verdict has the same decision; an
    inconclusive certificate does not take part.
    """

    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=SCHEMA_TAG, serialization_alias="schema")
    topology: TopologySummary
    theorem: TheoremReport
    certificate: CertificateReport
    oracle: Optional[OracleReport] = None
    agreement: bool
    timings_ms: Optional[Dict[str, float]] = None

    def to_json(self) -> str:
        """Serializes the report, without ``timings_ms`` if it was not recorded."""
        exclude = {"timings_ms"} if self.timings_ms is None else set()
        payload = self.model_dump(mode="json", by_alias=True, exclude=exclude)
        return json.dumps(payload, indent=2) + "\n"


def _theorem_report(verdict: Verdict) -> TheoremReport:
    assert verdict.components is not None
    return TheoremReport(
        decision=verdict.decision.value,
        route=verdict.route.value,
        components=[list(c) for c in verdict.components],
    )


def _certificate_report(verdict: Verdict, rank_cap: int) -> CertificateReport:
    assert verdict.min_rank is not None
    min_rank = verdict.min_rank
    return CertificateReport(
        decision=verdict.decision.value,
        route=verdict.route.value,
        rank_cap=rank_cap,
        min_rank=MinRankReport(
            value=min_rank.value,
            witness_subset=list(min_rank.witness_subset),
            rank_c=min_rank.rank_c,
            rank_r=min_rank.rank_r,
            exhaustive=min_rank.exhaustive,
            subsets_evaluated=min_rank.subsets_evaluated,
        ),
        spanning_tree={
            str(vertex): parent
            for vertex, parent in sorted((verdict.spanning_tree or {}).items())
        },
        unreachable=list(verdict.unreachable),
    )


def _oracle_report(result: OracleResult, seed: int) -> OracleReport:
    verdict = result.to_verdict()
    return OracleReport(
        decision=verdict.decision.value,
        route=verdict.route.value,
        controllable=result.controllable,
        witness=(
            None
            if result.witness is None
            else [str(value) for value in result.witness.values]
        ),
        trials_run=result.trials_run,
        rank_achieved=result.rank_achieved,
        seed=seed,
    )


def verdicts_agree(verdicts: List[Verdict]) -> bool:
    """``True`` iff all conclusive verdicts carry the same decision."""
    decisions = {
        v.decision for v in verdicts if v.decision is not Decision.INCONCLUSIVE
    }
    return len(decisions) <= 1


def analyse_topology(
    topology: CommunicationTopology,
    rank_cap: int = DEFAULT_RANK_CAP,
    oracle_config: Optional[OracleConfig] = None,
    timings: bool = True,
) -> AnalysisReport:
    """Runs the theorem shortcut, the certificate and (if ``oracle_config`` is given)
    the oracle on a topology.

    :param topology: The communication topology.
    :param rank_cap: Largest ``sigma`` with an exhaustive min-rank search.
    :param oracle_config: (optional) Oracle settings; the oracle is skipped without.
    :param timings: Whether to record per-stage wall-clock times.

    :return: ``AnalysisReport``.
    """
    # Type validations:
    type_validation(cap=rank_cap, timings=timings)
    stage_ms: Dict[str, float] = {}

    started = time.perf_counter()
    theorem = theorem_decision(topology)
    stage_ms["theorem"] = (time.perf_counter() - started) * 1e3

    started = time.perf_counter()
    certificate = certificate_decision(build_parameterization(topology), rank_cap)
    stage_ms["certificate"] = (time.perf_counter() - started) * 1e3

    verdicts = [theorem, certificate]
    oracle: Optional[OracleReport] = None
    if oracle_config is not None:
        started = time.perf_counter()
        result = oracle_decide(topology, oracle_config)
        stage_ms["oracle"] = (time.perf_counter() - started) * 1e3
        verdicts.append(result.to_verdict())
        oracle = _oracle_report(result, oracle_config.seed)

    agreement = verdicts_agree(verdicts)
    if not agreement:
        logger.warning(
            "routes disagree: %s",
            ", ".join(f"{v.route.value}={v.decision.value}" for v in verdicts),
        )
    return AnalysisReport(
        topology=TopologySummary(
            node_count=topology.node_count,
            leader_count=topology.leader_count,
            sigma=topology.sigma,
            components=[list(c) for c in theorem.components or ()],
        ),
        theorem=_theorem_report(theorem),
        certificate=_certificate_report(certificate, rank_cap),
        oracle=oracle,
        agreement=agreement,
        timings_ms=(
            {stage: round(ms, 3) for stage, ms in stage_ms.items()} if timings else None
        ),
    )
