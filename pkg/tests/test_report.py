import json
import logging

from netctrl import report
from netctrl.numeric_oracle import OracleConfig
from netctrl.report import SCHEMA_TAG, analyse_topology, verdicts_agree
from netctrl.structural_analysis import Decision, Route, Verdict
from netctrl.topology import connected_components, parse_topology

STAR = parse_topology("nodes 4\nleaders 4\nedge 1 4\nedge 1 2\nedge 1 3\n")
DISCONNECTED = parse_topology("nodes 5\nleaders 5\nedge 1 2\nedge 3 4\nedge 1 5\n")


def test_report_star():
    result = analyse_topology(STAR, oracle_config=OracleConfig(), timings=False)
    assert result.agreement
    payload = json.loads(result.to_json())
    assert list(payload) == [
        "schema",
        "topology",
        "theorem",
        "certificate",
        "oracle",
        "agreement",
    ]
    assert payload["schema"] == SCHEMA_TAG
    assert payload["topology"] == {
        "node_count": 4,
        "leader_count": 1,
        "sigma": 3,
        "components": [[1, 2, 3, 4]],
    }
    assert payload["theorem"]["decision"] == "StructurallyControllable"
    assert payload["theorem"]["route"] == "TheoremShortcut"
    certificate = payload["certificate"]
    assert certificate["decision"] == "StructurallyControllable"
    assert certificate["min_rank"]["value"] == 3
    assert certificate["min_rank"]["exhaustive"]
    assert certificate["spanning_tree"] == {"1": 3, "2": 3, "3": 4}
    oracle = payload["oracle"]
    assert oracle["controllable"]
    assert len(oracle["witness"]) == 3
    assert all(value.isdigit() for value in oracle["witness"])


def test_report_is_byte_identical():
    config = OracleConfig(trials=3, seed=7)
    first = analyse_topology(DISCONNECTED, oracle_config=config, timings=False)
    second = analyse_topology(DISCONNECTED, oracle_config=config, timings=False)
    assert first.to_json() == second.to_json()
    assert first.to_json().endswith("}\n")
    payload = json.loads(first.to_json())
    assert payload["certificate"]["decision"] == "NotStructurallyControllable"
    assert payload["oracle"]["witness"] is None
    assert payload["agreement"]


def test_report_timings():
    result = analyse_topology(STAR)
    payload = json.loads(result.to_json())
    assert set(payload["timings_ms"]) == {"theorem", "certificate"}
    assert payload["oracle"] is None
    untimed = analyse_topology(STAR, timings=False)
    assert "timings_ms" not in json.loads(untimed.to_json())


def test_inconclusive_certificate_does_not_disagree():
    result = analyse_topology(STAR, rank_cap=2, timings=False)
    assert result.certificate.decision == "Inconclusive"
    assert not result.certificate.min_rank.exhaustive
    assert result.agreement


def test_verdicts_agree():
    yes = Verdict(decision=Decision.STRUCTURALLY_CONTROLLABLE, route=Route.ORACLE)
    no = Verdict(decision=Decision.NOT_STRUCTURALLY_CONTROLLABLE, route=Route.ORACLE)
    maybe = Verdict(decision=Decision.INCONCLUSIVE, route=Route.CERTIFICATE)
    assert verdicts_agree([yes, yes, maybe])
    assert verdicts_agree([no, maybe])
    assert verdicts_agree([])
    assert not verdicts_agree([yes, no])


def test_disagreement_is_logged(monkeypatch, caplog):
    def wrong_theorem(topology):
        return Verdict(
            decision=Decision.NOT_STRUCTURALLY_CONTROLLABLE,
            route=Route.THEOREM_SHORTCUT,
            components=connected_components(topology),
        )

    monkeypatch.setattr(report, "theorem_decision", wrong_theorem)
    with caplog.at_level(logging.WARNING, logger="netctrl.report"):
        result = analyse_topology(STAR, timings=False)
    assert not result.agreement
    assert "routes disagree" in caplog.text
