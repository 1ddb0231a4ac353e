import json

import pytest

from catlab.asphericity import AsphericityStructure
from catlab.core import terminal
from catlab.suites import (
    REGISTRY, UnknownSuite, decode_instance, encode_instance, invariant_catalogue, registered_invariants, replay,
    run_suite, worker_count,
)


def test_registry_matches_the_shipped_invariant_list():
    shipped = [d["id"] for d in invariant_catalogue()]
    assert len(shipped) == len(set(shipped))
    bound = registered_invariants()
    assert set(shipped) == set(bound)
    # each invariant belongs to exactly one suite
    owners = [inv for s in REGISTRY.values() for inv in s.invariants]
    assert len(owners) == len(set(owners))


def test_catalogue_modules():
    mods = {d["module"] for d in invariant_catalogue()}
    assert mods <= {"asphericity", "fibrations-smoothness", "kan-extensions", "enumeration-verify"}


def test_planted_violation():
    rep = run_suite("as1-violation-demo", (2, 3))
    assert len(rep.failures) == 1 and not rep.passed
    fail = rep.failures[0]
    C = decode_instance(fail["witness"])["C"]
    assert C == terminal()
    assert replay("as1-violation-demo", fail) == fail["messages"]


def test_custom_predicate_can_repair_the_demo():
    ok = AsphericityStructure("final", lambda C: C.has_final_object())
    assert run_suite("as1-violation-demo", (2, 3), predicate=ok).passed


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_suites_at_small_bounds(name):
    rep = run_suite(name, (1, 2), samples=10, time_budget=60)
    assert rep.complete, rep.coverage
    if name == "as1-violation-demo":
        assert len(rep.failures) == 1
    else:
        assert rep.failures == [], rep.failures[:1]
    assert rep.instances > 0


def test_report_fields():
    rep = run_suite("carfibr-equivalence", (2, 3), seed=7)
    d = json.loads(rep.to_json())
    for key in ("name", "bounds", "seed", "instances", "failures", "wall", "complete", "coverage", "passed"):
        assert key in d
    assert d["seed"] == 7 and d["bounds"] == [2, 3] and d["passed"]
    assert rep.line().startswith("PASS carfibr-equivalence")


def test_time_budget_gives_an_incomplete_report():
    rep = run_suite("kappa-pasting", (2, 3), time_budget=0.5)
    assert not rep.complete and not rep.passed
    assert rep.coverage != "complete"
    assert "incomplete" in rep.line()


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")


def test_instances_round_trip_through_witness_encoding():
    from catlab.core import simplex, point
    from catlab.core import CatDiagram
    inst = {"u": point(simplex(1), "0"), "F": CatDiagram.constant(simplex(1), terminal()),
            "cats": [terminal(), simplex(2)], "b": 1}
    back = decode_instance(json.loads(json.dumps(encode_instance(inst))))
    assert back["u"] == inst["u"] and back["cats"] == inst["cats"] and back["b"] == 1
    assert back["F"] == inst["F"]


def test_parallel_run_matches_sequential(monkeypatch):
    seq = run_suite("as1-violation-demo", (2, 3), workers=1)
    par = run_suite("as1-violation-demo", (2, 3), workers=2)
    assert par.instances == seq.instances
    assert par.failures == seq.failures
    monkeypatch.setenv("CATLAB_THREADS", "3")
    assert worker_count() == 3
