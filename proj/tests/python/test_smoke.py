import json
import os
from pathlib import Path

import pytest

import mbr

FIXTURES = Path(os.environ.get("MBR_FIXTURE_DIR", Path(__file__).resolve().parents[1] / "fixtures"))


def load(name):
    return mbr.Model.load(str(FIXTURES / name))


def test_figure_one_beliefs():
    m1 = load("ignorant_a.model")
    assert m1.satisfies("B[b]~p")
    assert not m1.satisfies("B[a]p")
    assert m1.satisfies("B[a]B[b]~p")
    assert not load("ignorant_a_extra.model").satisfies("B[a]B[b]~p")
    assert m1.belief_equal(load("ignorant_a_extra.model"))
    assert not m1.bisimilar(load("ignorant_a_extra.model"))
    assert m1.profile() == {"a": [[], ["p"]], "b": [[]]}


def test_expand_and_revise():
    m1 = load("ignorant_a.model")
    e = m1.expand("a", "p")
    assert e.designated == "s_plus"
    assert e.world_count == 5
    assert e.satisfies("B[a]p & B[b]~p")
    assert m1.revise("a", "p") == e
    f3 = load("common_p.model").revise("a", "~p", op="fm")
    assert f3.satisfies("B[b](~B[a]p & ~B[a]~p)")
    ev = m1.revise("a", "~p", op="ev")
    assert ev.designated == "s@sigma"
    assert ev.satisfies("B[a]~p")


def test_errors_map_to_python_exceptions():
    m1 = load("ignorant_a.model")
    with pytest.raises(mbr.ParseError):
        m1.satisfies("B[a p")
    with pytest.raises(mbr.SignatureError):
        m1.satisfies("B[z]p")
    with pytest.raises(mbr.DomainError):
        m1.revise("a", "p | ~p", op="rb")
    single = mbr.Model.parse(json.dumps({
        "signature": {"agents": ["a"], "props": ["p", "q"]},
        "worlds": [{"id": "s", "true_props": ["p", "q"]}],
        "relations": {"a": [["s", "s"]]},
        "designated": "s",
    }))
    with pytest.raises(mbr.StarUpdateError):
        single.revise("a", "~p", op="rb", rules="p -> q\nq -> p")


def test_round_trip_and_render():
    m = mbr.Model.minimal(["a", "b"], ["p"], ["p"])
    assert m.designated == "{p}"
    assert mbr.Model.parse(m.to_json()) == m
    dot = load("ignorant_a.model").to_dot()
    assert dot.count("doublecircle") == 1
    assert 'label="a,b"' in dot


def test_suite_and_replay():
    cfg = {
        "operator": "fm", "agents": ["a", "b"], "props": ["p"], "tier": "exhaustive",
        "max_worlds": 2, "postulates": ["DP2", "DP3"],
    }
    records = mbr.run_suite(json.dumps(cfg))
    rows = [json.loads(line) for line in records.splitlines()]
    assert [r["postulate"] for r in rows] == ["DP2", "DP3"]
    assert rows[0]["violations"] > 0 and rows[1]["violations"] == 0
    assert records == mbr.run_suite(json.dumps(cfg))
    assert "-> violated" in mbr.replay(records, "DP2")
    assert "DP3" in mbr.report_table(records)
    with pytest.raises(mbr.Error):
        mbr.replay(records, "DP3")


def test_exception_hierarchy():
    for cls in (mbr.ParseError, mbr.SignatureError, mbr.DomainError, mbr.StarUpdateError):
        assert issubclass(cls, mbr.Error)
