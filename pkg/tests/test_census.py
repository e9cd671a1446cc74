import json

from ccv.analysis import (
    census,
    census_record,
    clause_graphs,
    default_census_order,
    disagreements,
    vt_clause,
)
from ccv.families import FamilyParams


def test_census_examples():
    pappus = census_record(FamilyParams(22, 6, 2, 1))
    assert pappus.order == 18 and pappus.vertex_transitive and pappus.clause == "4"
    dodeca = census_record(FamilyParams(2, 10, 2, 1))
    assert dodeca.order == 20 and dodeca.vertex_transitive and dodeca.clause == "2"
    g12 = census_record(FamilyParams(12, 6, 4))
    assert not g12.vertex_transitive and g12.clause is None
    # frozen after an independent VF2 automorphism count
    assert g12.aut_order == 48


def test_literal_clauses():
    assert vt_clause(FamilyParams(1, 8, 1)) == "1"
    assert vt_clause(FamilyParams(1, 8, 3)) is None
    assert vt_clause(FamilyParams(2, 10, 2, 1)) == "2"
    assert vt_clause(FamilyParams(2, 13, 5, 1)) == "2"
    assert vt_clause(FamilyParams(2, 13, 4, 1)) is None
    assert vt_clause(FamilyParams(4, 7, 1, 3)) == "3"
    assert vt_clause(FamilyParams(22, 10, 2, 1)) == "4"
    assert vt_clause(FamilyParams(22, 8, 2, 1)) is None
    assert vt_clause(FamilyParams(23, 10, 4, 1)) == "5"
    assert vt_clause(FamilyParams(23, 6, 6, 1)) == "5"
    assert vt_clause(FamilyParams(23, 4, 0, 1)) == "5"
    assert vt_clause(FamilyParams(25, 10, 1, 3)) == "TC"


def test_clause_graphs_are_vertex_transitive():
    graphs = clause_graphs(30)
    assert {cg.clause for cg in graphs} == {"1", "2", "3", "4", "5", "TC"}


def test_small_census_agrees():
    records = census(24)
    assert records and not disagreements(records)
    assert any(r.clause and "~" in r.clause for r in records)
    row = records[0].to_json()
    assert set(row) == {"index", "m", "r", "s", "order", "vt", "clause", "aut_order", "girth"}
    json.dumps([r.to_json() for r in records])


def test_census_agreement_up_to_48(census48):
    records = census48["records"]
    assert len(records) > 8000
    assert disagreements(records) == []
    sporadic = [r for r in records if (r.params.index, r.params.m, r.params.r) == (2, 10, 2)]
    by_s = {r.params.s: r for r in sporadic}
    assert by_s[1].vertex_transitive and by_s[1].clause == "2"
    # the other s are only vertex-transitive when isomorphic to a clause graph
    assert all(r.vertex_transitive == bool(r.clause) for r in sporadic)
    tri = [r for r in records if r.params.index == 23 and r.vertex_transitive]
    assert tri and all(r.clause for r in tri)


def test_census_order_from_environment(monkeypatch):
    monkeypatch.setenv("CCV_MAX_ORDER", "20")
    assert default_census_order() == 20
    monkeypatch.delenv("CCV_MAX_ORDER")
    assert default_census_order() == 48
