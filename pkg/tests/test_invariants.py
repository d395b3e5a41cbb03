from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathideal import betti
from pathideal.errors import GraphError
from pathideal.graph import Graph, classify, cycle_graph, deepest_leaf, derived_subgraphs, induced_subgraph, path_graph
from pathideal.ideal import path_ideal
from pathideal.invariants import (
    TRIANGLE_WARNING,
    Engine,
    closed_form_branch,
    combine_components,
    conjecture_probe,
    invariants,
    lower_bound_holds,
    pd_recursive,
    reg_closed_form,
    reg_recursive,
    replay_trace,
    step_formula,
)
from pathideal.matching import nu3_recursive

from conftest import edges, trees, unicyclic_graphs

C6_PENDANT = "v1-v2 v2-v3 v3-v4 v4-v5 v5-v6 v6-v1 v1-z"


def child(g, j):
    return induced_subgraph(g, derived_subgraphs(g, deepest_leaf(g, classify(g)))[j])[0]


def test_big_example(big_unicyclic):
    rep = invariants(big_unicyclic)
    assert (rep.pd_ideal, rep.reg_ideal) == (12, 9)
    assert (rep.pd_quotient, rep.reg_quotient) == (13, 8)
    assert rep.method == "recursion"
    assert replay_trace(rep.trace)


def test_big_example_children(big_unicyclic):
    h1 = child(big_unicyclic, 1)
    assert (pd_recursive(h1)[0], reg_recursive(h1)[0]) == (11, 7)
    h2 = child(big_unicyclic, 2)
    assert (pd_recursive(h2)[0], reg_recursive(h2)[0]) == (6, 7)


@pytest.mark.parametrize("fallback", [0, 4, 10, 12])
def test_big_example_any_fallback(big_unicyclic, fallback):
    assert Engine(big_unicyclic, 2, fallback).solve() == (12, 9)


def test_big_example_closed_form(big_unicyclic):
    value, warnings = reg_closed_form(big_unicyclic)
    assert value == 8 and not warnings


def test_cycle_with_pendant():
    g = edges(C6_PENDANT)
    assert reg_recursive(g, fallback_n=0)[0] == 4
    assert reg_closed_form(g)[0] == 3
    assert betti.betti_table(path_ideal(g, 3)).reg == 4


def test_bare_c7_closed_form():
    assert reg_closed_form(cycle_graph(7)) == (4, [])
    rep = invariants(cycle_graph(7), method="closed-form")
    assert rep.reg_quotient == 4 and rep.pd_ideal is None


def test_triangle_warns_but_uses_oracle():
    rep = invariants(cycle_graph(3))
    assert TRIANGLE_WARNING in rep.warnings
    assert rep.reg_quotient == 2 and rep.method == "oracle"
    # the strict ν₃ is 0, so the closed form would say 0
    assert rep.closed_form_reg_quotient == 0
    assert any("disagrees" in w for w in rep.warnings)


def test_two_disjoint_paths():
    g = edges("a1-a2 a2-a3 a3-a4 b1-b2 b2-b3 b3-b4")
    for method in ("auto", "oracle"):
        rep = invariants(g, method=method)
        assert (rep.pd_ideal, rep.reg_ideal) == (3, 5)
    assert combine_components([(1, 3), (1, 3)]) == (3, 5)


def test_zero_component_is_ignored():
    g = edges("a1-a2 a2-a3 a3-a4 b1-b2")
    assert invariants(g).pd_ideal == 1


def test_zero_ideal():
    g = path_graph(2)
    with pytest.raises(ValueError):
        pd_recursive(g)
    rep = invariants(g)
    assert rep.pd_ideal is None and rep.reg_quotient is None


def test_rejects_graphs_with_two_cycles():
    k4 = Graph.from_edges([(u, v) for u in range(4) for v in range(u + 1, 4)])
    with pytest.raises(GraphError, match="neither tree nor unicyclic"):
        invariants(k4)
    with pytest.raises(GraphError):
        reg_closed_form(edges("a-b c-d"))


def test_unknown_method():
    with pytest.raises(ValueError):
        invariants(path_graph(5), method="guess")


def test_report_json_has_schema(big_unicyclic):
    d = invariants(big_unicyclic).to_dict()
    assert d["schema"] == 1 and d["reg_ideal"] == d["reg_quotient"] + 1
    assert d["trace"][-1]["key"] == hex(big_unicyclic.vertices)


def test_tampered_trace_is_caught(big_unicyclic):
    eng = Engine(big_unicyclic, 2, 0)
    eng.solve()
    steps = eng.trace()
    assert replay_trace(steps)
    top = steps[-1]
    bad = steps[:-1] + [replace(top, pd=top.pd + 1)]
    assert not replay_trace(bad)


def test_level_one_counterexample_to_off_by_one():
    # C6 with a leaf at v1 and a pendant path; all four children are nonzero
    g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 8), (1, 6), (2, 4), (4, 5), (5, 6), (5, 7)])
    assert betti.betti_table(path_ideal(g, 3)).pd == 4
    assert Engine(g, 2, fallback_n=0).solve()[0] == 4


def test_step_formula_cases():
    kids = {1: (5, 4), 2: (3, 4), 3: (2, 3), 4: (1, 2)}
    assert step_formula("level>=2", 2, {"deg_x0": 3}, kids) == (max(5, 3 + 3, 2 + 3 + 2), max(4, 4 + 2))
    assert step_formula("level>=2", 0, {"deg_x0": 3}, kids) == (max(5, 2 + 3), max(4, 3 + 2))
    assert step_formula("level=1", 1, {"n2": 1, "nm": 2}, kids) == (max(5, 3 + 3, 2 + 1 + 3, 1 + 2 + 3), 6)
    assert step_formula("level=1", 0, {"n2": 1, "nm": 2}, kids) == (max(5, 2 + 3, 1 + 4), max(4, 5, 4))


def test_branches():
    assert closed_form_branch(7, True) == "+2"
    assert closed_form_branch(6, True) == "+1"
    assert closed_form_branch(8, True) == "+0"
    assert closed_form_branch(7, False) == "+0"
    assert closed_form_branch(3, True) == "+0"
    assert closed_form_branch(1, None) == "+0"


def test_engine_accepts_subgraph_roots(big_unicyclic):
    h = child(big_unicyclic, 1)
    assert Engine(h, 2, 0).solve() == (11, 7)


def test_probe_paths():
    rep = conjecture_probe(path_graph(5), 4)
    assert rep["nu_t"] == 1 and rep["reg_quotient"] == 3 and rep["predicted"] == 3 and rep["holds"]
    assert rep["generators"] == ["x1*x2*x3*x4", "x2*x3*x4*x5"]
    rep = conjecture_probe(path_graph(4), 4)
    assert rep["reg_quotient"] == 3 and rep["holds"]


def test_probe_on_cycle_reports():
    rep = conjecture_probe(cycle_graph(8), 4)
    assert set(rep) >= {"reg_quotient", "predicted", "holds", "proximal"}
    assert isinstance(rep["holds"], bool)


def test_probe_zero_ideal():
    rep = conjecture_probe(path_graph(3), 4)
    assert rep["holds"] is None


def test_lower_bound_small():
    assert lower_bound_holds(path_graph(7), 3)
    assert lower_bound_holds(path_graph(3), 4) is None


@settings(max_examples=40, deadline=None)
@given(st.one_of(trees(3, 10), unicyclic_graphs(3, 10)))
def test_recursion_matches_oracle(g):
    ideal = path_ideal(g, 3)
    if ideal.is_zero:
        return
    t = betti.betti_table(ideal)
    eng = Engine(g, 2, fallback_n=0)
    assert eng.solve() == (t.pd, t.reg)
    assert replay_trace(eng.trace())


@settings(max_examples=40, deadline=None)
@given(st.one_of(trees(3, 10), unicyclic_graphs(4, 10, min_cycle=4)))
def test_closed_form_matches_oracle(g):
    ideal = path_ideal(g, 3)
    if ideal.is_zero:
        return
    reg_q = betti.betti_table(ideal).reg_quotient
    assert reg_closed_form(g)[0] == reg_q
    nu = nu3_recursive(g)
    assert 2 * nu <= reg_q <= 2 * nu + 2


def test_probe_reports_a_tree_where_t4_equation_fails():
    # spine 4-10-5-2-8-9-1-7 with 6 hanging off 8 and leaves 0, 3 on 6;
    # every two 4-paths touch, so ν₄ = 1, yet β_{4,8}(S/I₄) ≠ 0 gives reg 4
    g = Graph.from_edges([(0, 6), (1, 7), (1, 9), (2, 5), (2, 8), (3, 6), (4, 10), (5, 10), (6, 8), (8, 9)])
    rep = conjecture_probe(g, 4)
    assert (rep["nu_t"], rep["reg_quotient"], rep["predicted"]) == (1, 4, 3)
    assert rep["holds"] is False
