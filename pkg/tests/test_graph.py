import networkx as nx
import pytest
from hypothesis import given, settings

from pathideal.errors import GraphError
from pathideal.graph import (
    Graph,
    bits,
    boundary_and_gamma,
    classify,
    components,
    cycle_graph,
    deepest_leaf,
    delete,
    derived_subgraphs,
    enumerate_t_paths,
    induced_subgraph,
    mask_of,
    neighborhood,
    parse_graph,
    path_graph,
)

from conftest import edges, trees, unicyclic_graphs


def names_of(g, mask):
    return {g.names[v] for v in bits(mask)}


def test_parse_edge_list_with_comments():
    g = parse_graph("# a path\na b\nb c  # trailing\n\nc d\n")
    assert g.n == 4 and g.edge_count == 3
    assert g.names == ("a", "b", "c", "d")


def test_parse_reports_line_number():
    with pytest.raises(GraphError, match="line 2"):
        parse_graph("a b\na b c\n")


def test_self_loop_and_duplicate_rejected():
    with pytest.raises(GraphError, match="self-loop"):
        parse_graph("a a\n")
    with pytest.raises(GraphError, match="duplicate"):
        parse_graph("a b\nb a\n")


def test_too_many_vertices():
    text = "\n".join(f"u{i} u{i + 1}" for i in range(70))
    with pytest.raises(GraphError):
        parse_graph(text)


def test_graph6_matches_networkx():
    h = nx.cycle_graph(7)
    payload = nx.to_graph6_bytes(h, header=False).decode().strip()
    g = parse_graph(payload)
    assert g.n == 7 and g.edge_count == 7
    assert classify(g).m == 7
    assert parse_graph(">>graph6<<" + payload).edges() == g.edges()


def test_isolated_vertices_round_trip():
    g = Graph.from_edges([(0, 1)], n=3, names=["a", "b", "c"])
    back = parse_graph(g.to_edge_list())
    assert back.names == g.names and back.edges() == g.edges()


@given(trees(2, 14))
def test_edge_list_round_trip(g):
    back = parse_graph(g.to_edge_list())
    assert back.n == g.n
    relabel = [back.names.index(v) for v in g.names]
    assert sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in g.edges()) == back.edges()


def test_t_path_counts():
    assert len(enumerate_t_paths(path_graph(6), 3)) == 4
    assert len(enumerate_t_paths(cycle_graph(6), 3)) == 6
    assert enumerate_t_paths(cycle_graph(3), 3) == {0b111}
    assert enumerate_t_paths(path_graph(3), 4) == set()
    # a star K_{1,3} has one 3-path per pair of leaves
    assert len(enumerate_t_paths(edges("c-a c-b c-d"), 3)) == 3


def test_induced_subgraph_and_delete():
    g = cycle_graph(6)
    sub, old = induced_subgraph(g, mask_of([0, 1, 2, 4]))
    assert old == [0, 1, 2, 4]
    assert sub.edge_count == 2
    assert sub.root_mask(sub.vertices) == mask_of([0, 1, 2, 4])
    assert delete(g, 1).n == 5
    with pytest.raises(GraphError):
        induced_subgraph(g, 1 << 9)


def test_origins_compose():
    g = path_graph(8)
    a, _ = induced_subgraph(g, mask_of(range(2, 8)))
    b, _ = induced_subgraph(a, mask_of([1, 3, 4]))
    assert b.root_mask() == mask_of([3, 5, 6])


def test_neighborhood_closed_and_open():
    g = path_graph(5)
    assert neighborhood(g, 1 << 2) == mask_of([1, 3])
    assert neighborhood(g, 1 << 2, closed=True) == mask_of([1, 2, 3])


def test_classify_kinds():
    assert classify(path_graph(5)).kind == "forest"
    assert classify(cycle_graph(5)).kind == "unicyclic"
    k4 = Graph.from_edges([(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert classify(k4).kind == "other"
    assert classify(cycle_graph(6)).m == 6
    assert classify(path_graph(4)).m == 1


def test_unicyclic_levels(big_unicyclic):
    g = big_unicyclic
    cs = classify(g)
    assert cs.kind == "unicyclic" and cs.m == 6
    lv = {g.names[v]: cs.level[v] for v in range(g.n)}
    assert lv["v1"] == 0 and lv["x1"] == 1 and lv["y1"] == 2 and lv["z1"] == 3


def test_deepest_leaf_on_big_example(big_unicyclic):
    g = big_unicyclic
    ctx = deepest_leaf(g, classify(g))
    assert g.names[ctx.z0] == "z1" and g.names[ctx.y0] == "y1"
    assert names_of(g, mask_of(ctx.siblings)) == {"z2", "z3", "z4"}
    assert ctx.s == 3 and ctx.level == 3
    assert g.names[ctx.anchor[0]] == "x1"


def test_deepest_leaf_spider(spider):
    # rooted at the diameter end w, so z0 sits two steps below x0
    ctx = deepest_leaf(spider, classify(spider))
    assert spider.names[ctx.z0] == "z0" and ctx.s == 1
    assert ctx.level == 3 and spider.names[ctx.anchor[0]] == "x0"


def test_deepest_leaf_level_one_rotation():
    g = edges("v1-v2 v2-v3 v3-v4 v4-v5 v5-v6 v6-v1 v1-z")
    ctx = deepest_leaf(g, classify(g))
    assert ctx.level == 1 and g.names[ctx.y0] == "v1"
    assert [g.names[v] for v in ctx.anchor] == ["v2", "v6"]
    assert [g.names[v] for v in ctx.cycle] == ["v1", "v2", "v3", "v4", "v5", "v6"]


def test_bare_cycle_has_no_leaf():
    assert deepest_leaf(cycle_graph(7), classify(cycle_graph(7))) is None


def test_boundary_and_gamma(big_unicyclic):
    g = big_unicyclic
    boundary, gamma = boundary_and_gamma(g, classify(g))
    assert names_of(g, boundary) == {"x1", "x2", "x3", "x4", "x5", "x6"}
    assert gamma.n == g.n - 6


def test_derived_subgraphs_level_one():
    g = edges("v1-v2 v2-v3 v3-v4 v4-v5 v5-v6 v6-v1 v1-z")
    kids = derived_subgraphs(g, deepest_leaf(g, classify(g)))
    assert names_of(g, kids[1]) == {f"v{i}" for i in range(1, 7)}
    assert names_of(g, kids[2]) == {"v3", "v4", "v5"}
    assert names_of(g, kids[3]) == {"v4", "v5"}
    assert names_of(g, kids[4]) == {"v3", "v4"}


@settings(max_examples=60, deadline=None)
@given(unicyclic_graphs(4, 12))
def test_children_are_smaller_induced_subgraphs(g):
    cs = classify(g)
    ctx = deepest_leaf(g, cs)
    if ctx is None:
        assert g.n == cs.m
        return
    assert cs.level[ctx.z0] == max(cs.level[v] for v in range(g.n) if g.degree(v) == 1)
    for mask in derived_subgraphs(g, ctx).values():
        assert mask & ~g.vertices == 0 and mask != g.vertices


@given(trees(1, 15))
def test_components_partition(g):
    comps = components(g)
    assert sum(c.bit_count() for c in comps) == g.n
    assert len(comps) == 1
