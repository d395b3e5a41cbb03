import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathideal.graph import bits, classify, cycle_graph, deepest_leaf, derived_subgraphs, path_graph
from pathideal.ideal import (
    SquarefreeIdeal,
    colon_by_vertex_formula,
    colon_var,
    ideal_sum,
    intersect,
    leaf_splitting,
    minimalize,
    partial_star,
    path_ideal,
    path_ideal_on,
    scaffold_level1,
    scaffold_level2,
    scale,
    tor_vanishing_sufficient,
)

from conftest import edges, trees, unicyclic_graphs

X4 = ("x1", "x2", "x3", "x4")


def I(g_or_names, *monos):
    names = g_or_names.names if hasattr(g_or_names, "names") else tuple(g_or_names)
    idx = {v: i for i, v in enumerate(names)}
    return SquarefreeIdeal.of(names, [sum(1 << idx[v] for v in m.split("*")) for m in monos])


def test_path_ideal_small_cases():
    assert path_ideal(path_graph(4), 3) == I(X4, "x1*x2*x3", "x2*x3*x4")
    assert path_ideal(cycle_graph(3), 3).gens == (0b111,)
    assert path_ideal(path_graph(3), 4).is_zero


def test_basic_operations():
    a, b = I(X4, "x1*x2*x3"), I(X4, "x2*x3*x4")
    assert intersect(a, b) == I(X4, "x1*x2*x3*x4")
    assert colon_var(path_ideal(path_graph(4), 3), 1) == I(X4, "x1*x3", "x3*x4")
    assert scale(I(X4, "x3*x4"), 0b11) == I(X4, "x1*x2*x3*x4")
    assert (a + b).gens == (0b0111, 0b1110)


def test_zero_ideal_behaviour():
    z = SquarefreeIdeal.zero(X4)
    a = I(X4, "x1*x2")
    assert ideal_sum(z, a) == a
    assert intersect(z, a).is_zero
    assert colon_var(z, 0).is_zero and scale(z, 1).is_zero and partial_star(z).is_zero


def test_universe_mismatch():
    with pytest.raises(ValueError):
        ideal_sum(I(X4, "x1"), I(("a", "b"), "a"))


def test_minimalize_orders_and_prunes():
    assert minimalize([0b111, 0b11, 0b1100, 0b11]) == (0b11, 0b1100)


def test_serialization_uses_labels():
    assert path_ideal(path_graph(4), 3).to_lines() == ["x1*x2*x3", "x2*x3*x4"]


def test_colon_formula_examples():
    p4 = path_graph(4)
    assert colon_by_vertex_formula(p4, 1) == I(p4, "x1*x3", "x3*x4")
    c4 = cycle_graph(4)
    assert colon_by_vertex_formula(c4, 0) == I(c4, "v2*v4", "v2*v3", "v3*v4")
    star = edges("c-a c-b c-d")
    assert colon_by_vertex_formula(star, 0) == I(star, "a*b", "a*d", "b*d")


def test_partial_star_and_tor_check():
    names = ("x1", "x2", "x3")
    assert partial_star(I(names, "x1*x2*x3")) == I(names, "x1*x2", "x1*x3", "x2*x3")
    assert partial_star(I(names, "x1*x2", "x2*x3")) == I(names, "x1", "x2", "x3")
    # ∂*(x1x2x3) has x1x3, which (x1x2) does not contain
    assert not tor_vanishing_sufficient(I(names, "x1*x2*x3"), I(names, "x1*x2"))
    assert tor_vanishing_sufficient(I(names, "x1*x2*x3"), I(names, "x1*x2", "x1*x3", "x2*x3"))
    assert not tor_vanishing_sufficient(I(names, "x1*x2"), I(names, "x1*x2"))
    with pytest.raises(ValueError):
        tor_vanishing_sufficient(I(names, "x1"), I(names, "x2"))


def test_tor_check_on_scaled_ideal():
    names = ("x0", "a", "b", "c")
    u = I(names, "a*b", "b*c")
    # x0·a is in ∂*(x0·U) but not in U; adding the variable x0 fixes that
    assert not tor_vanishing_sufficient(scale(u, 1), u)
    assert tor_vanishing_sufficient(scale(u, 1), u + I(names, "x0"))


def test_leaf_split_p4():
    g = path_graph(4)
    parts = leaf_splitting(g, 0)
    assert parts.left == I(g, "x1*x2*x3")
    assert parts.right == I(g, "x2*x3*x4")
    assert parts.L == I(g, "x3*x4")
    assert parts.intersection == I(g, "x1*x2*x3*x4")
    assert parts.certified


def test_leaf_split_spider(spider):
    g = spider
    ctx = deepest_leaf(g, classify(g))
    parts = leaf_splitting(g, ctx)
    assert parts.left == I(g, "z0*y0*z1", "z0*y0*x0")
    assert parts.right == I(g, "w*x0*y0", "x0*y0*z1")
    assert parts.L == I(g, "x0*z1", "x0*w")
    assert parts.certified
    U, V = scaffold_level2(g, ctx)
    assert U.is_zero
    assert V == I(g, "x0*z1", "x0*w")


def test_scaffold_level2_chain():
    g = path_graph(5)
    ctx = deepest_leaf(g, classify(g))
    U, V = scaffold_level2(g, ctx)
    assert U.is_zero and ctx.s == 0
    assert ideal_sum(U, V) == leaf_splitting(g, ctx).L


def test_scaffold_level2_broom():
    g = edges("a-b b-x0 x0-y0 y0-z0 y0-z1 y0-z2")
    ctx = deepest_leaf(g, classify(g))
    assert ctx.s == 2
    U, V = scaffold_level2(g, ctx)
    assert U.contains(I(g, "z1*z2"))
    assert ideal_sum(U, V) == leaf_splitting(g, ctx).L
    assert intersect(U, V) == scale(U, 1 << ctx.anchor[0])


def test_scaffold_level1_c6_pendant():
    g = edges("v1-v2 v2-v3 v3-v4 v4-v5 v5-v6 v6-v1 v1-z")
    ctx = deepest_leaf(g, classify(g))
    X, Y, Z = scaffold_level1(g, ctx)
    assert X.is_zero
    # G_{z0,3} = {v4, v5} and G_{z0,4} = {v3, v4} carry no 3-path
    assert Y == I(g, "v2*v3")
    assert Z == I(g, "v6*v2", "v6*v5")
    parts = leaf_splitting(g, ctx)
    assert parts.left == I(g, "z*v1*v2", "z*v1*v6")
    cycle = sum(1 << i for i, v in enumerate(g.names) if v != "z")
    assert parts.right == path_ideal_on(g, cycle)
    assert ideal_sum(ideal_sum(X, Y), Z) == parts.L
    assert parts.certified


def test_scaffold_level1_two_leaves_on_c4():
    g = edges("v1-v2 v2-v3 v3-v4 v4-v1 v1-z0 v1-z1")
    ctx = deepest_leaf(g, classify(g))
    assert ctx.s == 1
    X, Y, Z = scaffold_level1(g, ctx)
    # G_{z0,2} = {v3} has no 3-path and s = 1 gives no z_i z_j term, so X = 0
    assert X.is_zero and not Y.is_zero and not Z.is_zero
    assert ideal_sum(ideal_sum(X, Y), Z) == leaf_splitting(g, ctx).L
    v2, vm = ctx.anchor
    XY = ideal_sum(X, Y)
    assert intersect(XY, Z) == scale(XY, 1 << vm)
    assert intersect(X, Y) == scale(X, 1 << v2)


def test_scaffold_level1_c5_children_are_edges():
    g = edges("v1-v2 v2-v3 v3-v4 v4-v5 v5-v1 v1-z")
    ctx = deepest_leaf(g, classify(g))
    kids = derived_subgraphs(g, ctx)
    assert path_ideal_on(g, kids[3]).is_zero and path_ideal_on(g, kids[4]).is_zero
    X, Y, Z = scaffold_level1(g, ctx)
    assert ideal_sum(ideal_sum(X, Y), Z) == leaf_splitting(g, ctx).L


def test_wrong_level_rejected(spider):
    ctx = deepest_leaf(spider, classify(spider))
    with pytest.raises(ValueError):
        scaffold_level1(spider, ctx)


def test_leaf_split_rejects_non_leaf():
    with pytest.raises(ValueError):
        leaf_splitting(path_graph(4), 1)


@settings(max_examples=60, deadline=None)
@given(st.one_of(trees(3, 11), unicyclic_graphs(3, 11)))
def test_colon_formula_for_every_vertex(g):
    whole = path_ideal(g, 3)
    for y in range(g.n):
        assert colon_by_vertex_formula(g, y) == colon_var(whole, y)


@settings(max_examples=60, deadline=None)
@given(st.one_of(trees(4, 12), unicyclic_graphs(4, 12)))
def test_leaf_split_identity_and_scaffolds(g):
    cs = classify(g)
    ctx = deepest_leaf(g, cs)
    if ctx is None or path_ideal(g, 3).is_zero:
        return
    parts = leaf_splitting(g, ctx)
    assert parts.certified
    if ctx.level >= 2:
        U, V = scaffold_level2(g, ctx)
        assert ideal_sum(U, V) == parts.L
        if ctx.s >= 1:
            assert intersect(U, V) == scale(U, 1 << ctx.anchor[0])
    else:
        X, Y, Z = scaffold_level1(g, ctx)
        XY = ideal_sum(X, Y)
        assert ideal_sum(XY, Z) == parts.L
        assert intersect(XY, Z) == scale(XY, 1 << ctx.anchor[1])
        if ctx.s >= 1:
            assert intersect(X, Y) == scale(X, 1 << ctx.anchor[0])


masks = st.lists(st.integers(1, 2**7 - 1), min_size=0, max_size=6)
NAMES = tuple(f"y{i}" for i in range(7))


@given(masks, masks, masks)
def test_sum_and_intersection_laws(a, b, c):
    A, B, C = (SquarefreeIdeal.of(NAMES, m) for m in (a, b, c))
    assert A + B == B + A and (A + B) + C == A + (B + C)
    assert A & B == B & A and (A & B) & C == A & (B & C)
    assert A & A == A
    for ideal in (A + B, A & B, partial_star(A)):
        gens = ideal.gens
        assert all(not (g & h == g) for g in gens for h in gens if g != h)


@given(masks, st.integers(0, 6))
def test_colon_var_is_a_colon(a, v):
    A = SquarefreeIdeal.of(NAMES, a)
    Q = colon_var(A, v)
    # f is in A:x iff x f is in A, checked on every squarefree monomial
    for m in range(1 << 7):
        assert Q.contains_monomial(m) == A.contains_monomial(m | 1 << v)


def test_bits_helper():
    assert list(bits(0b1011)) == [0, 1, 3]
