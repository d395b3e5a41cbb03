from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from pathideal.graph import Graph, parse_graph

DATA = Path(__file__).resolve().parent.parent / "data"


def tree_from_prufer(seq: list[int], n: int) -> Graph:
    if n == 1:
        return Graph.from_edges([], n=1)
    if n == 2:
        return Graph.from_edges([(0, 1)], n=2)
    return Graph.from_edges(sorted(nx.from_prufer_sequence(seq).edges()), n=n)


@st.composite
def trees(draw, min_n=3, max_n=10):
    n = draw(st.integers(min_n, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    return tree_from_prufer(seq, n)


@st.composite
def unicyclic_graphs(draw, min_n=4, max_n=10, min_cycle=3):
    t = draw(trees(min_n, max_n))
    non_edges = [(u, v) for u in range(t.n) for v in range(u + 1, t.n) if not t.nbr[u] >> v & 1]
    u, v = draw(st.sampled_from(non_edges))
    g = Graph.from_edges(t.edges() + [(u, v)], n=t.n)
    from pathideal.graph import classify

    from hypothesis import assume

    assume(classify(g).m >= min_cycle)
    return g


def edges(text: str) -> Graph:
    """'a-b c-d' shorthand."""
    return parse_graph("\n".join(e.replace("-", " ") for e in text.split()))


@pytest.fixture(scope="session")
def big_unicyclic() -> Graph:
    return parse_graph((DATA / "unicyclic23.edges").read_text())


@pytest.fixture
def spider() -> Graph:
    # w - x0 - y0 with two leaves z0, z1 on y0
    return edges("w-x0 x0-y0 y0-z0 y0-z1")
