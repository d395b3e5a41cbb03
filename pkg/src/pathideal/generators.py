"""Seeded random trees and unicyclic graphs.

Every instance gets its own ``random.Random`` derived from ``(seed, index)``,
so a stream is reproducible and any single instance can be regenerated alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .graph import Graph, classify
from .matching import is_3_proximal, nu3_recursive

BRANCHES = ("+2", "+1", "+0")


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}/{index}")


def _names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree on ``n`` vertices via a random Prüfer sequence."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    if n <= 2:
        edges = [(0, 1)] if n == 2 else []
    else:
        t = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
        edges = sorted(tuple(sorted(e)) for e in t.edges())
    return Graph.from_edges(edges, n=n, names=_names(n))


def random_unicyclic(n: int, rng: random.Random) -> Graph:
    """A random tree plus one uniformly chosen non-edge."""
    if n < 3:
        raise ValueError("a unicyclic graph needs at least three vertices")
    tree = random_tree(n, rng)
    non_edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not tree.nbr[u] >> v & 1]
    extra = rng.choice(non_edges)
    return Graph.from_edges(sorted(tree.edges() + [extra]), n=n, names=_names(n))


def branch_of(g: Graph) -> str:
    """Which closed-form regularity branch a connected unicyclic graph falls in."""
    from .invariants import closed_form_branch

    cs = classify(g)
    return closed_form_branch(cs.m, is_3_proximal(g) if cs.m > 3 else None)


def three_path_nonzero(g: Graph) -> bool:
    # a connected graph has a 3-path iff some vertex has degree >= 2
    return any(g.degree(v) >= 2 for v in range(g.n))


@dataclass(frozen=True)
class GenConfig:
    family: str = "tree"
    n_min: int = 5
    n_max: int = 12
    count: int = 10
    seed: int = 0
    include_triangles: bool = False
    balance_branches: bool = True
    max_tries: int = 20000


def generate(cfg: GenConfig, index: int) -> Graph:
    """Instance ``index`` of the stream described by ``cfg``.

    Trees are redrawn until I_3 is nonzero. Unicyclic graphs are redrawn
    until the cycle has length at least 4 (unless triangles are included)
    and, with ``balance_branches``, until they land in branch
    ``BRANCHES[index % 3]``.
    """
    rng = instance_rng(cfg.seed, index)
    for _ in range(cfg.max_tries):
        n = rng.randint(cfg.n_min, cfg.n_max)
        if cfg.family == "tree":
            g = random_tree(n, rng)
            if three_path_nonzero(g):
                return g
            continue
        if cfg.family != "unicyclic":
            raise ValueError(f"unknown family {cfg.family!r}")
        g = random_unicyclic(n, rng)
        m = classify(g).m
        if m == 3:
            if cfg.include_triangles:
                return g
            continue
        if not cfg.balance_branches:
            return g
        target = BRANCHES[index % 3]
        # cheap filter on m mod 4 before the proximality test
        if target != "+0" and m % 4 != {"+2": 3, "+1": 2}[target]:
            continue
        if target == "+0" and m % 4 in (0, 1):
            return g
        if branch_of(g) == target:
            return g
    raise RuntimeError(f"no instance found for index {index} after {cfg.max_tries} draws")


def stream(cfg: GenConfig):
    for i in range(cfg.count):
        yield i, generate(cfg, i)


__all__ = [
    "BRANCHES", "GenConfig", "branch_of", "generate", "instance_rng", "random_tree",
    "random_unicyclic", "stream", "three_path_nonzero", "nu3_recursive",
]
