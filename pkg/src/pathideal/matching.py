"""t-path induced matching numbers.

``nu_t_bruteforce`` is an exhaustive search usable for any t. ``nu3_recursive``
follows the deepest-leaf recursion for t = 3 with closed forms for bare paths
and cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetError, GraphError
from .graph import (
    Graph,
    bits,
    boundary_and_gamma,
    classify,
    components,
    deepest_leaf,
    derived_subgraphs,
    enumerate_t_paths,
    induced_subgraph,
    neighborhood,
)

BRUTEFORCE_LIMIT = 32
RECURSION_BRUTE_N = 8


@dataclass(frozen=True)
class MatchingResult:
    value: int
    witness: tuple[int, ...] = ()


def induces_path(g: Graph, support: int) -> bool:
    """Whether ``G[support]`` is a path (connected, |U|-1 edges, max degree 2)."""
    degs = [(g.nbr[v] & support).bit_count() for v in bits(support)]
    if sum(degs) != 2 * (len(degs) - 1) or max(degs, default=0) > 2:
        return False
    if len(degs) == 1:
        return True
    seen = frontier = support & -support
    while frontier:
        frontier = neighborhood(g, frontier) & support & ~seen
        seen |= frontier
    return seen == support


def path_order(g: Graph, support: int) -> list[int]:
    """Vertices of an induced path listed from one end to the other."""
    if not support:
        return []
    start = next(v for v in bits(support) if (g.nbr[v] & support).bit_count() <= 1)
    order, seen = [start], 1 << start
    while seen != support:
        nxt = g.nbr[order[-1]] & support & ~seen
        v = (nxt & -nxt).bit_length() - 1
        order.append(v)
        seen |= 1 << v
    return order


def is_induced_matching(g: Graph, paths: tuple[int, ...] | list[int], t: int) -> bool:
    """Check the union of ``paths`` induces exactly their disjoint union."""
    union = 0
    for p in paths:
        if p.bit_count() != t or p & union:
            return False
        union |= p
    induced_edges = sum((g.nbr[v] & union).bit_count() for v in bits(union)) // 2
    if induced_edges != len(paths) * (t - 1):
        return False
    return all(induces_path(g, p) for p in paths)


def nu_t_bruteforce(g: Graph, t: int, limit: int = BRUTEFORCE_LIMIT) -> MatchingResult:
    if t < 2:
        raise ValueError("t must be at least 2")
    if g.n > limit:
        raise BudgetError(f"brute-force matching refused: {g.n} vertices > limit {limit}")
    cands = [p for p in enumerate_t_paths(g, t) if induces_path(g, p)]
    through: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for p in cands:
        closed = neighborhood(g, p, closed=True)
        for v in bits(p):
            through[v].append((p, closed))

    @lru_cache(maxsize=None)
    def best(avail: int) -> tuple[int, int]:
        # returns (value, chosen path through the lowest available vertex or 0)
        if avail.bit_count() < t:
            return 0, 0
        v = (avail & -avail).bit_length() - 1
        value, choice = best(avail & ~(1 << v))[0], 0
        for p, closed in through[v]:
            if p & ~avail:
                continue
            cand = 1 + best(avail & ~closed)[0]
            if cand > value:
                value, choice = cand, p
        return value, choice

    avail = g.vertices
    value = best(avail)[0]
    witness = []
    while avail:
        _, p = best(avail)
        if p:
            witness.append(p)
            avail &= ~neighborhood(g, p, closed=True)
        else:
            avail &= avail - 1
    best.cache_clear()
    return MatchingResult(value, tuple(sorted(witness)))


def path_nu3(m: int) -> int:
    return (m + 1) // 4


def cycle_nu3(m: int) -> int:
    if m < 4:
        raise ValueError("closed form needs a cycle of length at least 4")
    return m // 4


def nu3_recursive(g: Graph, memo: dict[int, int] | None = None) -> int:
    """ν₃ of a graph whose components are trees or unicyclic.

    ``memo`` maps root-graph vertex masks to values and may be shared across
    calls on induced subgraphs of the same root graph.
    """
    if memo is None:
        memo = {}
    total = 0
    for comp in components(g):
        sub, _ = induced_subgraph(g, comp)
        total += _nu3_connected(sub, memo)
    return total


def _nu3_connected(g: Graph, memo: dict[int, int]) -> int:
    key = g.root_mask()
    if key in memo:
        return memo[key]
    cs = classify(g)
    if cs.kind == "other":
        raise GraphError("component is neither tree nor unicyclic")
    if g.n < 3:
        value = 0
    elif g.n <= RECURSION_BRUTE_N or cs.m == 3:
        value = nu_t_bruteforce(g, 3).value
    elif cs.kind == "forest" and all(g.degree(v) <= 2 for v in range(g.n)):
        value = path_nu3(g.n)
    elif cs.kind == "unicyclic" and g.n == cs.m:
        value = cycle_nu3(g.n)
    else:
        ctx = deepest_leaf(g, cs)
        kids = derived_subgraphs(g, ctx)

        def nu(j):
            return nu3_recursive(induced_subgraph(g, kids[j])[0], memo)

        options = [nu(1)]
        if ctx.s >= 1:
            options.append(1 + nu(2))
        elif ctx.level >= 2:
            options.append(1 + nu(3))
        else:
            options += [1 + nu(3), 1 + nu(4)]
        value = max(options)
    memo[key] = value
    return value


def is_3_proximal(g: Graph, memo: dict[int, int] | None = None) -> bool:
    """ν₃(G) == ν₃(Γ_G(C)) for a connected unicyclic graph."""
    cs = classify(g)
    if cs.kind != "unicyclic" or len(components(g)) != 1:
        raise GraphError("proximality is defined for connected unicyclic graphs")
    if memo is None:
        memo = {}
    _, gamma = boundary_and_gamma(g, cs)
    return nu3_recursive(g, memo) == nu3_recursive(gamma, memo)


def is_t_proximal(g: Graph, t: int) -> bool:
    cs = classify(g)
    if cs.kind != "unicyclic" or len(components(g)) != 1:
        raise GraphError("proximality is defined for connected unicyclic graphs")
    _, gamma = boundary_and_gamma(g, cs)
    return nu_t_bruteforce(g, t).value == nu_t_bruteforce(gamma, t).value
