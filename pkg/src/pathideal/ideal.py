"""Squarefree monomial ideals and the splitting scaffolds for 3-path ideals.

A monomial is its support bit mask; an ideal is its minimal generating set.
The zero ideal is the empty generating set and every operation is total on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import (
    Graph,
    LeafContext,
    bits,
    delete,
    derived_subgraphs,
    enumerate_t_paths,
    mask_of,
    neighborhood,
)


def minimalize(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop every monomial divisible by another; sort by (degree, mask)."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda m: (m.bit_count(), m)):
        if not any(h & m == h for h in kept):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class SquarefreeIdeal:
    names: tuple[str, ...]
    gens: tuple[int, ...]

    @classmethod
    def of(cls, names: Iterable[str], masks: Iterable[int]) -> "SquarefreeIdeal":
        return cls(tuple(names), minimalize(masks))

    @classmethod
    def zero(cls, names: Iterable[str]) -> "SquarefreeIdeal":
        return cls(tuple(names), ())

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def support(self) -> int:
        out = 0
        for g in self.gens:
            out |= g
        return out

    def contains_monomial(self, m: int) -> bool:
        return any(g & m == g for g in self.gens)

    def contains(self, other: "SquarefreeIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.gens)

    def degrees(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.gens:
            out[g.bit_count()] = out.get(g.bit_count(), 0) + 1
        return out

    def monomial_str(self, m: int, sep: str = "*") -> str:
        return sep.join(self.names[v] for v in bits(m))

    def to_lines(self) -> list[str]:
        """One generator per line, variables in index order joined by ``*``."""
        return [self.monomial_str(g) for g in self.gens]

    def __add__(self, other: "SquarefreeIdeal") -> "SquarefreeIdeal":
        return ideal_sum(self, other)

    def __and__(self, other: "SquarefreeIdeal") -> "SquarefreeIdeal":
        return intersect(self, other)

    def __repr__(self):
        body = ", ".join(self.to_lines()) if self.gens else "0"
        return f"SquarefreeIdeal({body})"


def _check_universe(a: SquarefreeIdeal, b: SquarefreeIdeal):
    if a.names != b.names:
        raise ValueError("ideals live over different variable universes")


def ideal_sum(a: SquarefreeIdeal, b: SquarefreeIdeal) -> SquarefreeIdeal:
    _check_universe(a, b)
    return SquarefreeIdeal.of(a.names, a.gens + b.gens)


def intersect(a: SquarefreeIdeal, b: SquarefreeIdeal) -> SquarefreeIdeal:
    # lcm of squarefree monomials is the union of supports
    _check_universe(a, b)
    return SquarefreeIdeal.of(a.names, (f | g for f in a.gens for g in b.gens))


def colon_var(a: SquarefreeIdeal, v: int) -> SquarefreeIdeal:
    return SquarefreeIdeal.of(a.names, (g & ~(1 << v) for g in a.gens))


def scale(a: SquarefreeIdeal, m: int) -> SquarefreeIdeal:
    return SquarefreeIdeal.of(a.names, (g | m for g in a.gens))


def variables(names: Iterable[str], mask: int) -> SquarefreeIdeal:
    """The ideal generated by the variables in ``mask``."""
    return SquarefreeIdeal.of(names, (1 << v for v in bits(mask)))


def partial_star(a: SquarefreeIdeal) -> SquarefreeIdeal:
    """∂*(I): generated by f/x for minimal generators f and variables x | f."""
    return SquarefreeIdeal.of(a.names, (g & ~(1 << v) for g in a.gens for v in bits(g)))


def tor_vanishing_sufficient(a: SquarefreeIdeal, b: SquarefreeIdeal) -> bool:
    """∂*(a) ⊆ b, a sufficient condition for a ⊆ b to be Tor-vanishing."""
    if not b.contains(a):
        raise ValueError("tor_vanishing_sufficient needs a ⊆ b")
    return b.contains(partial_star(a))


# -- path ideals ---------------------------------------------------------------

def path_ideal(g: Graph, t: int) -> SquarefreeIdeal:
    return SquarefreeIdeal.of(g.names, enumerate_t_paths(g, t))


def path_ideal_on(g: Graph, keep: int, t: int = 3) -> SquarefreeIdeal:
    """``I_t(G[keep])`` written over the variables of ``g``."""
    sub = delete(g, g.vertices & ~keep)
    local = enumerate_t_paths(sub, t)
    old = list(bits(keep))
    return SquarefreeIdeal.of(g.names, (mask_of(old[v] for v in bits(p)) for p in local))


def colon_by_vertex_formula(g: Graph, y: int) -> SquarefreeIdeal:
    """``I_3(G) : y`` assembled from the neighborhood of ``y``."""
    ny = g.nbr[y]
    closed = ny | 1 << y
    gens = [1 << u | 1 << v for u, v in combinations(bits(ny), 2)]
    for u in bits(ny):
        gens += [1 << u | 1 << w for w in bits(g.nbr[u] & ~closed)]
    rest = path_ideal_on(g, g.vertices & ~closed)
    return SquarefreeIdeal.of(g.names, gens + list(rest.gens))


@dataclass(frozen=True)
class SplitParts:
    """``I_3(G) = left + right`` for a leaf ``z0`` with neighbor ``y0``.

    ``left = z0 y0 J``, ``right = I_3(G \\ z0)``, ``intersection = z0 y0 L``.
    ``tor_checks`` records, per inclusion of the intersection, whether the
    ∂* criterion settled it syntactically or it is left to the Betti oracle.
    """

    left: SquarefreeIdeal
    right: SquarefreeIdeal
    intersection: SquarefreeIdeal
    J: SquarefreeIdeal
    L: SquarefreeIdeal
    certified: bool
    tor_checks: dict


def leaf_L(g: Graph, z0: int, y0: int) -> SquarefreeIdeal:
    """L(z0): the colon-side ideal with z0 y0 L = z0 y0 J ∩ I_3(G \\ z0)."""
    rest = g.nbr[y0] & ~(1 << z0)
    closed_y0 = g.nbr[y0] | 1 << y0
    gens = [1 << u | 1 << v for u, v in combinations(bits(rest), 2)]
    for u in bits(rest):
        gens += [1 << u | 1 << w for w in bits(g.nbr[u] & ~closed_y0)]
        g_u = g.vertices & ~neighborhood(g, 1 << u | 1 << y0, closed=True)
        gens += [p | 1 << u for p in path_ideal_on(g, g_u).gens]
    return SquarefreeIdeal.of(g.names, gens)


def leaf_splitting(g: Graph, leaf: LeafContext | int) -> SplitParts:
    """Split ``I_3(G)`` along a leaf (a vertex index or a ``LeafContext``)."""
    z0 = leaf.z0 if isinstance(leaf, LeafContext) else leaf
    if g.degree(z0) != 1:
        raise ValueError(f"{g.names[z0]} is not a leaf")
    (y0,) = g.neighbors(z0)
    whole = path_ideal(g, 3)
    if whole.is_zero:
        raise ValueError("I_3(G) is zero")
    zy = 1 << z0 | 1 << y0
    J = variables(g.names, g.nbr[y0] & ~(1 << z0))
    left = scale(J, zy)
    right = path_ideal_on(g, g.vertices & ~(1 << z0))
    L = leaf_L(g, z0, y0)
    inter = scale(L, zy)
    identity = inter == intersect(left, right) and ideal_sum(left, right) == whole
    checks = {}
    for name, big in (("intersection->left", left), ("intersection->right", right)):
        if not big.contains(inter):
            checks[name] = "not-contained"
        elif inter.is_zero or tor_vanishing_sufficient(inter, big):
            checks[name] = "syntactic"
        else:
            checks[name] = "oracle-deferred"
    return SplitParts(left, right, inter, J, L, identity, checks)


def scaffold_level2(g: Graph, ctx: LeafContext) -> tuple[SquarefreeIdeal, SquarefreeIdeal]:
    """U and V with L(z0) = U + V when level(z0) >= 2."""
    if ctx.level < 2:
        raise ValueError("scaffold_level2 needs a leaf of level at least 2")
    (x0,) = ctx.anchor
    kids = derived_subgraphs(g, ctx)
    names = g.names
    zs = mask_of(ctx.siblings)
    U = ideal_sum(
        SquarefreeIdeal.of(names, (1 << a | 1 << b for a, b in combinations(ctx.siblings, 2))),
        _times_vars(path_ideal_on(g, kids[2]), zs),
    )
    V = scale(
        ideal_sum(variables(names, zs | g.nbr[x0] & ~(1 << ctx.y0)), path_ideal_on(g, kids[3])),
        1 << x0,
    )
    return U, V


def scaffold_level1(g: Graph, ctx: LeafContext) -> tuple[SquarefreeIdeal, SquarefreeIdeal, SquarefreeIdeal]:
    """X, Y, Z with L(z0) = X + Y + Z when z0 hangs off the cycle vertex v1."""
    if ctx.level != 1 or not ctx.cycle:
        raise ValueError("scaffold_level1 needs a level-1 leaf on a unicyclic graph")
    v1, (v2, vm) = ctx.y0, ctx.anchor
    kids = derived_subgraphs(g, ctx)
    names = g.names
    zs = mask_of(ctx.siblings)
    closed_v1 = g.nbr[v1] | 1 << v1
    X = ideal_sum(
        SquarefreeIdeal.of(names, (1 << a | 1 << b for a, b in combinations(ctx.siblings, 2))),
        _times_vars(path_ideal_on(g, kids[2]), zs),
    )
    Y = scale(
        ideal_sum(variables(names, zs | g.nbr[v2] & ~closed_v1), path_ideal_on(g, kids[3])),
        1 << v2,
    )
    Z = scale(
        ideal_sum(variables(names, zs | 1 << v2 | g.nbr[vm] & ~closed_v1), path_ideal_on(g, kids[4])),
        1 << vm,
    )
    return X, Y, Z


def _times_vars(a: SquarefreeIdeal, mask: int) -> SquarefreeIdeal:
    """(variables in mask) · a."""
    return SquarefreeIdeal.of(a.names, (g | 1 << v for g in a.gens for v in bits(mask)))
