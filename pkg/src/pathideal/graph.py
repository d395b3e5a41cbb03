"""Labeled simple graphs, structural classification and t-path enumeration.

Vertex subsets are plain ``int`` bit masks over vertex indices; they are the
keys for induced subgraphs and the supports of squarefree monomials.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphError

MAX_VERTICES = 63


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``nbr[v]`` is the neighbor bit mask of ``v``. ``origin[v]`` is the index of
    ``v`` in the graph this one was (transitively) induced from, so that every
    recursion child can be keyed by a mask over the root graph.
    """

    names: tuple[str, ...]
    nbr: tuple[int, ...]
    origin: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.names)
        if len(self.nbr) != n:
            raise GraphError("adjacency and name table differ in length")
        if n > MAX_VERTICES:
            raise GraphError(f"graph has {n} vertices; at most {MAX_VERTICES} supported")
        if not self.origin:
            object.__setattr__(self, "origin", tuple(range(n)))
        full = (1 << n) - 1
        for v, m in enumerate(self.nbr):
            if m >> v & 1:
                raise GraphError(f"self-loop at {self.names[v]!r}")
            if m & ~full:
                raise GraphError("neighbor mask outside the vertex range")
            for u in bits(m):
                if not self.nbr[u] >> v & 1:
                    raise GraphError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None,
                   names: Sequence[str] | None = None) -> "Graph":
        edges = list(edges)
        if n is None:
            n = len(names) if names is not None else 1 + max((max(e) for e in edges), default=-1)
        if names is None:
            names = [str(i) for i in range(n)]
        nbr = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {names[u]!r}")
            if nbr[u] >> v & 1:
                raise GraphError(f"duplicate edge {names[u]}-{names[v]}")
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return cls(tuple(names), tuple(nbr))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def vertices(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.nbr[v]))

    def degree(self, v: int) -> int:
        return self.nbr[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.nbr[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.nbr) // 2

    def root_mask(self, mask: int | None = None) -> int:
        """Translate a local vertex mask into a mask over the root graph."""
        if mask is None:
            mask = self.vertices
        return mask_of(self.origin[v] for v in bits(mask))

    def to_edge_list(self) -> str:
        lines = [f"{self.names[u]} {self.names[v]}" for u, v in self.edges()]
        isolated = [self.names[v] for v in range(self.n) if not self.nbr[v]]
        if isolated:
            lines.append("# isolated: " + " ".join(isolated))
        return "\n".join(lines) + "\n"


# -- ingestion ---------------------------------------------------------------

def _looks_like_graph6(lines: list[str]) -> bool:
    if len(lines) != 1:
        return False
    s = lines[0]
    if s.startswith(">>graph6<<"):
        return True
    return len(s.split()) == 1 and all(63 <= ord(c) <= 126 for c in s)


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse an edge list (``u v`` per line, ``#`` comments) or a graph6 string.

    Labels are interned in first-appearance order. A ``# isolated: a b``
    comment line declares isolated vertices, which is how ``to_edge_list``
    round-trips them.
    """
    raw = text.splitlines()
    payload = [ln.split("#", 1)[0].strip() for ln in raw]
    if fmt == "graph6" or (fmt == "auto" and _looks_like_graph6([p for p in payload if p])):
        return _parse_graph6(next(p for p in payload if p))
    if fmt not in ("auto", "edges"):
        raise GraphError(f"unknown graph format {fmt!r}")

    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def intern(label: str) -> int:
        if label not in index:
            index[label] = len(index)
        return index[label]

    for lineno, (line, body) in enumerate(zip(raw, payload), start=1):
        stripped = line.strip()
        if stripped.startswith("# isolated:"):
            for label in stripped[len("# isolated:"):].split():
                intern(label)
            continue
        if not body:
            continue
        toks = body.split()
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {body!r}")
        u, v = intern(toks[0]), intern(toks[1])
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {toks[0]!r}")
        edges.append((u, v))
        if len(index) > MAX_VERTICES:
            raise GraphError(f"line {lineno}: more than {MAX_VERTICES} vertices")
    names = [None] * len(index)
    for label, i in index.items():
        names[i] = label
    return Graph.from_edges(edges, names=names)


def _parse_graph6(s: str) -> Graph:
    import networkx as nx

    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        h = nx.from_graph6_bytes(s.encode("ascii"))
    except Exception as exc:  # networkx raises a mix of types here
        raise GraphError(f"invalid graph6 payload: {exc}") from None
    if h.number_of_nodes() > MAX_VERTICES:
        raise GraphError(f"graph has {h.number_of_nodes()} vertices; at most {MAX_VERTICES} supported")
    return Graph.from_edges(h.edges(), n=h.number_of_nodes())


def path_graph(m: int, prefix: str = "x") -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(m - 1)], n=m,
                            names=[f"{prefix}{i + 1}" for i in range(m)])


def cycle_graph(m: int, prefix: str = "v") -> Graph:
    return Graph.from_edges([(i, (i + 1) % m) for i in range(m)], n=m,
                            names=[f"{prefix}{i + 1}" for i in range(m)])


# -- subgraphs and neighborhoods ---------------------------------------------

def induced_subgraph(g: Graph, keep: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``keep``; returns it with ``new index -> old index``."""
    if keep & ~g.vertices:
        raise GraphError("vertex set is not contained in the graph")
    old = list(bits(keep))
    pos = {v: i for i, v in enumerate(old)}
    nbr = []
    for v in old:
        nbr.append(mask_of(pos[u] for u in bits(g.nbr[v] & keep)))
    sub = Graph(tuple(g.names[v] for v in old), tuple(nbr), tuple(g.origin[v] for v in old))
    return sub, old


def delete(g: Graph, drop: int) -> Graph:
    """``G \\ U``: the induced subgraph on the complement of ``drop``."""
    return induced_subgraph(g, g.vertices & ~drop)[0]


def neighborhood(g: Graph, u: int, closed: bool = False) -> int:
    out = 0
    for v in bits(u):
        out |= g.nbr[v]
    return out | u if closed else out


def components(g: Graph) -> list[int]:
    """Connected components as masks, ordered by smallest member."""
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = neighborhood(g, frontier) & ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        comps.append(comp)
    return comps


def enumerate_t_paths(g: Graph, t: int) -> set[int]:
    """Supports of all t-paths, deduplicated (reversals and equal supports)."""
    if t < 2:
        raise ValueError("t must be at least 2")
    out: set[int] = set()

    def extend(v: int, used: int, length: int):
        if length == t:
            out.add(used)
            return
        for u in bits(g.nbr[v] & ~used):
            extend(u, used | 1 << u, length + 1)

    for v in range(g.n):
        extend(v, 1 << v, 1)
    return out


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class CycleStructure:
    """Forest / unicyclic decomposition with rooted-tree levels.

    ``cycles`` lists one ordered vertex tuple per cyclic component. Every
    vertex gets a ``root`` (its cycle attachment vertex, or its tree's chosen
    root), a ``parent`` (-1 at roots) and a ``level``.
    """

    kind: str
    cycles: tuple[tuple[int, ...], ...]
    comps: tuple[int, ...]
    root: tuple[int, ...]
    parent: tuple[int, ...]
    level: tuple[int, ...]

    @property
    def cycle(self) -> tuple[int, ...]:
        if len(self.cycles) != 1:
            raise GraphError(f"expected exactly one cycle, found {len(self.cycles)}")
        return self.cycles[0]

    @property
    def m(self) -> int:
        """Cycle length, with the tree convention m = 1."""
        return len(self.cycles[0]) if len(self.cycles) == 1 else 1

    def tree(self, r: int) -> int:
        return mask_of(v for v in range(len(self.root)) if self.root[v] == r)


def _bfs(g: Graph, sources: Sequence[int], within: int) -> tuple[dict[int, int], dict[int, int]]:
    dist = {s: 0 for s in sources}
    parent = {s: -1 for s in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        for u in bits(g.nbr[v] & within):
            if u not in dist:
                dist[u] = dist[v] + 1
                parent[u] = v
                queue.append(u)
    return dist, parent


def _cycle_order(g: Graph, core: int) -> tuple[int, ...]:
    start = (core & -core).bit_length() - 1
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [u for u in bits(g.nbr[cur] & core) if u != prev]
        step = min(nxt)
        if step == start:
            break
        order.append(step)
        prev, cur = cur, step
    return tuple(order)


def classify(g: Graph) -> CycleStructure:
    n = g.n
    root = [-1] * n
    parent = [-1] * n
    level = [0] * n
    cycles = []
    kind = "forest"
    comps = components(g)
    for comp in comps:
        verts = list(bits(comp))
        edge_count = sum((g.nbr[v] & comp).bit_count() for v in verts) // 2
        if edge_count > len(verts):
            kind = "other"
            continue
        if edge_count == len(verts):
            # strip leaves until only the cycle is left
            core = comp
            changed = True
            while changed:
                changed = False
                for v in bits(core):
                    if (g.nbr[v] & core).bit_count() <= 1:
                        core &= ~(1 << v)
                        changed = True
            cyc = _cycle_order(g, core)
            cycles.append(cyc)
            if kind == "forest":
                kind = "unicyclic"
            dist, par = _bfs(g, list(cyc), comp)
        else:
            dist, par = _bfs(g, [_diameter_endpoint(g, comp)], comp)
        for v in verts:
            level[v] = dist[v]
            parent[v] = par[v]
            w = v
            while par[w] != -1:
                w = par[w]
            root[v] = w
    if kind == "other":
        cycles = []
    return CycleStructure(kind, tuple(cycles), tuple(comps), tuple(root), tuple(parent), tuple(level))


def _diameter_endpoint(g: Graph, comp: int) -> int:
    ecc = {}
    for v in bits(comp):
        dist, _ = _bfs(g, [v], comp)
        ecc[v] = max(dist.values())
    diam = max(ecc.values())
    return min(v for v, e in ecc.items() if e == diam)


# -- deepest leaf ------------------------------------------------------------

@dataclass(frozen=True)
class LeafContext:
    """A deepest leaf ``z0`` with its neighbor ``y0`` and the sibling leaves.

    ``anchor`` is ``(x0,)`` when ``level >= 2`` and ``(v2, vm)`` in the
    level-1 case, where ``v1 = y0`` is the cycle vertex ``z0`` hangs off.
    """

    z0: int
    y0: int
    siblings: tuple[int, ...]
    anchor: tuple[int, ...]
    level: int
    cycle: tuple[int, ...] = ()

    @property
    def s(self) -> int:
        return len(self.siblings)

    @property
    def leaves(self) -> int:
        return mask_of((self.z0,) + self.siblings)


def deepest_leaf(g: Graph, cs: CycleStructure) -> LeafContext | None:
    if cs.kind == "other":
        raise GraphError("deepest_leaf needs a forest or a unicyclic graph")
    on_cycle = mask_of(v for c in cs.cycles for v in c)
    best = None
    for v in range(g.n):
        if on_cycle >> v & 1 or g.degree(v) != 1 or cs.level[v] == 0:
            continue
        in_tree = not (on_cycle >> cs.root[v] & 1)
        if in_tree and cs.level[v] < 2:
            continue
        if best is None or cs.level[v] > cs.level[best]:
            best = v
    if best is None:
        return None
    z0 = best
    y0 = cs.parent[z0]
    siblings = tuple(u for u in g.neighbors(y0) if u != z0 and cs.parent[u] == y0)
    if cs.level[z0] >= 2:
        return LeafContext(z0, y0, siblings, (cs.parent[y0],), cs.level[z0])
    # level 1: y0 = v1 on the cycle; rotate so v2 is the smaller cycle neighbor
    cyc = next(c for c in cs.cycles if y0 in c)
    m = len(cyc)
    i = cyc.index(y0)
    fwd, back = cyc[(i + 1) % m], cyc[(i - 1) % m]
    if fwd < back:
        rotated = tuple(cyc[(i + k) % m] for k in range(m))
    else:
        rotated = tuple(cyc[(i - k) % m] for k in range(m))
    return LeafContext(z0, y0, siblings, (rotated[1], rotated[-1]), 1, rotated)


def boundary_and_gamma(g: Graph, cs: CycleStructure) -> tuple[int, Graph]:
    """``∂(C) = N(C) \\ C`` and the induced subgraph on its complement."""
    if cs.kind != "unicyclic":
        raise GraphError("boundary_and_gamma needs a unicyclic graph")
    c = mask_of(cs.cycle)
    boundary = neighborhood(g, c) & ~c
    return boundary, delete(g, boundary)


def derived_subgraphs(g: Graph, ctx: LeafContext) -> dict[int, int]:
    """Vertex masks of the recursion children ``G_{z0,j}`` for a deepest leaf.

    Keys 1..3 at level >= 2; keys 1..4 at level 1 (``v1 = y0``).
    """
    full = g.vertices
    y0 = 1 << ctx.y0
    out = {
        1: full & ~ctx.leaves,
        2: full & ~neighborhood(g, y0, closed=True),
    }
    if ctx.level >= 2:
        (x0,) = ctx.anchor
        out[3] = full & ~neighborhood(g, y0 | 1 << x0, closed=True)
    else:
        v2, vm = ctx.anchor
        out[3] = full & ~neighborhood(g, y0 | 1 << v2, closed=True)
        out[4] = full & ~neighborhood(g, y0 | 1 << vm, closed=True)
    return out
