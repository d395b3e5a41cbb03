"""Graded Betti tables of squarefree monomial ideals via Hochster's formula.

For a squarefree ideal I, the multigraded Betti number of S/I in the degree
of a vertex set W is the reduced homology of the induced subcomplex Δ_W of
the Stanley–Reisner complex, shifted by |W|. Only W in the lcm lattice (unions
of generator supports) can contribute. Homology is taken over GF(p).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from dataclasses import field as dc_field

from .errors import BudgetError
from .graph import bits
from .ideal import SquarefreeIdeal, ideal_sum, intersect

DEFAULT_LATTICE_BUDGET = 5_000_000
DEFAULT_FACE_BUDGET = 1 << 22


@dataclass(frozen=True)
class BettiTable:
    """``entries[(i, j)] = β_{i,j}(I)`` for the ideal I (not S/I)."""

    entries: dict[tuple[int, int], int]
    field: int = 2
    ideal_degrees: dict[int, int] = dc_field(default_factory=dict)

    def beta(self, i: int, j: int | None = None) -> int:
        if j is not None:
            return self.entries.get((i, j), 0)
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def quotient_beta(self, i: int, j: int | None = None) -> int:
        """β(S/I), with β_{0,0}(S/I) = 1."""
        if i == 0:
            return 1 if j in (None, 0) else 0
        return self.beta(i - 1, j)

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        return max(j - i for i, j in self.entries)

    @property
    def pd_quotient(self) -> int:
        return self.pd + 1

    @property
    def reg_quotient(self) -> int:
        return self.reg - 1

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), b in self.entries.items():
            out[i] = out.get(i, 0) + b
        return out

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "ideal_degrees": {str(k): v for k, v in sorted(self.ideal_degrees.items())},
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
            "pd_ideal": self.pd,
            "reg_ideal": self.reg,
            "pd_quotient": self.pd_quotient,
            "reg_quotient": self.reg_quotient,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def format(self) -> str:
        """Macaulay2-style table for S/I: rows j - i, columns i."""
        cols = self.pd_quotient + 1
        rows = {0: {0: 1}}
        for (i, j), b in self.entries.items():
            rows.setdefault(j - i - 1, {})[i + 1] = b
        width = max(len(str(b)) for r in rows.values() for b in r.values()) + 1
        out = ["     " + "".join(f"{c:>{width}}" for c in range(cols))]
        for r in range(max(rows) + 1):
            cells = "".join(f"{rows.get(r, {}).get(c, '.'):>{width}}" for c in range(cols))
            out.append(f"{r:>3}: {cells}")
        return "\n".join(out)


@dataclass(frozen=True)
class PdReg:
    pd_ideal: int
    reg_ideal: int
    pd_quotient: int
    reg_quotient: int


# -- linear algebra over GF(p) ----------------------------------------------

def _reduce_gf2(columns: list[int]) -> set[int]:
    """Column reduction over GF(2) with lowest-one = highest set bit; returns the pivots."""
    pivots: dict[int, int] = {}
    for col in columns:
        while col:
            low = col.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            col ^= other
    return set(pivots)


def _reduce_modp(columns: list[dict[int, int]], p: int) -> set[int]:
    pivots: dict[int, dict[int, int]] = {}
    for col in columns:
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                inv = pow(col[low], p - 2, p)
                pivots[low] = {k: v * inv % p for k, v in col.items()}
                break
            f = col[low]
            for k, v in other.items():
                nv = (col.get(k, 0) - f * v) % p
                if nv:
                    col[k] = nv
                else:
                    del col[k]
    return set(pivots)


def _boundary_columns(faces: list[int], index: dict[int, int], p: int) -> list:
    if p == 2:
        cols = []
        for f in faces:
            c = 0
            for v in bits(f):
                c |= 1 << index[f & ~(1 << v)]
            cols.append(c)
        return cols
    cols = []
    for f in faces:
        col = {}
        for pos, v in enumerate(bits(f)):
            col[index[f & ~(1 << v)]] = 1 if pos % 2 == 0 else p - 1
        cols.append(col)
    return cols


def reduced_homology(faces_by_dim: dict[int, list[int]], p: int) -> dict[int, int]:
    """dim H̃_k over GF(p) for a complex given by faces grouped by dimension.

    ``faces_by_dim[-1]`` must hold the empty face. Dimensions are reduced from
    the top down; a k-face that is a pivot of the (k+1)-boundary has a column
    in the k-boundary that reduces to zero, so it is skipped.
    """
    top = max(faces_by_dim)
    ranks: dict[int, int] = {}
    cleared: set[int] = set()
    for k in range(top, 0 - 1, -1):
        faces = faces_by_dim.get(k, [])
        below = faces_by_dim.get(k - 1, [])
        index = {f: i for i, f in enumerate(below)}
        live = [f for i, f in enumerate(faces) if i not in cleared]
        cols = _boundary_columns(live, index, p)
        cleared = _reduce_gf2(cols) if p == 2 else _reduce_modp(cols, p)
        ranks[k] = len(cleared)
    out = {}
    for k in range(-1, top + 1):
        h = len(faces_by_dim.get(k, ())) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


# -- Stanley–Reisner slices --------------------------------------------------

def _faces(ground: int, gens: list[int], budget: int) -> list[int]:
    """Subsets of ``ground`` containing no generator (the complex Δ restricted to ground)."""
    verts = list(bits(ground))
    # adding v to a face f creates a generator g ∋ v exactly when g \ v ⊆ f
    rests = {v: [g & ~(1 << v) for g in gens if g >> v & 1] for v in verts}
    out = []

    def grow(i: int, face: int):
        out.append(face)
        if len(out) > budget:
            raise BudgetError(f"simplicial complex exceeds {budget} faces")
        for k in range(i, len(verts)):
            v = verts[k]
            for r in rests[v]:
                if r & face == r:
                    break
            else:
                grow(k + 1, face | 1 << v)

    grow(0, 0)
    return out


def _group(faces: list[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for f in faces:
        out.setdefault(f.bit_count() - 1, []).append(f)
    return out


_slice_cache: dict[tuple, dict[int, int]] = {}
CACHE_LIMIT = 500_000


def _blocks(gens: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]]:
    """Group generators into classes of the 'shares a variable' relation."""
    blocks: list[tuple[int, list[int]]] = []
    for g in gens:
        merged_mask, merged = g, [g]
        rest = []
        for mask, members in blocks:
            if mask & merged_mask:
                merged_mask |= mask
                merged += members
            else:
                rest.append((mask, members))
        # a later block may now touch the grown mask
        changed = True
        while changed:
            changed = False
            keep = []
            for mask, members in rest:
                if mask & merged_mask:
                    merged_mask |= mask
                    merged += members
                    changed = True
                else:
                    keep.append((mask, members))
            rest = keep
        blocks = rest + [(merged_mask, merged)]
    return [(mask, tuple(sorted(members))) for mask, members in blocks]


def slice_homology(W: int, gens_in_W: tuple[int, ...], p: int,
                   face_budget: int = DEFAULT_FACE_BUDGET) -> dict[int, int]:
    """Reduced homology ``{k: dim H̃_k(Δ_W; GF(p))}``.

    Vertices of W in no generator make Δ_W a cone (acyclic). Vertex-disjoint
    generator blocks make Δ_W a join, whose reduced homology is the product
    of the blocks' shifted Poincaré polynomials.
    """
    covered = 0
    for g in gens_in_W:
        covered |= g
    if covered != W:
        return {}
    poly = {0: 1}  # x^(k+1) carries dim H̃_k
    for mask, members in _blocks(gens_in_W):
        h = _block_homology(mask, members, p, face_budget)
        nxt: dict[int, int] = {}
        for a, ca in poly.items():
            for k, cb in h.items():
                nxt[a + k + 1] = nxt.get(a + k + 1, 0) + ca * cb
        poly = nxt
        if not poly:
            return {}
    return {a - 1: c for a, c in poly.items() if c}


def _block_homology(W: int, gens_in_W: tuple[int, ...], p: int, face_budget: int) -> dict[int, int]:
    # exact (W, generators, p) key; no isomorphism detection
    key = (W, gens_in_W, p)
    hit = _slice_cache.get(key)
    if hit is not None:
        return hit
    n = W.bit_count()
    faces = _faces(W, list(gens_in_W), face_budget)
    if 2 * len(faces) <= (1 << n):
        result = reduced_homology(_group(faces), p)
    else:
        # Alexander dual inside W: H̃_k(Δ) ≅ H̃_{n-k-3}(Δ^∨), Δ^∨ = {W \ F : F ∉ Δ}
        face_set = set(faces)
        dual = [W & ~f for f in _all_subsets(W) if f not in face_set]
        dual_h = reduced_homology(_group(dual), p)
        result = {n - k - 3: h for k, h in dual_h.items()}
    if len(_slice_cache) > CACHE_LIMIT:
        _slice_cache.clear()
    _slice_cache[key] = result
    return result


def _all_subsets(W: int):
    sub = W
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & W


def clear_cache():
    _slice_cache.clear()


def lcm_lattice(gens: tuple[int, ...], budget: int = DEFAULT_LATTICE_BUDGET) -> set[int]:
    """All nonempty unions of generator supports."""
    seen = set(gens)
    stack = list(gens)
    while stack:
        x = stack.pop()
        for g in gens:
            y = x | g
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetError(f"lcm lattice exceeds {budget} elements")
                stack.append(y)
    return seen


def betti_table(ideal: SquarefreeIdeal, p: int = 2,
                budget: int = DEFAULT_LATTICE_BUDGET) -> BettiTable:
    if ideal.is_zero:
        raise ValueError("Betti table of the zero ideal is undefined")
    gens = ideal.gens
    entries: dict[tuple[int, int], int] = {}
    for W in sorted(lcm_lattice(gens, budget)):
        inside = tuple(g for g in gens if g & ~W == 0)
        size = W.bit_count()
        for k, h in slice_homology(W, inside, p).items():
            i = size - k - 2  # homological degree for I; S/I would be one more
            entries[(i, size)] = entries.get((i, size), 0) + h
    return BettiTable(entries, p, ideal.degrees())


def pd_reg(ideal: SquarefreeIdeal, p: int = 2) -> PdReg | None:
    """pd and reg of I and S/I; ``None`` for the zero ideal."""
    if ideal.is_zero:
        return None
    t = betti_table(ideal, p)
    return PdReg(t.pd, t.reg, t.pd_quotient, t.reg_quotient)


# -- consistency checks ------------------------------------------------------

def k_polynomial(ideal: SquarefreeIdeal) -> dict[int, int]:
    """Graded K-polynomial of S/I by inclusion–exclusion over generator subsets.

    Σ_σ (-1)^|σ| t^deg(lcm σ) is accumulated as the product Π_g (1 - x^g) in
    the lcm monoid ring, so equal lcms cancel as they appear.
    """
    terms: dict[int, int] = {0: 1}
    for g in ideal.gens:
        new = dict(terms)
        for m, c in terms.items():
            u = m | g
            new[u] = new.get(u, 0) - c
            if not new[u]:
                del new[u]
        terms = new
    out: dict[int, int] = {}
    for m, c in terms.items():
        d = m.bit_count()
        out[d] = out.get(d, 0) + c
    return {d: c for d, c in out.items() if c}


def hilbert_numerator_check(ideal: SquarefreeIdeal, table: BettiTable) -> bool:
    """Σ_i (-1)^i β_{i,j}(S/I) equals the t^j coefficient of the K-polynomial."""
    alt: dict[int, int] = {0: 1}
    for (i, j), b in table.entries.items():
        alt[j] = alt.get(j, 0) + (-1) ** (i + 1) * b
    alt = {d: c for d, c in alt.items() if c}
    generators_ok = all(table.beta(0, d) == c for d, c in ideal.degrees().items()) \
        and table.beta(0) == len(ideal.gens)
    return alt == k_polynomial(ideal) and generators_ok


@dataclass
class SplittingReport:
    ok: bool
    total_violations: list[tuple[int, int, int]]
    graded_violations: list[tuple[int, int, int, int]]
    tables: dict[str, BettiTable]


def verify_betti_splitting(P: SquarefreeIdeal, A: SquarefreeIdeal, B: SquarefreeIdeal,
                           p: int = 2) -> SplittingReport:
    """Check β_{i,j}(P) = β_{i,j}(A) + β_{i,j}(B) + β_{i-1,j}(A ∩ B)."""
    if ideal_sum(A, B) != P:
        raise ValueError("P must equal A + B")
    C = intersect(A, B)
    tabs = {name: betti_table(x, p) for name, x in (("P", P), ("A", A), ("B", B))}
    tabs["A&B"] = betti_table(C, p) if not C.is_zero else BettiTable({}, p)
    keys = set()
    for name, t in tabs.items():
        for i, j in t.entries:
            keys.add((i, j))
            if name == "A&B":
                keys.add((i + 1, j))
    graded = []
    for i, j in sorted(keys):
        lhs = tabs["P"].beta(i, j)
        rhs = tabs["A"].beta(i, j) + tabs["B"].beta(i, j) + tabs["A&B"].beta(i - 1, j)
        if lhs != rhs:
            graded.append((i, j, lhs, rhs))
    total = []
    top = max(i for i, _ in keys)
    for i in range(top + 1):
        lhs = tabs["P"].beta(i)
        rhs = tabs["A"].beta(i) + tabs["B"].beta(i) + tabs["A&B"].beta(i - 1)
        if lhs != rhs:
            total.append((i, lhs, rhs))
    return SplittingReport(not graded and not total, total, graded, tabs)
