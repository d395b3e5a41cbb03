"""Projective dimension and regularity of 3-path ideals of graphs with at most one cycle.

The recursion removes a deepest leaf ``z0`` and combines pd/reg of the
derived induced subgraphs ``G_{z0,1..4}``. Components are combined by the
disjoint-variables rules pd(I+J) = pd(I)+pd(J)+1, reg(I+J) = reg(I)+reg(J)-1.
Small graphs, bare cycles, triangles, and steps whose formula would mention a
zero sub-ideal are handed to the Betti oracle instead.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace

from . import betti
from .errors import GraphError
from .graph import (
    Graph,
    bits,
    classify,
    components,
    deepest_leaf,
    derived_subgraphs,
    induced_subgraph,
    neighborhood,
)
from .ideal import path_ideal_on
from .matching import is_3_proximal, is_t_proximal, nu3_recursive, nu_t_bruteforce

SCHEMA_VERSION = 1
DEFAULT_FALLBACK_N = 10


@dataclass
class TraceStep:
    """One evaluated node of the recursion, keyed by a root-graph vertex mask."""

    key: int
    case: str
    pd: int | None
    reg: int | None
    z0: str | None = None
    s: int | None = None
    params: dict = field(default_factory=dict)
    children: dict = field(default_factory=dict)
    reason: str | None = None


def step_formula(case: str, s: int, params: dict, kids: dict) -> tuple[int, int]:
    """pd and reg of I_3(G) from the children's values for one leaf step.

    ``kids[j] = (pd_j, reg_j)`` for the derived subgraph ``G_{z0,j}``.
    """
    p = {j: v[0] for j, v in kids.items()}
    r = {j: v[1] for j, v in kids.items()}
    if case == "level>=2":
        nx0 = params["deg_x0"]
        if s > 0:
            return max(p[1], p[2] + s + 1, p[3] + nx0 + s), max(r[1], r[2] + 2)
        return max(p[1], p[3] + nx0), max(r[1], r[3] + 2)
    if case == "level=1":
        n2, nm = params["n2"], params["nm"]
        # X, Y, Z glue in two nested splittings, and Z carries v2 as an extra
        # variable, so each term sits one above the level>=2 analogue.
        if s > 0:
            pd = max(p[1], p[2] + s + 2, p[3] + n2 + s + 2, p[4] + nm + s + 2)
            return pd, max(r[1], r[2] + 2)
        return max(p[1], p[3] + n2 + 2, p[4] + nm + 2), max(r[1], r[3] + 2, r[4] + 2)
    raise ValueError(f"unknown case {case!r}")


def combine_components(values: list[tuple[int, int]]) -> tuple[int, int]:
    """pd/reg of a sum of nonzero ideals in pairwise disjoint variables."""
    k = len(values) - 1
    return sum(v[0] for v in values) + k, sum(v[1] for v in values) - k


def referenced(level: int, s: int) -> tuple[int, ...]:
    if level >= 2:
        return (1, 2, 3) if s > 0 else (1, 3)
    return (1, 2, 3, 4) if s > 0 else (1, 3, 4)


class Engine:
    """Recursive pd/reg evaluator bound to one root graph.

    Results are memoized by root-graph vertex mask; every recursion child is
    an induced subgraph of the root, so the mask identifies it exactly.
    """

    def __init__(self, root: Graph, p: int = 2, fallback_n: int = DEFAULT_FALLBACK_N):
        # keys are masks over this graph's own vertices, whatever its origin
        self.root = replace(root, origin=tuple(range(root.n)))
        self.p = p
        self.fallback_n = fallback_n
        self.memo: dict[int, tuple[int, int] | None] = {}
        self.steps: dict[int, TraceStep] = {}
        self.oracle_calls = 0
        self.recursion_steps = 0

    def solve(self, mask: int | None = None) -> tuple[int, int] | None:
        """(pd, reg) of I_3 of the induced subgraph on ``mask``; None if zero."""
        if mask is None:
            mask = self.root.vertices
        if mask in self.memo:
            return self.memo[mask]
        sub, _ = induced_subgraph(self.root, mask)
        comps = [sub.root_mask(c) for c in components(sub)]
        if len(comps) == 1:
            value = self._connected(mask, sub)
        else:
            parts = [v for v in (self.solve(c) for c in comps) if v is not None]
            value = combine_components(parts) if parts else None
            self.steps[mask] = TraceStep(
                mask, "components", *(value or (None, None)),
                children={f"c{i}": [c, *(self.memo[c] or (None, None))] for i, c in enumerate(comps)},
            )
        self.memo[mask] = value
        return value

    def _oracle(self, mask: int, reason: str) -> tuple[int, int] | None:
        ideal = path_ideal_on(self.root, mask)
        if ideal.is_zero:
            self.steps[mask] = TraceStep(mask, "zero", None, None, reason="I_3 is zero")
            return None
        self.oracle_calls += 1
        table = betti.betti_table(ideal, self.p)
        self.steps[mask] = TraceStep(mask, "oracle", table.pd, table.reg, reason=reason)
        return table.pd, table.reg

    def _connected(self, mask: int, g: Graph) -> tuple[int, int] | None:
        cs = classify(g)
        if cs.kind == "other":
            raise GraphError("component is neither tree nor unicyclic")
        if g.n < 3:
            return self._oracle(mask, "fewer than 3 vertices")
        if g.n <= self.fallback_n:
            return self._oracle(mask, f"n <= {self.fallback_n}")
        if cs.m == 3:
            return self._oracle(mask, "triangle cycle")
        ctx = deepest_leaf(g, cs)
        if ctx is None:
            return self._oracle(mask, "no tree leaf")
        kids_local = derived_subgraphs(g, ctx)
        need = referenced(ctx.level, ctx.s)
        kids = {j: g.root_mask(kids_local[j]) for j in need}
        values = {j: self.solve(kids[j]) for j in need}
        zero = [j for j in need if values[j] is None]
        if zero:
            return self._oracle(mask, f"zero sub-ideal for G_{{z0,{zero[0]}}}")
        if ctx.level >= 2:
            case = "level>=2"
            params = {"deg_x0": g.degree(ctx.anchor[0])}
        else:
            case = "level=1"
            v1, (v2, vm) = ctx.y0, ctx.anchor
            closed_v1 = neighborhood(g, 1 << v1, closed=True)
            params = {"n2": (g.nbr[v2] & ~closed_v1).bit_count(),
                      "nm": (g.nbr[vm] & ~closed_v1).bit_count()}
        pd, reg = step_formula(case, ctx.s, params, values)
        self.recursion_steps += 1
        self.steps[mask] = TraceStep(
            mask, case, pd, reg, z0=g.names[ctx.z0], s=ctx.s, params=params,
            children={str(j): [kids[j], *values[j]] for j in need},
        )
        return pd, reg

    def trace(self, mask: int | None = None) -> list[TraceStep]:
        """Steps reachable from ``mask``, children before parents."""
        if mask is None:
            mask = self.root.vertices
        out, seen = [], set()

        def visit(k):
            if k in seen or k not in self.steps:
                return
            seen.add(k)
            for child in self.steps[k].children.values():
                visit(child[0])
            out.append(self.steps[k])

        visit(mask)
        return out


def replay_trace(steps: list[TraceStep]) -> bool:
    """Recompute every recorded formula from the recorded child values."""
    by_key = {st.key: st for st in steps}
    for st in steps:
        for child in st.children.values():
            k, pd, reg = child
            if k in by_key and (by_key[k].pd, by_key[k].reg) != (pd, reg):
                return False
        if st.case in ("level>=2", "level=1"):
            kids = {int(j): (c[1], c[2]) for j, c in st.children.items()}
            if step_formula(st.case, st.s, st.params, kids) != (st.pd, st.reg):
                return False
        elif st.case == "components":
            parts = [(c[1], c[2]) for c in st.children.values() if c[1] is not None]
            expect = combine_components(parts) if parts else (None, None)
            if tuple(expect) != (st.pd, st.reg):
                return False
    return True


def pd_recursive(g: Graph, p: int = 2, fallback_n: int = DEFAULT_FALLBACK_N) -> tuple[int, list[TraceStep]]:
    eng = Engine(g, p, fallback_n)
    value = eng.solve()
    if value is None:
        raise ValueError("I_3(G) is zero")
    return value[0], eng.trace()


def reg_recursive(g: Graph, p: int = 2, fallback_n: int = DEFAULT_FALLBACK_N) -> tuple[int, list[TraceStep]]:
    eng = Engine(g, p, fallback_n)
    value = eng.solve()
    if value is None:
        raise ValueError("I_3(G) is zero")
    return value[1], eng.trace()


# -- closed form -------------------------------------------------------------

TRIANGLE_WARNING = "triangle closed-form mismatch possible"


def closed_form_branch(m: int, proximal: bool | None) -> str:
    """Which regularity branch applies: '+2', '+1' or '+0'."""
    if m > 3 and proximal:
        if m % 4 == 3:
            return "+2"
        if m % 4 == 2:
            return "+1"
    return "+0"


def reg_closed_form(g: Graph, memo: dict | None = None) -> tuple[int, list[str]]:
    """reg(S/I_3(G)) for a connected tree or unicyclic graph, with warnings."""
    if len(components(g)) != 1:
        raise GraphError("closed form needs a connected graph")
    cs = classify(g)
    if cs.kind == "other":
        raise GraphError("component is neither tree nor unicyclic")
    if path_ideal_on(g, g.vertices).is_zero:
        raise ValueError("I_3(G) is zero")
    memo = {} if memo is None else memo
    nu = nu3_recursive(g, memo)
    warnings = []
    proximal = is_3_proximal(g, memo) if cs.kind == "unicyclic" else None
    if cs.m == 3:
        warnings.append(TRIANGLE_WARNING)
    return 2 * nu + int(closed_form_branch(cs.m, proximal)[1]), warnings


# -- reports -----------------------------------------------------------------

@dataclass
class InvariantReport:
    nu3: int
    pd_ideal: int | None
    reg_ideal: int | None
    pd_quotient: int | None
    reg_quotient: int | None
    proximal: bool | None
    method: str
    n: int
    edges: int
    kind: str
    cycle_length: int | None
    field: int
    closed_form_reg_quotient: int | None = None
    trace: list[TraceStep] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = SCHEMA_VERSION
        d["trace"] = [_step_dict(st) for st in self.trace]
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def _step_dict(st: TraceStep) -> dict:
    d = asdict(st)
    d["key"] = hex(st.key)
    d["children"] = {j: {"key": hex(c[0]), "pd": c[1], "reg": c[2]} for j, c in st.children.items()}
    return d


def _from_pdreg(pd: int | None, reg: int | None) -> dict:
    if pd is None:
        return dict(pd_ideal=None, reg_ideal=None, pd_quotient=None, reg_quotient=None)
    return dict(pd_ideal=pd, reg_ideal=reg, pd_quotient=pd + 1, reg_quotient=reg - 1)


def invariants(g: Graph, method: str = "auto", p: int = 2,
               fallback_n: int = DEFAULT_FALLBACK_N) -> InvariantReport:
    """Invariants of I_3(G) by ``auto``, ``recursion``, ``oracle`` or ``closed-form``."""
    cs = classify(g)
    comps = components(g)
    for c in comps:
        if classify(induced_subgraph(g, c)[0]).kind == "other":
            raise GraphError("component is neither tree nor unicyclic")
    nu_memo: dict[int, int] = {}
    nu3 = nu3_recursive(g, nu_memo)
    connected_unicyclic = cs.kind == "unicyclic" and len(comps) == 1
    proximal = is_3_proximal(g, nu_memo) if connected_unicyclic else None
    cycle_length = cs.m if cs.kind == "unicyclic" and len(cs.cycles) == 1 else None
    warnings: list[str] = []
    if any(len(c) == 3 for c in cs.cycles):
        warnings.append(TRIANGLE_WARNING)
    base = dict(nu3=nu3, proximal=proximal, n=g.n, edges=g.edge_count, kind=cs.kind,
                cycle_length=cycle_length, field=p)
    ideal = path_ideal_on(g, g.vertices)

    if method == "oracle":
        vals = (None, None)
        if not ideal.is_zero:
            t = betti.betti_table(ideal, p)
            vals = (t.pd, t.reg)
        return InvariantReport(**_from_pdreg(*vals), method="oracle", warnings=warnings, **base)

    closed = _closed_form_sum(g, comps, nu_memo, warnings)
    if method == "closed-form":
        rep = InvariantReport(**_from_pdreg(None, None), method="closed-form", warnings=warnings, **base)
        rep.reg_quotient = closed
        rep.reg_ideal = None if closed is None else closed + 1
        rep.closed_form_reg_quotient = closed
        rep.warnings.append("closed form yields regularity only")
        return rep
    if method not in ("auto", "recursion"):
        raise ValueError(f"unknown method {method!r}")

    # "recursion" applies a formula wherever one is defined
    eng = Engine(g, p, 0 if method == "recursion" else fallback_n)
    value = eng.solve()
    top = eng.steps.get(g.vertices)
    if top is not None and top.case == "oracle":
        used = "oracle"
    elif eng.oracle_calls and eng.recursion_steps:
        used = "recursion"
    elif eng.oracle_calls:
        used = "mixed" if top is not None and top.case == "components" else "oracle"
    else:
        used = "recursion"
    if eng.oracle_calls:
        warnings.append(f"oracle used on {eng.oracle_calls} subgraph(s)")
    rep = InvariantReport(**_from_pdreg(*(value or (None, None))), method=used,
                          closed_form_reg_quotient=closed, trace=eng.trace(),
                          warnings=warnings, **base)
    if method == "auto" and closed is not None and value is not None and closed != rep.reg_quotient:
        warnings.append(f"closed-form reg(S/I)={closed} disagrees with recursion reg(S/I)={rep.reg_quotient}")
    return rep


def _closed_form_sum(g: Graph, comps: list[int], nu_memo: dict, warnings: list[str]) -> int | None:
    # reg(S/I) adds over components in disjoint variables
    total, any_nonzero = 0, False
    for c in comps:
        sub, _ = induced_subgraph(g, c)
        if path_ideal_on(sub, sub.vertices).is_zero:
            continue
        val, warns = reg_closed_form(sub, nu_memo)
        total += val
        any_nonzero = True
        for w in warns:
            if w not in warnings:
                warnings.append(w)
    return total if any_nonzero else None


# -- conjecture probe ---------------------------------------------------------

def conjecture_probe(g: Graph, t: int, p: int = 2) -> dict:
    """Compare the oracle regularity of S/I_t(G) with the t-path prediction.

    Experimental: the outcome is reported, never asserted.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if len(components(g)) != 1:
        raise GraphError("probe needs a connected graph")
    cs = classify(g)
    if cs.kind == "other":
        raise GraphError("component is neither tree nor unicyclic")
    ideal = path_ideal_on(g, g.vertices, t)
    nu = nu_t_bruteforce(g, t).value
    out = {"t": t, "n": g.n, "kind": cs.kind, "nu_t": nu, "field": p,
           "generators": ideal.to_lines()}
    if ideal.is_zero:
        out.update(reg_quotient=None, predicted=None, holds=None, note="I_t(G) is zero")
        return out
    reg_q = betti.betti_table(ideal, p).reg_quotient
    if cs.kind == "forest":
        proximal = None
        predicted = (t - 1) * nu
    else:
        proximal = is_t_proximal(g, t)
        if proximal:
            cyc, _ = induced_subgraph(g, sum(1 << v for v in cs.cycle))
            c_ideal = path_ideal_on(cyc, cyc.vertices, t)
            c_reg = betti.betti_table(c_ideal, p).reg_quotient if not c_ideal.is_zero else 0
            predicted = (t - 1) * nu + c_reg - (t - 1) * nu_t_bruteforce(cyc, t).value
        else:
            predicted = (t - 1) * nu
    out.update(reg_quotient=reg_q, proximal=proximal, predicted=predicted, holds=reg_q == predicted)
    return out


def lower_bound_holds(g: Graph, t: int, p: int = 2) -> bool | None:
    """reg(I_t(G)) >= (t-1) ν_t(G) + 1; None when I_t(G) is zero."""
    ideal = path_ideal_on(g, g.vertices, t)
    if ideal.is_zero:
        return None
    return betti.betti_table(ideal, p).reg >= (t - 1) * nu_t_bruteforce(g, t).value + 1


__all__ = [
    "Engine", "InvariantReport", "TraceStep", "closed_form_branch", "combine_components",
    "conjecture_probe", "invariants", "lower_bound_holds", "pd_recursive", "reg_closed_form",
    "reg_recursive", "replay_trace", "step_formula", "bits",
]
