"""Batch property checks on seeded random trees and unicyclic graphs.

Each instance runs every applicable check and records pass / fail / warn /
skip. Nothing is reconciled: a disagreement is a ``fail`` unless it is the
known triangle ambiguity, which is a ``warn``.
"""

from __future__ import annotations

import random
from collections import Counter
from itertools import combinations
from dataclasses import dataclass, field

from . import betti
from .generators import GenConfig, branch_of, generate
from .graph import (
    Graph,
    boundary_and_gamma,
    classify,
    deepest_leaf,
    derived_subgraphs,
    induced_subgraph,
)
from .ideal import (
    SquarefreeIdeal,
    colon_by_vertex_formula,
    colon_var,
    ideal_sum,
    intersect,
    leaf_splitting,
    path_ideal,
    scaffold_level1,
    scaffold_level2,
    scale,
)
from .invariants import Engine, closed_form_branch, replay_trace
from .matching import nu3_recursive, nu_t_bruteforce

PASS, FAIL, WARN, SKIP = "pass", "fail", "warn", "skip"


@dataclass(frozen=True)
class VerifyConfig:
    family: str = "tree"
    n_min: int = 5
    n_max: int = 12
    count: int = 20
    seed: int = 0
    primes: tuple[int, ...] = (2, 32003)
    fallback_n: int = 0
    include_triangles: bool = False
    split_n_max: int = 10
    lower_bound_n_max: int = 10

    def gen_config(self) -> GenConfig:
        return GenConfig(self.family, self.n_min, self.n_max, self.count, self.seed,
                         include_triangles=self.include_triangles)


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass
class InstanceResult:
    index: int
    n: int
    kind: str
    cycle_length: int | None
    branch: str | None
    edges: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool | None, detail: str = "", warn_only: bool = False):
        if ok is None:
            status = SKIP
        elif ok:
            status = PASS
        else:
            status = WARN if warn_only else FAIL
        self.checks.append(Check(name, status, detail))

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]


@dataclass
class VerifySummary:
    config: VerifyConfig
    instances: list[InstanceResult]

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.instances)

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, Counter] = {}
        for r in self.instances:
            for c in r.checks:
                out.setdefault(c.name, Counter())[c.status] += 1
        return {k: dict(v) for k, v in sorted(out.items())}

    def branch_counts(self) -> dict[str, int]:
        return dict(Counter(r.branch for r in self.instances if r.branch is not None))

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "family": self.config.family,
            "n_range": [self.config.n_min, self.config.n_max],
            "count": self.config.count,
            "seed": self.config.seed,
            "primes": list(self.config.primes),
            "ok": self.ok,
            "checks": self.counts(),
            "branches": self.branch_counts(),
            "problems": [
                {"index": r.index, "edges": r.edges, "check": c.name, "status": c.status, "detail": c.detail}
                for r in self.instances for c in r.checks if c.status in (FAIL, WARN)
            ],
        }


def _table_checks(res: InstanceResult, ideal: SquarefreeIdeal, table: betti.BettiTable, tag: str):
    res.add("hilbert", betti.hilbert_numerator_check(ideal, table), tag)
    res.add("beta0", table.beta(0) == len(ideal.gens), f"{tag}: β₀ {table.beta(0)}, {len(ideal.gens)} generators")


def _proximal_any(h: Graph, memo: dict) -> bool | None:
    """ν₃(H) == ν₃(Γ_H(C)) when H has exactly one cycle; None otherwise."""
    cs = classify(h)
    if cs.kind == "other" or len(cs.cycles) != 1:
        return None
    _, gamma = boundary_and_gamma(h, cs)
    return nu3_recursive(h, memo) == nu3_recursive(gamma, memo)


def check_instance(g: Graph, cfg: VerifyConfig, index: int = 0) -> InstanceResult:
    cs = classify(g)
    m = cs.m if cs.kind == "unicyclic" else None
    unicyclic = cs.kind == "unicyclic"
    nu_memo: dict[int, int] = {}
    nu3 = nu3_recursive(g, nu_memo)
    brute = nu_t_bruteforce(g, 3).value
    proximal = _proximal_any(g, nu_memo) if unicyclic else None
    branch = closed_form_branch(m, proximal) if unicyclic else None
    res = InstanceResult(index, g.n, cs.kind, m, branch, " ".join(f"{u}-{v}" for u, v in g.edges()))
    res.add("nu3-recursion", nu3 == brute, f"recursion {nu3}, brute force {brute}")

    ideal = path_ideal(g, 3)
    colon_ok = all(colon_by_vertex_formula(g, y) == colon_var(ideal, y) for y in range(g.n))
    res.add("colon-formula", colon_ok)

    # leaf splitting and its scaffolds
    ctx = deepest_leaf(g, cs)
    parts = None
    if ctx is None or ideal.is_zero:
        res.add("leaf-splitting", None, "no deepest leaf")
    else:
        parts = leaf_splitting(g, ctx)
        res.add("leaf-splitting", parts.certified, str(parts.tor_checks))
        if ctx.level >= 2:
            U, V = scaffold_level2(g, ctx)
            res.add("scaffold-sum", ideal_sum(U, V) == parts.L, "U+V=L")
            if ctx.s >= 1:
                res.add("scaffold-intersection", intersect(U, V) == scale(U, 1 << ctx.anchor[0]), "U∩V=x0·U")
        else:
            X, Y, Z = scaffold_level1(g, ctx)
            v2, vm = ctx.anchor
            XY = ideal_sum(X, Y)
            res.add("scaffold-sum", ideal_sum(XY, Z) == parts.L, "X+Y+Z=L")
            res.add("scaffold-intersection", intersect(XY, Z) == scale(XY, 1 << vm), "(X+Y)∩Z=vm·(X+Y)")
            if ctx.s >= 1:
                res.add("scaffold-intersection", intersect(X, Y) == scale(X, 1 << v2), "X∩Y=v2·X")
        if unicyclic and proximal is False:
            _proximality_lemmas(res, g, ctx, nu3, nu_memo)

    if ideal.is_zero:
        res.add("oracle", None, "I_3 is zero")
        return res

    # oracle tables and everything compared against them
    tables = {}
    for p in cfg.primes:
        tables[p] = betti.betti_table(ideal, p)
        _table_checks(res, ideal, tables[p], f"I_3(G) over GF({p})")
    first = tables[cfg.primes[0]]
    res.add("field-independence", all(t.entries == first.entries for t in tables.values()),
            warn_only=True)

    for p, table in tables.items():
        eng = Engine(g, p, cfg.fallback_n)
        value = eng.solve()
        res.add("engine-pd", value is not None and value[0] == table.pd,
                f"GF({p}): engine {value}, oracle pd {table.pd}")
        res.add("engine-reg", value is not None and value[1] == table.reg,
                f"GF({p}): engine {value}, oracle reg {table.reg}")
        res.add("trace-replay", replay_trace(eng.trace()))

    reg_q = first.reg_quotient
    if cs.kind == "forest":
        res.add("closed-form", reg_q == 2 * nu3, f"oracle reg(S/I) {reg_q}, 2ν₃ {2 * nu3}")
    else:
        predicted = 2 * nu3 + int(branch[1])
        res.add("closed-form", reg_q == predicted,
                f"m={m} branch {branch}: oracle reg(S/I) {reg_q}, predicted {predicted}",
                warn_only=m == 3)
        res.add("sandwich", 2 * nu3 <= reg_q <= 2 * nu3 + 2, f"ν₃ {nu3}, reg(S/I) {reg_q}")

    if g.n <= cfg.split_n_max and parts is not None:
        rep = betti.verify_betti_splitting(ideal, parts.left, parts.right, cfg.primes[0])
        res.add("betti-splitting", rep.ok, f"{rep.total_violations} total / {len(rep.graded_violations)} graded violations")
        named = {"P": ideal, "A": parts.left, "B": parts.right, "A&B": parts.intersection}
        for name, t in rep.tables.items():
            if not named[name].is_zero:
                _table_checks(res, named[name], t, f"splitting {name}")

    if g.n <= cfg.lower_bound_n_max:
        for t in (3, 4):
            it = path_ideal(g, t)
            if it.is_zero:
                continue
            reg_i = first.reg if t == 3 else betti.betti_table(it, cfg.primes[0]).reg
            nu_t = brute if t == 3 else nu_t_bruteforce(g, t).value
            res.add("lower-bound", reg_i >= (t - 1) * nu_t + 1, f"t={t}: reg(I_t) {reg_i}, ν_t {nu_t}")
    return res


def _proximality_lemmas(res: InstanceResult, g: Graph, ctx, nu3: int, memo: dict):
    kids = derived_subgraphs(g, ctx)

    def sub(j):
        return induced_subgraph(g, kids[j])[0]

    h1 = sub(1)
    if _proximal_any(h1, memo):
        res.add("proximality-drop", nu3_recursive(h1, memo) < nu3, "child 1")
    if ctx.level >= 2:
        j = 2 if ctx.s >= 1 else 3
        hj = sub(j)
        if _proximal_any(hj, memo):
            res.add("proximality-drop", nu3_recursive(hj, memo) + 1 < nu3, f"child {j}")


def run_verify(cfg: VerifyConfig, progress=None) -> VerifySummary:
    """Run every instance in index order; ``progress(result)`` is called after each."""
    gen = cfg.gen_config()
    results = []
    for i in range(cfg.count):
        g = generate(gen, i)
        r = check_instance(g, cfg, i)
        results.append(r)
        if progress is not None:
            progress(r)
    return VerifySummary(cfg, results)


def random_base_ideal(rng: random.Random, nvars: int, max_gens: int = 5) -> list[int]:
    """Supports of a few random nonempty squarefree monomials in ``nvars`` variables."""
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        size = rng.randint(1, min(3, nvars))
        gens.append(sum(1 << v for v in rng.sample(range(nvars), size)))
    return gens


@dataclass
class ScaffoldCase:
    s: int
    base: list[str]
    base_pd_reg: tuple[int, int]
    u_pd_reg: tuple[int, int]
    v_pd_reg: tuple[int, int]
    times_x_pd_reg: tuple[int, int]

    @property
    def u_ok(self) -> bool:
        return self.u_pd_reg == (self.base_pd_reg[0] + self.s - 1, self.base_pd_reg[1] + 1)

    @property
    def v_ok(self) -> bool:
        return self.v_pd_reg == (self.base_pd_reg[0] + self.s, self.base_pd_reg[1])

    @property
    def times_x_ok(self) -> bool:
        return self.times_x_pd_reg == (self.base_pd_reg[0], self.base_pd_reg[1] + 1)


def scaffold_cases(count: int = 60, seed: int = 0, max_vars: int = 8, p: int = 2) -> list[ScaffoldCase]:
    """Random P in at most ``max_vars`` variables, s cycling through 1, 2, 3.

    Builds Q_s = (z_i z_j) + (z_1..z_s)P, Q = (z_1..z_s) + P and x·P with
    fresh variables and records pd/reg of each by the oracle.
    """
    out = []
    for i in range(count):
        rng = random.Random(f"scaffold/{seed}/{i}")
        s = 1 + i % 3
        k = rng.randint(1, max_vars)
        names = [f"y{j + 1}" for j in range(k)] + [f"z{j + 1}" for j in range(s)] + ["x"]
        base = SquarefreeIdeal.of(names, random_base_ideal(rng, k))
        zs = [1 << (k + j) for j in range(s)]
        q_u = SquarefreeIdeal.of(names, [a | b for a, b in combinations(zs, 2)]
                                 + [z | g for z in zs for g in base.gens])
        q_v = SquarefreeIdeal.of(names, zs + list(base.gens))
        times_x = scale(base, 1 << (k + s))

        def pr(ideal):
            t = betti.betti_table(ideal, p)
            return t.pd, t.reg

        out.append(ScaffoldCase(s, base.to_lines(), pr(base), pr(q_u), pr(q_v), pr(times_x)))
    return out


def additivity_cases(count: int = 30, seed: int = 0, p: int = 2) -> list[tuple[tuple[int, int], tuple[int, int], tuple[int, int]]]:
    """(pd, reg) of I, J and I+J for random nonzero I, J in disjoint variables."""
    out = []
    for i in range(count):
        rng = random.Random(f"additivity/{seed}/{i}")
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        names = [f"y{j}" for j in range(a + b)]
        I = SquarefreeIdeal.of(names, random_base_ideal(rng, a))
        J = SquarefreeIdeal.of(names, [g << a for g in random_base_ideal(rng, b)])
        vals = []
        for ideal in (I, J, ideal_sum(I, J)):
            t = betti.betti_table(ideal, p)
            vals.append((t.pd, t.reg))
        out.append(tuple(vals))
    return out


__all__ = ["Check", "InstanceResult", "VerifyConfig", "VerifySummary", "ScaffoldCase", "additivity_cases", "branch_of", "random_base_ideal", "scaffold_cases", "check_instance", "run_verify"]
