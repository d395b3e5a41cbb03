"""Command-line interface: ``pathideal {invariants|betti|nu|verify|gen|export-m2}``.

Exit codes: 0 success, 1 verify found a failure, 2 invalid input,
3 computation refused by a budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import betti
from .errors import BudgetError, GraphError
from .export import export_m2
from .generators import GenConfig, generate
from .graph import Graph, parse_graph
from .ideal import path_ideal
from .invariants import DEFAULT_FALLBACK_N, conjecture_probe, invariants
from .matching import nu3_recursive, nu_t_bruteforce, path_order
from .verify import VerifyConfig, run_verify

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    edges: str | None = None
    t: int = 3
    method: str = "auto"
    fields: tuple[int, ...] = ()
    fallback_n: int = DEFAULT_FALLBACK_N
    family: str = "tree"
    n_min: int = 5
    n_max: int = 12
    count: int = 10
    seed: int = 0
    include_triangles: bool = False
    output: str = "json"

    @property
    def field(self) -> int:
        return self.fields[0] if self.fields else 2


def parse_range(text: str) -> tuple[int, int]:
    """'5..12' -> (5, 12); '7' -> (7, 7)."""
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if a > b or a < 1:
        raise argparse.ArgumentTypeError(f"bad size range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathideal", description="Invariants of 3-path ideals of trees and unicyclic graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_args(p):
        p.add_argument("--input", help="edge-list or graph6 file; '-' reads stdin")
        p.add_argument("--edges", help="inline edge list such as 'a-b,b-c,c-d'")

    def out_args(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", dest="output", action="store_const", const="json", help="JSON output (default)")
        g.add_argument("--text", dest="output", action="store_const", const="text", help="human-readable output")
        p.set_defaults(output="json")

    def field_arg(p, many=False):
        p.add_argument("--field", dest="fields", type=int, action="append",
                       help="prime for the coefficient field" + (" (repeatable)" if many else ""))

    p = sub.add_parser("invariants", help="pd, reg and ν₃ of I_3(G); --t ≥ 4 runs the t-path probe")
    graph_args(p), out_args(p), field_arg(p)
    p.add_argument("--method", choices=["auto", "recursion", "oracle", "closed-form"], default="auto")
    p.add_argument("--fallback-n", type=int, default=DEFAULT_FALLBACK_N)
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("betti", help="Betti table of I_t(G) over GF(p)")
    graph_args(p), out_args(p), field_arg(p)
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("nu", help="t-path induced matching number")
    graph_args(p), out_args(p)
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("verify", help="batch property checks on random instances")
    out_args(p), field_arg(p, many=True)
    p.add_argument("--family", choices=["tree", "unicyclic"], default="tree")
    p.add_argument("--n", type=parse_range, default=None)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fallback-n", type=int, default=0)
    p.add_argument("--include-triangles", action="store_true")

    p = sub.add_parser("gen", help="print random instances as edge lists")
    p.add_argument("--family", choices=["tree", "unicyclic"], default="tree")
    p.add_argument("--n", type=parse_range, default=None)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-triangles", action="store_true")

    p = sub.add_parser("export-m2", help="Macaulay2 script for I_t(G)")
    graph_args(p), field_arg(p)
    p.add_argument("--t", type=int, default=3)
    return ap


def to_config(ns: argparse.Namespace) -> RunConfig:
    default_n = (6, 13) if getattr(ns, "family", "tree") == "unicyclic" else (5, 12)
    n_min, n_max = getattr(ns, "n", None) or default_n
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        edges=getattr(ns, "edges", None),
        t=getattr(ns, "t", 3),
        method=getattr(ns, "method", "auto"),
        fields=tuple(getattr(ns, "fields", None) or ()),
        fallback_n=getattr(ns, "fallback_n", DEFAULT_FALLBACK_N),
        family=getattr(ns, "family", "tree"),
        n_min=n_min,
        n_max=n_max,
        count=getattr(ns, "count", 10),
        seed=getattr(ns, "seed", 0),
        include_triangles=getattr(ns, "include_triangles", False),
        output=getattr(ns, "output", "json"),
    )


def load_graph(cfg: RunConfig) -> Graph:
    if cfg.edges is not None:
        return parse_graph("\n".join(e.replace("-", " ") for e in cfg.edges.split(",")), "edges")
    if cfg.input is None:
        raise GraphError("no graph given; use --input FILE or --edges")
    if cfg.input == "-":
        return parse_graph(sys.stdin.read())
    try:
        with open(cfg.input) as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise GraphError(f"cannot read {cfg.input}: {exc.strerror}") from None


def _emit(obj, cfg: RunConfig, text: str, out):
    if cfg.output == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def cmd_invariants(cfg: RunConfig, out) -> int:
    g = load_graph(cfg)
    if cfg.t != 3:
        rep = conjecture_probe(g, cfg.t, cfg.field)
        rep["schema"] = 1
        text = "\n".join(f"{k}: {v}" for k, v in rep.items() if k != "generators")
        _emit(rep, cfg, text, out)
        return EXIT_OK
    rep = invariants(g, cfg.method, cfg.field, cfg.fallback_n)
    lines = [
        f"n={rep.n} edges={rep.edges} kind={rep.kind}" + (f" cycle={rep.cycle_length}" if rep.cycle_length else ""),
        f"nu3={rep.nu3} proximal={rep.proximal}",
        f"pd(I)={rep.pd_ideal} reg(I)={rep.reg_ideal}",
        f"pd(S/I)={rep.pd_quotient} reg(S/I)={rep.reg_quotient}",
        f"method={rep.method} field=GF({rep.field})",
    ] + [f"warning: {w}" for w in rep.warnings]
    _emit(rep.to_dict(), cfg, "\n".join(lines), out)
    return EXIT_OK


def cmd_betti(cfg: RunConfig, out) -> int:
    g = load_graph(cfg)
    ideal = path_ideal(g, cfg.t)
    if ideal.is_zero:
        raise GraphError(f"I_{cfg.t}(G) is the zero ideal; its Betti table is undefined")
    table = betti.betti_table(ideal, cfg.field)
    d = table.to_dict()
    d["schema"] = 1
    _emit(d, cfg, table.format(), out)
    return EXIT_OK


def cmd_nu(cfg: RunConfig, out) -> int:
    g = load_graph(cfg)
    res = nu_t_bruteforce(g, cfg.t)
    witness = [[g.names[v] for v in path_order(g, p)] for p in res.witness]
    d = {"schema": 1, "t": cfg.t, "nu": res.value, "witness": witness,
         "recursion": nu3_recursive(g) if cfg.t == 3 else None}
    text = f"nu_{cfg.t} = {res.value}\n" + "\n".join("  " + "-".join(w) for w in witness)
    _emit(d, cfg, text, out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    vc = VerifyConfig(cfg.family, cfg.n_min, cfg.n_max, cfg.count, cfg.seed,
                      primes=cfg.fields or (2, 32003), fallback_n=cfg.fallback_n,
                      include_triangles=cfg.include_triangles)
    summary = run_verify(vc)
    d = summary.to_dict()
    lines = [f"{cfg.family}: {cfg.count} instances, n in {cfg.n_min}..{cfg.n_max}, seed {cfg.seed}"]
    for name, c in d["checks"].items():
        lines.append(f"  {name:22s} " + " ".join(f"{k}={v}" for k, v in sorted(c.items())))
    if d["branches"]:
        lines.append("  branches " + " ".join(f"{k}={v}" for k, v in sorted(d["branches"].items())))
    for pr in d["problems"]:
        lines.append(f"  {pr['status'].upper()} #{pr['index']} {pr['check']}: {pr['detail']}")
    lines.append("OK" if summary.ok else "FAILED")
    _emit(d, cfg, "\n".join(lines), out)
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_gen(cfg: RunConfig, out) -> int:
    gc = GenConfig(cfg.family, cfg.n_min, cfg.n_max, cfg.count, cfg.seed,
                   include_triangles=cfg.include_triangles)
    blocks = []
    for i in range(cfg.count):
        g = generate(gc, i)
        blocks.append(f"# instance {i} family={cfg.family} seed={cfg.seed}\n" + g.to_edge_list().rstrip("\n"))
    out.write("\n\n".join(blocks) + "\n")
    return EXIT_OK


def cmd_export_m2(cfg: RunConfig, out) -> int:
    g = load_graph(cfg)
    ideal = path_ideal(g, cfg.t)
    field = cfg.fields[0] if cfg.fields else 32003
    expected = None
    if ideal.is_zero:
        pass
    elif cfg.t == 3:
        rep = invariants(g, "auto", field, cfg.fallback_n)
        expected = (rep.pd_ideal, rep.reg_ideal)
    else:
        table = betti.betti_table(ideal, field)
        expected = (table.pd, table.reg)
    out.write(export_m2(g, cfg.t, field, expected))
    return EXIT_OK


COMMANDS = {
    "invariants": cmd_invariants,
    "betti": cmd_betti,
    "nu": cmd_nu,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "export-m2": cmd_export_m2,
}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    cfg = to_config(ns)
    try:
        return COMMANDS[cfg.command](cfg, out)
    except BudgetError as exc:
        err.write(f"pathideal: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (GraphError, ValueError) as exc:
        err.write(f"pathideal: {exc}\n")
        return EXIT_INVALID


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
