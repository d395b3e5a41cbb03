"""Macaulay2 script export for manual cross-checking."""

from __future__ import annotations

import re

from .graph import Graph
from .ideal import path_ideal

_IDENT = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


def m2_names(names: tuple[str, ...]) -> list[str]:
    """Vertex labels if they are all usable M2 symbols, else x1..xn."""
    if all(_IDENT.match(v) for v in names) and len(set(names)) == len(names):
        return list(names)
    return [f"x{i + 1}" for i in range(len(names))]


def export_m2(g: Graph, t: int = 3, field: int = 32003,
              expected: tuple[int, int] | None = None) -> str:
    """A standalone M2 script for I_t(g); ``expected`` is (pd, reg) of the ideal."""
    names = m2_names(g.names)
    ideal = path_ideal(g, t)
    lines = [f"-- {t}-path ideal of a graph with {g.n} vertices and {g.edge_count} edges"]
    if names != list(g.names):
        lines += [f"-- variable {a} is vertex {b}" for a, b in zip(names, g.names)]
    lines += [f"kk = ZZ/{field}", f"S = kk[{','.join(names)}]"]
    if ideal.is_zero:
        lines += [
            f"-- WARNING: the graph has no {t}-path, so I_{t}(G) is the zero ideal",
            "I = ideal(0_S)",
        ]
        return "\n".join(lines) + "\n"
    gens = ["*".join(names[v] for v in range(g.n) if m >> v & 1) for m in ideal.gens]
    lines.append(f"I = ideal({', '.join(gens)})")
    if expected is not None:
        pd, reg = expected
        lines.append(f"-- expected: pdim module I = {pd}, regularity module I = {reg}")
        lines.append(f"-- expected: pdim comodule I = {pd + 1}, regularity comodule I = {reg - 1}")
    lines += [
        "F = res I",
        "print betti F",
        "print(pdim module I, regularity module I)",
        "print(pdim comodule I, regularity comodule I)",
    ]
    return "\n".join(lines) + "\n"
