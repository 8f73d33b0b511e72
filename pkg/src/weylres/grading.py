"""Combinatorial multigrading of the resolution attached to sigma.

The six weight sequences are the weights of the one-dimensional weight
spaces of F_0^*, F_1^*, F_2, F_1, F_2^*, F_3^* inside the three extremal
representations, listed from highest to lowest.  Generator degrees are the
multidegrees in which the generators are *generated*: a differential entry
from generator s to generator t is homogeneous of degree D_s - D_t, i.e.
twist(t) - twist(s) in R(-D) notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import weight as wt
from .diagram import Diagram, Format, diagram_from_format
from .weyl import WeylWord

SEQUENCE_NAMES = ("Q0'", "Q1'", "Q2", "Q1", "Q2'", "Q3'")


def _chain(diagram: Diagram, start: str, reflections: Sequence[str]) -> list[tuple]:
    cur = wt.fundamental(diagram, start)
    out = [cur]
    for v in reflections:
        cur = wt.reflect(diagram, cur, v)
        out.append(cur)
    return out


def arm_chain(fmt: Format, arm: str, descending: bool = True) -> list[str]:
    n = {"x": fmt.r1, "y": fmt.r2 - 2, "z": fmt.r3}[arm]
    idx = range(n, 0, -1) if descending else range(1, n + 1)
    return [f"{arm}{i}" for i in idx]


def sl_chains(fmt: Format) -> dict[str, list[str]]:
    """Vertex chains of the type A subdiagrams acting on each F_i.

    Each chain starts at the vertex whose fundamental weight is the highest
    weight of the standard-type component.
    """
    xs_out = arm_chain(fmt, "x", True)
    ys_out = arm_chain(fmt, "y", True)
    zs_out = arm_chain(fmt, "z", True)
    xs_in = arm_chain(fmt, "x", False)
    ys_in = arm_chain(fmt, "y", False)
    zs_in = arm_chain(fmt, "z", False)
    return {
        "F0*": xs_out[:-1],
        "F1*": xs_out + ["u"] + ys_in,
        "F2": ys_out + ["u"] + zs_in,
        "F1": ys_out + ["u"] + xs_in,
        "F2*": zs_out + ["u"] + ys_in,
        "F3*": zs_out[:-1],
    }


def weight_sequences(fmt: Format) -> dict[str, list[tuple]]:
    d = diagram_from_format(fmt)
    ch = sl_chains(fmt)
    x_top, y_top, z_top = f"x{fmt.r1}", d.y_end, f"z{fmt.r3}"
    return {
        "Q0'": _chain(d, x_top, ch["F0*"]),
        "Q1'": _chain(d, x_top, ch["F1*"]),
        "Q2": _chain(d, y_top, ch["F2"]),
        "Q1": _chain(d, y_top, ch["F1"]),
        "Q2'": _chain(d, z_top, ch["F2*"]),
        "Q3'": _chain(d, z_top, ch["F3*"]),
    }


@dataclass
class BettiTable:
    """Generator multidegrees (alpha-coordinates) per homological degree."""

    diagram: Diagram
    modules: list[list[tuple]] = field(default_factory=list)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.modules)

    def coarse(self, vertex: str = "x1") -> list[list[int]]:
        return coarse_grading(self, vertex)

    def shifted(self, delta: Sequence[int]) -> "BettiTable":
        return BettiTable(self.diagram, [[wt.add(g, delta) for g in m] for m in self.modules])

    def negated(self) -> "BettiTable":
        return BettiTable(self.diagram, [[wt.neg(g) for g in m] for m in self.modules])

    def to_json(self, vertex: str = "x1") -> dict:
        coarse = self.coarse(vertex)
        return {
            "modules": [
                {"rank": len(m), "multidegrees": [list(g) for g in m], "coarse": c}
                for m, c in zip(self.modules, coarse)
            ]
        }

    @classmethod
    def from_json(cls, diagram: Diagram, data: dict) -> "BettiTable":
        return cls(diagram, [[tuple(g) for g in m["multidegrees"]] for m in data["modules"]])

    def text(self, vertex: str = "x1") -> str:
        return render_coarse(self, vertex)


def betti_multidegrees(fmt: Format, sigma: WeylWord) -> BettiTable:
    """Generator degrees of F_0..F_3 in alpha-coordinates."""
    d = diagram_from_format(fmt)
    if sigma.diagram != d:
        sigma = WeylWord(d, sigma.letters)
    q = weight_sequences(fmt)
    s = sigma.act
    shift = s(wt.fundamental(d, f"x{fmt.r1}"))
    w_z1 = wt.fundamental(d, "z1")
    s_x1 = s(wt.fundamental(d, "x1"))
    f0 = [wt.add(wt.neg(s(w)), shift) for w in reversed(q["Q0'"])]
    f1 = [wt.add(wt.neg(w), shift) for w in reversed(q["Q1'"])]
    f2 = [wt.add(wt.sub(s(w), w_z1), shift) for w in q["Q2"]]
    # F_3 is a projected component, like F_1, so sigma does not act on Q3'
    f3 = [wt.add(wt.sub(wt.add(wt.neg(w), s_x1), w_z1), shift) for w in reversed(q["Q3'"])]
    conv = lambda lst: [wt.omega_to_alpha(d, w) for w in lst]
    return BettiTable(d, [conv(f0), conv(f1), conv(f2), conv(f3)])


def betti_multidegrees_alternative(fmt: Format, sigma: WeylWord) -> BettiTable:
    """Same table from the companion formulas for F_1 and F_2."""
    d = diagram_from_format(fmt)
    q = weight_sequences(fmt)
    s = sigma.act
    shift = s(wt.fundamental(d, f"x{fmt.r1}"))
    w_z1 = wt.fundamental(d, "z1")
    s_x1 = s(wt.fundamental(d, "x1"))
    base = betti_multidegrees(fmt, sigma)
    f1 = [wt.add(wt.sub(w, w_z1), shift) for w in q["Q1"]]
    f2 = [wt.add(wt.sub(wt.add(wt.neg(s(w)), s_x1), w_z1), shift) for w in reversed(q["Q2'"])]
    conv = lambda lst: [wt.omega_to_alpha(d, w) for w in lst]
    return BettiTable(d, [base.modules[0], conv(f1), conv(f2), base.modules[3]])


def coarse_grading(table: BettiTable, vertex: str = "x1") -> list[list[int]]:
    """Negated alpha_vertex coefficient of every generator."""
    i = table.diagram.idx(vertex)
    return [[-g[i] for g in m] for m in table.modules]


def exchange_grading(table: BettiTable, sigma: WeylWord) -> BettiTable:
    """Grading of the x/z-exchanged complex: apply sigma^{-1}, then negate."""
    inv = sigma.inverse()
    return BettiTable(table.diagram, [[wt.neg(inv.act_root(g)) for g in m] for m in table.modules])


def normalize_last(table: BettiTable, module: int = 0) -> BettiTable:
    """Shift so that the first generator of the given module sits at 0."""
    return table.shifted(wt.neg(table.modules[module][0]))


def render_coarse(table: BettiTable, vertex: str = "x1") -> str:
    """One-line layout 0 -> F3 -> F2 -> F1 -> F0 with R(-k) twists."""
    parts = ["0"]
    for degs in reversed(coarse_grading(table, vertex)):
        counts: dict[int, int] = {}
        for k in degs:
            counts[k] = counts.get(k, 0) + 1
        terms = []
        for k in sorted(counts):
            power = "" if counts[k] == 1 else f"^{counts[k]}"
            twist = "" if k == 0 else f"({-k})"
            terms.append(f"R{power}{twist}")
        parts.append(" + ".join(terms) if terms else "0")
    return " -> ".join(parts)


def render_betti_diagram(table: BettiTable, vertex: str = "x1") -> str:
    """Macaulay2-style Betti diagram of the coarse grading."""
    coarse = coarse_grading(table, vertex)
    rows: dict[int, list[int]] = {}
    for i, degs in enumerate(coarse):
        for k in degs:
            rows.setdefault(k - i, [0] * len(coarse))[i] += 1
    header = "       " + " ".join(f"{i:>3}" for i in range(len(coarse)))
    lines = [header, "total: " + " ".join(f"{len(m):>3}" for m in coarse)]
    for r in sorted(rows):
        cells = " ".join(f"{c:>3}" if c else "  ." for c in rows[r])
        lines.append(f"{r:>5}: {cells}")
    return "\n".join(lines)
