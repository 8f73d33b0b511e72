"""T-shaped diagrams, their Cartan matrices and the format they encode.

A diagram T_{p,q,r} has a center vertex ``u`` and three arms with p-1, q-1
and r-1 vertices.  Arm vertices are named by arm letter and distance from
the center: ``x1`` is adjacent to ``u``, ``x2`` to ``x1`` and so on.  All
matrices in the package are indexed by these names through
:attr:`Diagram.vertices`, so enlarging an arm never renames a vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import FormatError

ARMS = ("x", "y", "z")
CENTER = "u"


def vertex_name(arm: str, index: int = 0) -> str:
    if arm in ("center", CENTER):
        return CENTER
    if arm not in ARMS or index < 1:
        raise ValueError(f"bad vertex ({arm!r}, {index!r})")
    return f"{arm}{index}"


def parse_vertex(name: str) -> tuple[str, int]:
    """Split a vertex name into (arm, index); the center is ("u", 0)."""
    if name == CENTER:
        return CENTER, 0
    arm, rest = name[:1], name[1:]
    if arm not in ARMS or not rest.isdigit() or int(rest) < 1:
        raise ValueError(f"not a vertex name: {name!r}")
    return arm, int(rest)


@dataclass(frozen=True)
class Format:
    """Betti format (f0, f1, f2, f3) = (r1, r1+r2, r2+r3, r3)."""

    r1: int
    r2: int
    r3: int

    def __post_init__(self):
        if self.r1 < 1 or self.r2 < 2 or self.r3 < 1:
            raise FormatError(f"need r1>=1, r2>=2, r3>=1, got {self.rs}")

    @property
    def rs(self) -> tuple[int, int, int]:
        return (self.r1, self.r2, self.r3)

    @property
    def f(self) -> tuple[int, int, int, int]:
        return (self.r1, self.r1 + self.r2, self.r2 + self.r3, self.r3)

    @classmethod
    def from_ranks(cls, f0: int, f1: int, f2: int, f3: int) -> "Format":
        r1, r3 = f0, f3
        r2 = f1 - f0
        if f2 != r2 + r3:
            raise FormatError(f"({f0},{f1},{f2},{f3}) has nonzero Euler characteristic")
        return cls(r1, r2, r3)

    @classmethod
    def parse(cls, text: str) -> "Format":
        try:
            parts = [int(t) for t in text.replace(" ", "").split(",")]
        except ValueError:
            raise FormatError(f"cannot parse format {text!r}") from None
        if len(parts) != 4:
            raise FormatError(f"format needs four ranks, got {text!r}")
        return cls.from_ranks(*parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.f))


@dataclass(frozen=True)
class Diagram:
    """The T-shaped graph with arms of nx, ny, nz vertices around ``u``."""

    nx: int
    ny: int
    nz: int

    def __post_init__(self):
        if min(self.nx, self.ny, self.nz) < 0:
            raise ValueError("arm lengths must be nonnegative")

    @classmethod
    def from_pqr(cls, p: int, q: int, r: int) -> "Diagram":
        return cls(p - 1, q - 1, r - 1)

    @property
    def pqr(self) -> tuple[int, int, int]:
        return (self.nx + 1, self.ny + 1, self.nz + 1)

    def arm_length(self, arm: str) -> int:
        return {"x": self.nx, "y": self.ny, "z": self.nz}[arm]

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        xs = [f"x{i}" for i in range(self.nx, 0, -1)]
        ys = [f"y{i}" for i in range(1, self.ny + 1)]
        zs = [f"z{i}" for i in range(1, self.nz + 1)]
        return tuple(xs + [CENTER] + ys + zs)

    @cached_property
    def search_order(self) -> tuple[str, ...]:
        """Fixed exploration order: x-arm outward, u, y-arm, z-arm."""
        xs = [f"x{i}" for i in range(1, self.nx + 1)]
        ys = [f"y{i}" for i in range(1, self.ny + 1)]
        zs = [f"z{i}" for i in range(1, self.nz + 1)]
        return tuple(xs + [CENTER] + ys + zs)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"vertex {name!r} not in {self}") from None

    @cached_property
    def edges(self) -> tuple[tuple[str, str], ...]:
        out = []
        for arm in ARMS:
            prev = CENTER
            for i in range(1, self.arm_length(arm) + 1):
                out.append((prev, f"{arm}{i}"))
                prev = f"{arm}{i}"
        return tuple(out)

    @cached_property
    def neighbors(self) -> dict[str, tuple[str, ...]]:
        nb: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return {v: tuple(n) for v, n in nb.items()}

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        for u, v in self.edges:
            i, j = self.index[u], self.index[v]
            a[i][j] = a[j][i] = -1
        return tuple(tuple(row) for row in a)

    @cached_property
    def cartan_det(self) -> int:
        return int(_det([[Fraction(x) for x in row] for row in self.cartan]))

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...] | None:
        return _inverse([[Fraction(x) for x in row] for row in self.cartan])

    def classify(self) -> str:
        p, q, r = self.pqr
        s = Fraction(1, p) + Fraction(1, q) + Fraction(1, r)
        if s > 1:
            return "finite"
        if s == 1:
            return "affine"
        return "indefinite"

    @property
    def is_finite(self) -> bool:
        return self.classify() == "finite"

    def enlarge(self, arm: str, by: int = 1) -> "Diagram":
        if by < 0:
            raise ValueError("cannot shrink a diagram")
        return Diagram(
            self.nx + (by if arm == "x" else 0),
            self.ny + (by if arm == "y" else 0),
            self.nz + (by if arm == "z" else 0),
        )

    def to_format(self) -> Format:
        return Format(self.nx, self.ny + 2, self.nz)

    @property
    def y_end(self) -> str:
        """Outermost y vertex, or ``u`` when the y-arm is empty."""
        return f"y{self.ny}" if self.ny else CENTER

    @property
    def x_end(self) -> str:
        return f"x{self.nx}" if self.nx else CENTER

    @property
    def z_end(self) -> str:
        return f"z{self.nz}" if self.nz else CENTER

    def name(self) -> str:
        p, q, r = self.pqr
        return f"T_{{{p},{q},{r}}}"

    def to_json(self) -> dict:
        p, q, r = self.pqr
        return {
            "p": p,
            "q": q,
            "r": r,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        return cls.from_pqr(data["p"], data["q"], data["r"])

    def __str__(self) -> str:
        return self.name()


def diagram_from_format(fmt: Format) -> Diagram:
    return Diagram(fmt.r1, fmt.r2 - 2, fmt.r3)


def cartan_matrix(diagram: Diagram) -> tuple[tuple[int, ...], ...]:
    return diagram.cartan


def classify(diagram: Diagram) -> str:
    return diagram.classify()


def enlarge(diagram: Diagram, arm: str, by: int = 1) -> Diagram:
    return diagram.enlarge(arm, by)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                k = m[r][c] / m[c][c]
                m[r] = [a - k * b for a, b in zip(m[r], m[c])]
    return det


def _inverse(m: list[list[Fraction]]):
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [a / p for a in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                k = aug[r][c]
                aug[r] = [a - k * b for a, b in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)
