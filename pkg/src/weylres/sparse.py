"""Column-sparse exact matrices over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def vec_add(a: dict, b: dict, k=1) -> dict:
    """a + k*b, dropping zeros."""
    out = dict(a)
    for i, x in b.items():
        y = out.get(i, 0) + k * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return out


def vec_scale(a: dict, k) -> dict:
    if not k:
        return {}
    return {i: k * x for i, x in a.items()}


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_dense(cls, rows: list[list]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        cols = [{i: Fraction(rows[i][j]) for i in range(nr) if rows[i][j]} for j in range(nc)]
        return cls(nr, nc, cols)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, x in v.items():
            for i, a in self.cols[j].items():
                y = out.get(i, 0) + a * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vec_add(a, b, -1) for a, b in zip(self.cols, other.cols)])

    def scaled(self, k) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vec_scale(c, k) for c in self.cols])

    def transpose(self) -> "SparseMatrix":
        cols: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def triplets(self) -> Iterable[tuple[int, int, Fraction]]:
        for j, col in enumerate(self.cols):
            for i in sorted(col):
                yield i, j, col[i]


def exp_apply(m: SparseMatrix, v: dict, sign: int = 1) -> dict:
    """exp(sign*m) v for nilpotent m."""
    out = dict(v)
    term = dict(v)
    k = 0
    while term:
        k += 1
        term = vec_scale(m.apply(term), Fraction(sign, k))
        out = vec_add(out, term)
    return out


def rank(rows: list[list]) -> int:
    """Exact rank of a dense rational matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nr):
            if m[i][c]:
                k = m[i][c] / m[r][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nr:
            break
    return r


def rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                k = m[i][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def solve_sparse(rows: list[dict], nu: int) -> dict[int, Fraction] | None:
    """Particular solution of a sparse system, free unknowns set to 0.

    Rows map column -> coefficient, with column ``nu`` holding the right-hand
    side.  Pivots are the leftmost columns, so the answer equals the one read
    off the reduced row echelon form.  Returns None when inconsistent.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        while r:
            c = min(r)
            if c == nu:
                return None
            p = pivots.get(c)
            if p is None:
                inv = 1 / r[c]
                pivots[c] = {k: v * inv for k, v in r.items()}
                break
            r = vec_add(r, p, -r[c])
    x: dict[int, Fraction] = {}
    for c in sorted(pivots, reverse=True):
        p = pivots[c]
        val = p.get(nu, Fraction(0))
        for k, v in p.items():
            if k != c and k != nu and k in x:
                val -= v * x[k]
        if val:
            x[c] = val
    return x
