"""Sparse multivariate polynomials over Q, multigraded by the root lattice.

A polynomial is a dict from exponent tuples to nonzero Fractions.  Each
variable carries a multidegree; for the rings built from sigma these are
negatives of positive roots, so every graded piece is finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InfiniteMonomialBasis, NoSolution, NotSkewError
from .sparse import solve_sparse


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    degrees: tuple[tuple[int, ...], ...]
    ndeg: int = 0

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(tuple(d) for d in self.degrees))
        if self.degrees:
            object.__setattr__(self, "ndeg", len(self.degrees[0]))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, k: int) -> "Poly":
        e = [0] * self.nvars
        e[k] = 1
        return Poly({tuple(e): Fraction(1)}, self.nvars)

    def gens(self) -> list["Poly"]:
        return [self.var(k) for k in range(self.nvars)]

    def const(self, c) -> "Poly":
        return Poly.constant(c, self.nvars)

    def zero(self) -> "Poly":
        return Poly({}, self.nvars)

    def one(self) -> "Poly":
        return self.const(1)

    def monomial_degree(self, e: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.ndeg
        for k, a in enumerate(e):
            if a:
                for i, x in enumerate(self.degrees[k]):
                    out[i] += a * x
        return tuple(out)

    def to_json(self) -> dict:
        return {"variables": [{"name": n, "degree": list(d)} for n, d in zip(self.names, self.degrees)]}

    @classmethod
    def from_json(cls, data: dict) -> "PolyRing":
        vs = data["variables"]
        ndeg = len(vs[0]["degree"]) if vs else data.get("ndeg", 0)
        return cls(tuple(v["name"] for v in vs), tuple(tuple(v["degree"]) for v in vs), ndeg)

    def monomials_of_degree(self, delta: Sequence[int]) -> list[tuple[int, ...]]:
        return monomials_of_degree(self, delta)


class Poly:
    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict | None = None, nvars: int = 0):
        self.terms = terms if terms is not None else {}
        self.nvars = nvars

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        c = Fraction(c)
        return cls({(0,) * nvars: c} if c else {}, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        return Poly(_add(self.terms, other.terms, 1), self.nvars)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        return Poly(_add(self.terms, other.terms, -1), self.nvars)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            k = Fraction(other)
            if not k:
                return Poly({}, self.nvars)
            return Poly({e: c * k for e, c in self.terms.items()}, self.nvars)
        return Poly(_mul(self.terms, other.terms), max(self.nvars, other.nvars))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        return self.terms == Poly.constant(other, self.nvars).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t *= Fraction(x) ** a
            total += t
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def multidegrees(self, ring: PolyRing) -> set[tuple[int, ...]]:
        return {ring.monomial_degree(e) for e in self.terms}

    def is_homogeneous(self, ring: PolyRing, expected: Sequence[int] | None = None) -> bool:
        degs = self.multidegrees(ring)
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return expected is None or next(iter(degs)) == tuple(expected)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        # graded-lex on variable index
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def to_json(self) -> list[dict]:
        return [{"c": str(c), "e": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict], nvars: int) -> "Poly":
        return cls({tuple(t["e"]): Fraction(t["c"]) for t in data if Fraction(t["c"])}, nvars)

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"t{k}" for k in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self.format()})"

    def divide_exact(self, other: "Poly") -> "Poly":
        """Exact quotient; raises ArithmeticError when other does not divide self."""
        q, r = divmod_poly(self, other)
        if r.terms:
            raise ArithmeticError("inexact polynomial division")
        return q

    def scaled_to(self, other: "Poly") -> Fraction | None:
        """The rational u with self == u*other, or None."""
        if not self.terms or not other.terms:
            return Fraction(1) if not self.terms and not other.terms else None
        e = next(iter(other.terms))
        if e not in self.terms:
            return None
        u = self.terms[e] / other.terms[e]
        if len(self.terms) != len(other.terms):
            return None
        for k, c in other.terms.items():
            if self.terms.get(k) != u * c:
                return None
        return u


def _add(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def mul_monomial(terms: dict, e: tuple, c) -> dict:
    return {tuple(x + y for x, y in zip(k, e)): v * c for k, v in terms.items()}


def _glex_key(e):
    return (sum(e), e)


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Multivariate division by a single divisor under graded-lex order."""
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    lead = max(g.terms, key=_glex_key)
    lc = g.terms[lead]
    rem = dict(f.terms)
    quot: dict = {}
    out_rem: dict = {}
    while rem:
        m = max(rem, key=_glex_key)
        c = rem[m]
        if all(a >= b for a, b in zip(m, lead)):
            e = tuple(a - b for a, b in zip(m, lead))
            k = c / lc
            quot[e] = quot.get(e, 0) + k
            rem = _add(rem, mul_monomial(g.terms, e, k), -1)
        else:
            out_rem[m] = c
            del rem[m]
    n = max(f.nvars, g.nvars)
    return Poly({e: c for e, c in quot.items() if c}, n), Poly(out_rem, n)


@dataclass
class PolyMatrix:
    ring: PolyRing
    entries: list[list[Poly]]
    row_degrees: list[tuple] | None = None
    col_degrees: list[tuple] | None = None
    empty_cols: int = 0  # column count when there are no rows

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else self.empty_cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def zeros(cls, ring: PolyRing, m: int, n: int, **kw) -> "PolyMatrix":
        return cls(ring, [[ring.zero() for _ in range(n)] for _ in range(m)], empty_cols=n, **kw)

    @classmethod
    def from_constants(cls, ring: PolyRing, rows: list[list], **kw) -> "PolyMatrix":
        return cls(ring, [[ring.const(x) for x in r] for r in rows], **kw)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc: dict = {}
                for k in range(self.ncols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        acc = _add(acc, _mul(a.terms, b.terms), 1)
                row.append(Poly(acc, self.ring.nvars))
            out.append(row)
        return PolyMatrix(self.ring, out, self.row_degrees, other.col_degrees, empty_cols=other.ncols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.row_degrees, self.col_degrees)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.row_degrees, self.col_degrees)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries], self.row_degrees, self.col_degrees)

    def scaled(self, k) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[a * k for a in r] for r in self.entries], self.row_degrees, self.col_degrees)

    def transpose(self) -> "PolyMatrix":
        rd = [tuple(-x for x in d) for d in self.col_degrees] if self.col_degrees is not None else None
        cd = [tuple(-x for x in d) for d in self.row_degrees] if self.row_degrees is not None else None
        ent = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return PolyMatrix(self.ring, ent, rd, cd, empty_cols=self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        rd = [self.row_degrees[i] for i in rows] if self.row_degrees is not None else None
        cd = [self.col_degrees[j] for j in cols] if self.col_degrees is not None else None
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows], rd, cd, empty_cols=len(cols))

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        cd = None
        if self.col_degrees is not None and other.col_degrees is not None:
            cd = list(self.col_degrees) + list(other.col_degrees)
        return PolyMatrix(self.ring, [r + s for r, s in zip(self.entries, other.entries)], self.row_degrees, cd)

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        rd = None
        if self.row_degrees is not None and other.row_degrees is not None:
            rd = list(self.row_degrees) + list(other.row_degrees)
        return PolyMatrix(self.ring, self.entries + other.entries, rd, self.col_degrees)

    def is_zero(self) -> bool:
        return all(not a.terms for r in self.entries for a in r)

    def is_constant(self) -> bool:
        return all(a.is_constant() for r in self.entries for a in r)

    def evaluate(self, point: Sequence) -> list[list[Fraction]]:
        return [[a.evaluate(point) for a in r] for r in self.entries]

    def column(self, j: int) -> list[Poly]:
        return [r[j] for r in self.entries]

    def entry_degree(self, i: int, j: int) -> tuple:
        """Required degree of entry (i, j): col degree minus row degree."""
        return tuple(a - b for a, b in zip(self.col_degrees[j], self.row_degrees[i]))

    def homogeneity_failures(self) -> list[tuple[int, int]]:
        bad = []
        if self.row_degrees is None or self.col_degrees is None:
            return bad
        for i, r in enumerate(self.entries):
            for j, a in enumerate(r):
                if a.terms and not a.is_homogeneous(self.ring, self.entry_degree(i, j)):
                    bad.append((i, j))
        return bad

    def is_homogeneous(self) -> bool:
        return not self.homogeneity_failures()

    def to_json(self) -> dict:
        out = {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[a.to_json() for a in r] for r in self.entries],
        }
        if self.row_degrees is not None:
            out["row_degrees"] = [list(d) for d in self.row_degrees]
        if self.col_degrees is not None:
            out["col_degrees"] = [list(d) for d in self.col_degrees]
        return out

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "PolyMatrix":
        n = ring.nvars
        ent = [[Poly.from_json(a, n) for a in r] for r in data["entries"]]
        rd = [tuple(d) for d in data["row_degrees"]] if "row_degrees" in data else None
        cd = [tuple(d) for d in data["col_degrees"]] if "col_degrees" in data else None
        return cls(ring, ent, rd, cd, empty_cols=data.get("cols", 0))

    def format(self) -> str:
        cells = [[a.format(self.ring.names) for a in r] for r in self.entries]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


# determinants ---------------------------------------------------------------

def determinant(m: PolyMatrix | list[list[Poly]], nvars: int | None = None) -> Poly:
    ent = m.entries if isinstance(m, PolyMatrix) else m
    n = len(ent)
    if nvars is None:
        nvars = m.ring.nvars if isinstance(m, PolyMatrix) else (ent[0][0].nvars if n else 0)
    if n == 0:
        return Poly.constant(1, nvars)
    if any(len(r) != n for r in ent):
        raise ValueError("determinant of a non-square matrix")
    if n <= 8:
        return _det_expansion(ent, nvars)
    return _det_bareiss(ent, nvars)


def _det_expansion(ent, nvars) -> Poly:
    """Laplace expansion along rows, memoized on the set of used columns."""
    n = len(ent)
    layer: dict[tuple, dict] = {(): {(0,) * nvars: Fraction(1)}}
    for i in range(n):
        nxt: dict[tuple, dict] = {}
        for used, val in layer.items():
            for j in range(n):
                if j in used:
                    continue
                a = ent[i][j]
                if not a.terms:
                    continue
                sign = -1 if sum(1 for u in used if u > j) % 2 else 1
                key = tuple(sorted(used + (j,)))
                prod = _mul(val, a.terms)
                nxt[key] = _add(nxt.get(key, {}), prod, sign)
        layer = nxt
    return Poly(layer.get(tuple(range(n)), {}), nvars)


def _det_bareiss(ent, nvars) -> Poly:
    n = len(ent)
    m = [[ent[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = Poly.constant(1, nvars)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k].terms), None)
        if piv is None:
            return Poly({}, nvars)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divide_exact(prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def minor(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Poly:
    return determinant([[m.entries[i][j] for j in cols] for i in rows], m.ring.nvars)


def exterior_power(m: PolyMatrix, k: int) -> tuple[list[list[Poly]], list[tuple], list[tuple]]:
    """k x k minors, rows/cols indexed by lexicographic k-subsets."""
    rs = list(combinations(range(m.nrows), k))
    cs = list(combinations(range(m.ncols), k))
    ent = [[minor(m, r, c) for c in cs] for r in rs]
    return ent, rs, cs


def pfaffian(m: PolyMatrix | list[list[Poly]], nvars: int | None = None) -> Poly:
    ent = m.entries if isinstance(m, PolyMatrix) else m
    n = len(ent)
    if nvars is None:
        nvars = m.ring.nvars if isinstance(m, PolyMatrix) else (ent[0][0].nvars if n else 0)
    for i in range(n):
        for j in range(n):
            if ent[i][j] != -ent[j][i]:
                raise NotSkewError("matrix is not skew-symmetric")
    if n % 2:
        raise NotSkewError("pfaffian of an odd-size matrix")
    memo: dict[tuple, Poly] = {}

    def pf(idx: tuple) -> Poly:
        if not idx:
            return Poly.constant(1, nvars)
        if idx in memo:
            return memo[idx]
        i = idx[0]
        acc = Poly({}, nvars)
        for pos in range(1, len(idx)):
            j = idx[pos]
            a = ent[i][j]
            if not a.terms:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = a * pf(rest)
            acc = acc + term if pos % 2 == 1 else acc - term
        memo[idx] = acc
        return acc

    return pf(tuple(range(n)))


def submaximal_pfaffians(m: PolyMatrix) -> list[Poly]:
    """Signed pfaffians of the principal submatrices deleting one index."""
    n = m.nrows
    out = []
    for k in range(n):
        keep = [i for i in range(n) if i != k]
        sub = [[m.entries[i][j] for j in keep] for i in keep]
        p = pfaffian(sub, m.ring.nvars)
        out.append(p if k % 2 == 0 else -p)
    return out


def is_homogeneous(p: Poly, ring: PolyRing, expected: Sequence[int]) -> bool:
    return p.is_homogeneous(ring, expected)


# graded solving --------------------------------------------------------------

def monomials_of_degree(ring: PolyRing, delta: Sequence[int]) -> list[tuple[int, ...]]:
    """All exponent vectors of multidegree delta (finite when the cone is pointed)."""
    heights = [sum(d) for d in ring.degrees]
    if any(h == 0 for h in heights) or (heights and min(heights) < 0 < max(heights)):
        raise InfiniteMonomialBasis("variable degrees do not lie in an open half-space")
    sgn = -1 if heights and heights[0] < 0 else 1
    target = tuple(delta)
    if not ring.nvars:
        return [()] if not any(target) else []
    nonpos = all(x <= 0 for d in ring.degrees for x in d)
    nonneg = all(x >= 0 for d in ring.degrees for x in d)
    out: list[tuple[int, ...]] = []
    n = ring.nvars
    exps = [0] * n

    def rec(k: int, rem: tuple):
        if nonpos and any(x > 0 for x in rem):
            return
        if nonneg and any(x < 0 for x in rem):
            return
        h = sgn * sum(rem)
        if h < 0:
            return
        if k == n:
            if not any(rem):
                out.append(tuple(exps))
            return
        dk = ring.degrees[k]
        hk = sgn * heights[k]
        a = 0
        cur = rem
        while a * hk <= h:
            exps[k] = a
            rec(k + 1, cur)
            a += 1
            cur = tuple(x - y for x, y in zip(cur, dk))
        exps[k] = 0

    rec(0, target)
    return out


def graded_solve(
    A: PolyMatrix,
    b: Sequence[Poly],
    x_degrees: Sequence[Sequence[int]] | None = None,
    b_degree: Sequence[int] | None = None,
    order: Sequence[int] | None = None,
    reverse: bool = False,
) -> list[Poly]:
    """Solve A x = b degreewise.

    Unknown x_j is homogeneous of degree ``x_degrees[j]``; when omitted it is
    derived from the annotations as b_degree - col_degree_j.  The particular
    solution is the reduced row echelon one with free parameters set to 0;
    ``order`` permutes the unknown columns before elimination and ``reverse``
    reverses the full list of monomial coefficients.
    """
    ring = A.ring
    n = A.ncols
    if x_degrees is None:
        if A.col_degrees is None or b_degree is None:
            raise ValueError("need x_degrees or column annotations plus b_degree")
        x_degrees = [tuple(p - q for p, q in zip(b_degree, c)) for c in A.col_degrees]
    bases = [monomials_of_degree(ring, dj) for dj in x_degrees]
    unknowns = [(j, mono) for j in range(n) for mono in bases[j]]
    if order is not None:
        rank_of = {j: r for r, j in enumerate(order)}
        unknowns.sort(key=lambda u: rank_of[u[0]])
    if reverse:
        unknowns.reverse()
    col_of = {u: k for k, u in enumerate(unknowns)}
    eqs: dict[tuple, dict[int, Fraction]] = {}
    for i in range(A.nrows):
        for j in range(n):
            a = A.entries[i][j]
            if not a.terms:
                continue
            for mono in bases[j]:
                k = col_of[(j, mono)]
                for e, c in a.terms.items():
                    key = (i, tuple(x + y for x, y in zip(e, mono)))
                    row = eqs.setdefault(key, {})
                    row[k] = row.get(k, 0) + c
    rhs: dict[tuple, Fraction] = {}
    for i, bi in enumerate(b):
        for e, c in bi.terms.items():
            rhs[(i, e)] = c
    for key in rhs:
        eqs.setdefault(key, {})
    nu = len(unknowns)
    rows = []
    for key in sorted(eqs):
        r = dict(eqs[key])
        if key in rhs:
            r[nu] = rhs[key]
        if any(r.values()):
            rows.append(r)
    sol = solve_sparse(rows, nu)
    if sol is None:
        raise NoSolution("inconsistent graded system")
    coeffs = [sol.get(k, Fraction(0)) for k in range(nu)]
    x_terms: list[dict] = [{} for _ in range(n)]
    for (j, mono), c in zip(unknowns, coeffs):
        if c:
            x_terms[j][mono] = c
    x = [Poly(t, ring.nvars) for t in x_terms]
    for i in range(A.nrows):
        acc = ring.zero()
        for j in range(n):
            if A.entries[i][j].terms and x[j].terms:
                acc = acc + A.entries[i][j] * x[j]
        if acc != b[i]:
            raise NoSolution("post-check of A x = b failed")
    return x


def graded_solve_matrix(A: PolyMatrix, B: PolyMatrix, x_degrees_per_col: Sequence[Sequence[Sequence[int]]], order=None) -> PolyMatrix:
    """Column-by-column graded_solve for A X = B."""
    cols = []
    for j in range(B.ncols):
        cols.append(graded_solve(A, B.column(j), x_degrees_per_col[j], order=order))
    ent = [[cols[j][i] for j in range(B.ncols)] for i in range(A.ncols)]
    return PolyMatrix(A.ring, ent)


def random_points(ring: PolyRing, count: int, rng, lo: int = 1, hi: int = 97) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(ring.nvars)] for _ in range(count)]


def polys_equal_up_to_unit(a: Poly, b: Poly) -> Fraction | None:
    return a.scaled_to(b)


def product(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly.constant(1, nvars)
    for p in polys:
        out = out * p
    return out
