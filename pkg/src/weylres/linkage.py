"""First-order multiplication lifts and linkage by the dual mapping cone."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .diagram import Format
from .errors import FormatError, NoSolution, RegularSequenceSuspect
from .poly import Poly, PolyMatrix, graded_solve
from .resolution import GradedComplex, be_multipliers, check_complex
from .sparse import rank


def _deg_add(*ds):
    return tuple(sum(x) for x in zip(*ds))


def _deg_neg(d):
    return tuple(-x for x in d)


@dataclass
class StructureMaps:
    """w31 on pairs e_i ^ e_j (i < j), w21 on pairs e_i (x) g_k; beta = d1 / a1."""

    w31: PolyMatrix
    w21: PolyMatrix
    pairs: list[tuple[int, int]]
    mixed: list[tuple[int, int]]
    beta: list[Poly]
    a1: Fraction

    def w31_column(self, i: int, j: int) -> list[Poly]:
        """w31(e_i ^ e_j) with the antisymmetric sign."""
        if i == j:
            return [self.w31.ring.zero()] * self.w31.nrows
        sign = 1 if i < j else -1
        k = self.pairs.index((min(i, j), max(i, j)))
        return [p * sign for p in self.w31.column(k)]

    def to_json(self) -> dict:
        return {
            "a1": str(self.a1),
            "beta": [p.to_json() for p in self.beta],
            "w31": self.w31.to_json() | {"source": [list(p) for p in self.pairs]},
            "w21": self.w21.to_json() | {"source": [list(p) for p in self.mixed]},
        }


def _beta(c: GradedComplex) -> tuple[list[Poly], Fraction]:
    be = be_multipliers(c)
    if not be.a1_is_unit():
        raise NoSolution("a1 is not a unit; structure maps need a1 invertible")
    a1 = be.a1[0].constant_term()
    return [p * (1 / a1) for p in c.d1.entries[0]], a1


def _w31_targets(c: GradedComplex, beta: list[Poly], pairs):
    f1 = c.ranks[1]
    zero = c.ring.zero()
    cols = []
    for i, j in pairs:
        col = [zero] * f1
        col[j] = col[j] + beta[i]
        col[i] = col[i] - beta[j]
        cols.append(col)
    return cols


def _apply_d(m: PolyMatrix, vec: list[Poly]) -> list[Poly]:
    out = []
    for r in m.entries:
        acc = m.ring.zero()
        for a, v in zip(r, vec):
            if a.terms and v.terms:
                acc = acc + a * v
        out.append(acc)
    return out


def structure_maps(c: GradedComplex) -> StructureMaps:
    """Lift beta-contractions through d2 (w31) and then through d3 (w21)."""
    f0, f1, f2, f3 = c.ranks
    if f0 != 1:
        raise FormatError("structure maps are computed for f0 = 1 only")
    beta, a1 = _beta(c)
    D0, D1, D2, D3 = c.degrees
    pairs = list(combinations(range(f1), 2))
    targets = _w31_targets(c, beta, pairs)
    w31_cols = []
    for (i, j), b in zip(pairs, targets):
        deg = _deg_add(D1[i], D1[j], _deg_neg(D0[0]))
        xdeg = [_deg_add(deg, _deg_neg(d)) for d in D2]
        w31_cols.append(graded_solve(c.d2, b, xdeg))
    w31 = PolyMatrix(
        c.ring,
        [[w31_cols[k][r] for k in range(len(pairs))] for r in range(f2)],
        list(D2),
        [_deg_add(D1[i], D1[j], _deg_neg(D0[0])) for i, j in pairs],
        empty_cols=len(pairs),
    )
    sm = StructureMaps(w31, None, pairs, [], beta, a1)
    mixed = [(i, k) for i in range(f1) for k in range(f2)]
    w21_cols = []
    zero = c.ring.zero()
    for i, k in mixed:
        g = [zero] * f2
        g[k] = c.ring.one()
        d2g = c.d2.column(k)
        # beta(e_i) g - w31(e_i ^ d2 g)
        b = [beta[i] * x for x in g]
        for j, coef in enumerate(d2g):
            if coef.terms and j != i:
                col = sm.w31_column(i, j)
                b = [x - coef * y for x, y in zip(b, col)]
        deg = _deg_add(D1[i], D2[k], _deg_neg(D0[0]))
        if f3:
            xdeg = [_deg_add(deg, _deg_neg(d)) for d in D3]
            w21_cols.append(graded_solve(c.d3, b, xdeg))
        else:
            if any(x.terms for x in b):
                raise NoSolution("w21 target is nonzero but F3 = 0")
            w21_cols.append([])
    sm.w21 = PolyMatrix(
        c.ring,
        [[w21_cols[m][r] for m in range(len(mixed))] for r in range(f3)],
        list(D3),
        [_deg_add(D1[i], D2[k], _deg_neg(D0[0])) for i, k in mixed],
        empty_cols=len(mixed),
    )
    sm.mixed = mixed
    rep = verify_structure_maps(c, sm)
    if not rep["ok"]:
        raise NoSolution(f"structure map replay failed: {rep}")
    return sm


def verify_structure_maps(c: GradedComplex, sm: StructureMaps) -> dict:
    """Replay both defining equations symbolically."""
    ok31 = True
    for k, (i, j) in enumerate(sm.pairs):
        lhs = _apply_d(c.d2, sm.w31.column(k))
        rhs = _w31_targets(c, sm.beta, [(i, j)])[0]
        ok31 = ok31 and lhs == rhs
    ok21 = True
    f2 = c.ranks[2]
    for m, (i, k) in enumerate(sm.mixed):
        g = [c.ring.zero()] * f2
        g[k] = c.ring.one()
        rhs = [sm.beta[i] * x for x in g]
        for j, coef in enumerate(c.d2.column(k)):
            if coef.terms and j != i:
                col = sm.w31_column(i, j)
                rhs = [x - coef * y for x, y in zip(rhs, col)]
        lhs = _apply_d(c.d3, sm.w21.column(m)) if c.ranks[3] else [c.ring.zero()] * f2
        ok21 = ok21 and lhs == rhs
    return {"w31": ok31, "w21": ok21, "ok": ok31 and ok21}


# linkage ----------------------------------------------------------------------

def link_format(f) -> tuple[int, int, int, int]:
    f0, f1, f2, f3 = tuple(f.f if isinstance(f, Format) else f)
    if f0 != 1:
        raise FormatError("linkage formats start with f0 = 1")
    if f1 < 3:
        raise FormatError(f"f1 = {f1} < 3 cannot be linked by three elements")
    return (1, f3 + 3, f2, f1 - 3)


def regular_sequence_evidence(c: GradedComplex, cols, seed: int = 0) -> dict:
    """Heuristic: all nonzero, nonvanishing at a random point, Jacobian of rank 3 there."""
    alphas = [c.d1.entries[0][j] for j in cols]
    rng = random.Random(seed)
    n = c.ring.nvars
    pt = [rng.randint(1, 97) for _ in range(n)]
    nonzero = all(a.terms for a in alphas)
    values = [a.evaluate(pt) for a in alphas]
    jac = []
    for a in alphas:
        row = []
        for k in range(n):
            dk = {}
            for e, co in a.terms.items():
                if e[k]:
                    e2 = list(e)
                    e2[k] -= 1
                    dk[tuple(e2)] = co * e[k]
            row.append(Poly(dk, n).evaluate(pt))
        jac.append(row)
    jr = rank(jac) if n else 0
    non_assoc = all(alphas[a].scaled_to(alphas[b]) is None for a, b in combinations(range(3), 2))
    return {
        "nonzero": nonzero,
        "nonvanishing_at_point": all(v != 0 for v in values),
        "jacobian_rank": jr,
        "pairwise_non_associate": non_assoc,
        "ok": nonzero and jr == 3 and non_assoc,
        "note": "heuristic evidence only; regularity is not certified",
    }


@dataclass
class LinkResult:
    complex: GradedComplex
    cols: list[int]
    evidence: dict
    psi: dict
    ladder: dict


def _koszul_boundaries(alphas, ring):
    """Koszul differentials on K = <e1,e2,e3>, wedge^2 K = <e23,e13,e12>."""
    a1, a2, a3 = alphas
    o = ring.zero()
    d1 = [[a1, a2, a3]]
    d2 = [[o, -a3, -a2], [-a3, o, a1], [a2, a1, o]]
    d3 = [[a1], [-a2], [a3]]
    return d1, d2, d3


_KPAIRS = [(1, 2), (0, 2), (0, 1)]  # e23, e13, e12


def link(c: GradedComplex, cols, seed: int = 0, strict: bool = True) -> LinkResult:
    """Resolution of (alpha):I from the dual mapping cone of the comparison map K -> F."""
    cols = list(cols)
    if len(cols) != 3 or len(set(cols)) != 3:
        raise FormatError("link needs three distinct column indices of d1")
    f0, f1, f2, f3 = c.ranks
    link_format((f0, f1, f2, f3))
    ev = regular_sequence_evidence(c, cols, seed)
    if strict and not ev["ok"]:
        raise RegularSequenceSuspect(f"columns {cols} fail the regular-sequence heuristic: {ev}")
    sm = structure_maps(c)
    ring = c.ring
    a1 = sm.a1
    alphas = [c.d1.entries[0][j] for j in cols]
    zero = ring.zero()
    # psi1: e_a -> e_{cols[a]}
    psi1 = [[ring.one() if i == cols[a] else zero for a in range(3)] for i in range(f1)]
    # psi2(e_a ^ e_b) = a1 * w31(e_{c_a} ^ e_{c_b})
    psi2_cols = [[p * a1 for p in sm.w31_column(cols[a], cols[b])] for a, b in _KPAIRS]
    psi2 = [[psi2_cols[k][r] for k in range(3)] for r in range(f2)]
    # psi3(e123) = a1^2 * e_{c1} . (e_{c2} e_{c3}) through w21
    g = sm.w31_column(cols[1], cols[2])
    psi3 = [zero] * f3
    for k, gk in enumerate(g):
        if not gk.terms:
            continue
        m = sm.mixed.index((cols[0], k))
        for r in range(f3):
            psi3[r] = psi3[r] + gk * sm.w21.entries[r][m]
    psi3 = [p * (a1 * a1) for p in psi3]
    kd1, kd2, kd3 = _koszul_boundaries(alphas, ring)
    ladder = {
        "psi1": _mat_eq(_mul(c.d1.entries, psi1), kd1),
        "psi2": _mat_eq(_mul(c.d2.entries, psi2), _mul(psi1, kd2)),
        "psi3": _mat_eq(_mul(c.d3.entries, [[p] for p in psi3]), _mul(psi2, kd3)) if f3 else
        all(not p.terms for r in _mul(psi2, kd3) for p in r),
    }
    D0, D1, D2, D3 = c.degrees
    T3 = _deg_add(*(D1[j] for j in cols))
    # K basis k_a = s_a (e_bc)^*, signs chosen so that d1'(k_a) = alpha_a
    ksign = [-1, 1, -1]
    new1 = [_deg_add(_deg_neg(d), T3) for d in D3] + [D1[j] for j in cols]
    new2 = [_deg_add(_deg_neg(d), T3) for d in D2]
    rest = [i for i in range(f1) if i not in cols]
    new3 = [_deg_add(_deg_neg(D1[i]), T3) for i in rest]
    new0 = [tuple(0 for _ in T3)]
    # d1' = [psi3^T | -d3_K^T] with the K signs folded in
    kcol = [-kd3[0][0], -kd3[1][0], -kd3[2][0]]
    e1 = [list(psi3) + [kcol[a] * ksign[a] for a in range(3)]]
    # d2' = [[d3^T], [psi2^T]]
    e2 = [[c.d3.entries[j][r] for j in range(f2)] for r in range(f3)]
    e2 += [[psi2[j][a] * ksign[a] for j in range(f2)] for a in range(3)]
    # d3' = rows `rest` of d2, transposed
    e3 = [[c.d2.entries[i][j] for i in rest] for j in range(f2)]
    ms = [
        PolyMatrix(ring, e1, new0, new1, empty_cols=len(new1)),
        PolyMatrix(ring, e2, new1, new2, empty_cols=len(new2)),
        PolyMatrix(ring, e3, new2, new3, empty_cols=len(new3)),
    ]
    meta = {"linked_from": c.meta, "cols": cols}
    if "diagram" in c.meta:
        meta["diagram"] = c.meta["diagram"]
    out = GradedComplex(ring, [new0, new1, new2, new3], ms, meta)
    psi = {
        "psi1": [[p.to_json() for p in r] for r in psi1],
        "psi2": [[p.to_json() for p in r] for r in psi2],
        "psi3": [p.to_json() for p in psi3],
    }
    return LinkResult(out, cols, ev, psi, ladder)


def _mul(a, b):
    if not a or not b:
        return [[] for _ in a]
    out = []
    for r in a:
        row = []
        for j in range(len(b[0])):
            acc = None
            for k, x in enumerate(r):
                y = b[k][j]
                if x.terms and y.terms:
                    acc = x * y if acc is None else acc + x * y
            row.append(acc if acc is not None else Poly({}, r[0].nvars if r else 0))
        out.append(row)
    return out


def _mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def is_exact_at_point(c: GradedComplex, point) -> bool:
    """rank d_i + rank d_{i+1} = f_i at the point, and d1 surjective."""
    rk = [rank(m.evaluate(point)) if m.nrows and m.ncols else 0 for m in c.d]
    f = c.ranks
    return rk[0] == f[0] and rk[0] + rk[1] == f[1] and rk[1] + rk[2] == f[2] and rk[2] == f[3]


def has_unit_entry(m: PolyMatrix) -> bool:
    return any(p.is_constant() and p.terms for r in m.entries for p in r)


def rank_invariants(c: GradedComplex, sm: StructureMaps, point=None) -> dict:
    """(f3 - rank w3 (x) k, f1 - 3 - rank w2 (x) k) from the j <= 1 components.

    w3 (x) k is [d3 | w31] and w2 (x) k is [d2^T | w21 reshaped to F1 (x) F3^* -> F2^*],
    both evaluated at the residue point (default: all variables 0).  Higher
    components are not computed, so the ranks are lower bounds.
    """
    f0, f1, f2, f3 = c.ranks
    pt = point if point is not None else [0] * c.ring.nvars
    d3 = c.d3.evaluate(pt)
    w31 = sm.w31.evaluate(pt)
    w3 = [list(a) + list(b) for a, b in zip(d3, w31)] if f3 else w31
    d2t = c.d2.transpose().evaluate(pt)
    w21 = sm.w21.evaluate(pt)
    # column for e_i (x) h_r^* : entries w21[r][(i,k)] over k
    extra_cols = []
    for i in range(f1):
        for r in range(f3):
            extra_cols.append([w21[r][sm.mixed.index((i, k))] for k in range(f2)])
    w2 = [list(d2t[k]) + [col[k] for col in extra_cols] for k in range(f2)]
    r3 = rank(w3) if w3 and w3[0] else 0
    r2 = rank(w2) if w2 and w2[0] else 0
    return {
        "rank_w3": r3,
        "rank_w2": r2,
        "deficits": [f3 - r3, f1 - 3 - r2],
        "full_rank": [r3 == f2, r2 == f2],
        "note": "ranks use only the j <= 1 components; they under-approximate the full maps",
    }
