"""Finite-dimensional irreducible representations with exact Chevalley matrices.

The module L(lam) is grown downward from a highest weight vector.  At each
weight, the candidates f_i b are compared through their images under all
e_j; a vector of weight below lam vanishes in L(lam) exactly when every e_j
kills it, so independence of those images is independence in L(lam).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import weight as wt
from .diagram import Diagram
from .errors import NotDominantError, NotFiniteTypeError, NotPositiveRootError
from .sparse import SparseMatrix, exp_apply, vec_add, vec_scale


def positive_roots(diagram: Diagram) -> list[tuple]:
    """All positive roots (alpha-coordinates) of a finite-type diagram, by height."""
    if not diagram.is_finite:
        raise NotFiniteTypeError(f"{diagram} is not of finite type")
    simple = [wt.simple_root(diagram, v) for v in diagram.vertices]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for v in diagram.vertices:
                gamma = wt.reflect_root(diagram, beta, v)
                if wt.is_positive_root_vector(gamma) and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return sorted(seen, key=lambda b: (sum(b), tuple(-x for x in b)))


def weyl_dimension(diagram: Diagram, lam: tuple) -> int:
    """Weyl dimension formula (simply laced, so coroots pair like roots)."""
    num = Fraction(1)
    for beta in positive_roots(diagram):
        num *= Fraction(sum(b * (l + 1) for b, l in zip(beta, lam)), sum(beta))
    assert num.denominator == 1
    return int(num)


@dataclass
class Representation:
    diagram: Diagram
    highest_weight: tuple
    weights: list[tuple]
    e: dict[str, SparseMatrix]
    f: dict[str, SparseMatrix]
    tags: list[tuple]

    @property
    def dim(self) -> int:
        return len(self.weights)

    def h(self, v: str) -> SparseMatrix:
        i = self.diagram.idx(v)
        return SparseMatrix(self.dim, self.dim, [{k: Fraction(w[i])} if w[i] else {} for k, w in enumerate(self.weights)])

    def indices_of_weight(self, mu: tuple) -> list[int]:
        return self._weight_index().get(tuple(mu), [])

    def _weight_index(self) -> dict:
        cache = getattr(self, "_widx", None)
        if cache is None:
            cache = {}
            for k, w in enumerate(self.weights):
                cache.setdefault(w, []).append(k)
            self._widx = cache
        return cache

    def to_json(self) -> dict:
        def mat(m):
            return [[i, j, str(x)] for i, j, x in m.triplets()]

        return {
            "diagram": self.diagram.to_json(),
            "highest_weight": list(self.highest_weight),
            "weights": [list(w) for w in self.weights],
            "e": {v: mat(m) for v, m in self.e.items()},
            "f": {v: mat(m) for v, m in self.f.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        d = Diagram.from_json(data["diagram"])
        n = len(data["weights"])

        def mat(trips):
            m = SparseMatrix(n, n)
            for i, j, x in trips:
                m.cols[j][i] = Fraction(x)
            return m

        return cls(
            d,
            tuple(data["highest_weight"]),
            [tuple(w) for w in data["weights"]],
            {v: mat(t) for v, t in data["e"].items()},
            {v: mat(t) for v, t in data["f"].items()},
            [() for _ in range(n)],
        )


def build_irrep(diagram: Diagram, lam: tuple) -> Representation:
    return _build_irrep_cached(diagram, tuple(lam))


@lru_cache(maxsize=64)
def _build_irrep_cached(diagram: Diagram, lam: tuple) -> Representation:
    if not diagram.is_finite:
        raise NotFiniteTypeError(f"{diagram} is not of finite type")
    if len(lam) != diagram.rank or any(c < 0 for c in lam):
        raise NotDominantError(f"{lam} is not dominant for {diagram}")
    verts = diagram.vertices
    order = diagram.search_order
    weights = [tuple(lam)]
    tags: list[tuple] = [()]
    e_cols: dict[str, list[dict]] = {v: [{}] for v in verts}
    f_cols: dict[str, list[dict]] = {v: [None] for v in verts}
    level = [0]
    while level:
        groups: dict[tuple, list[tuple[int, str]]] = {}
        for b in level:
            for v in order:
                mu = wt.sub(weights[b], wt.simple_root_in_omega(diagram, v))
                groups.setdefault(mu, []).append((b, v))
        new_level = []
        for mu, cands in groups.items():
            pivots: list[tuple] = []  # (pivot key, reduced image, expression in new basis)
            for b, v in cands:
                image = _raising_images(diagram, weights, e_cols, f_cols, b, v)
                x = dict(image)
                expr: dict = {}
                for key, row, row_expr in pivots:
                    c = x.get(key)
                    if c:
                        k = c / row[key]
                        x = vec_add(x, row, -k)
                        expr = vec_add(expr, row_expr, k)
                if x:
                    n = len(weights)
                    weights.append(mu)
                    tags.append((v, b))
                    for u in verts:
                        e_cols[u].append({j: c for (uu, j), c in image.items() if uu == u})
                        f_cols[u].append(None)
                    new_level.append(n)
                    pivots.append((min(x), x, vec_add({n: Fraction(1)}, expr, -1)))
                    f_cols[v][b] = {n: Fraction(1)}
                else:
                    f_cols[v][b] = expr
        level = new_level
    n = len(weights)
    for v in verts:
        f_cols[v] = [c if c is not None else {} for c in f_cols[v]]
    e = {v: SparseMatrix(n, n, e_cols[v]) for v in verts}
    f = {v: SparseMatrix(n, n, f_cols[v]) for v in verts}
    return Representation(diagram, tuple(lam), weights, e, f, tags)


def _raising_images(diagram, weights, e_cols, f_cols, b, v) -> dict:
    """Images of f_v b under every e_u, keyed by (u, basis index)."""
    out: dict = {}
    for u in diagram.vertices:
        img: dict = {}
        for j, c in e_cols[u][b].items():
            fj = f_cols[v][j]
            img = vec_add(img, fj, c)
        if u == v:
            h = weights[b][diagram.idx(v)]
            if h:
                img = vec_add(img, {b: Fraction(h)})
        for j, c in img.items():
            out[(u, j)] = c
    return out


@dataclass
class GradedComponentMap:
    vertex: str
    components: dict[int, list[int]]

    @property
    def top(self) -> int:
        return max(self.components)

    @property
    def bottom(self) -> int:
        return min(self.components)

    def degrees(self) -> list[int]:
        return sorted(self.components)


def t_grading(rep: Representation, t: str) -> GradedComponentMap:
    """Partition of the basis by the h_t-eigenvalue (alpha_t-coefficient of the weight)."""
    d = rep.diagram
    i = d.idx(t)
    comps: dict[int, list[int]] = {}
    for k, w in enumerate(rep.weights):
        c = wt.omega_to_alpha(d, w, integral=False)[i]
        lc = wt.omega_to_alpha(d, rep.highest_weight, integral=False)[i]
        deg = c - lc
        assert deg.denominator == 1
        comps.setdefault(int(deg), []).append(k)
    return GradedComponentMap(t, dict(sorted(comps.items())))


def _lift_apply(rep: Representation, t: str, v: dict, inverse: bool = False) -> dict:
    e, f = rep.e[t], rep.f[t]
    if not inverse:
        return exp_apply(f, exp_apply(e, exp_apply(f, v), -1))
    return exp_apply(f, exp_apply(e, exp_apply(f, v, -1)), -1)


def reflection_lift(rep: Representation, t: str, inverse: bool = False) -> SparseMatrix:
    """exp(f_t) exp(-e_t) exp(f_t), or its inverse."""
    return _lift_cache(rep, t, inverse)


def _lift_cache(rep, t, inverse):
    cache = rep.__dict__.setdefault("_lifts", {})
    key = (t, inverse)
    if key not in cache:
        cols = [_lift_apply(rep, t, {k: Fraction(1)}, inverse) for k in range(rep.dim)]
        cache[key] = SparseMatrix(rep.dim, rep.dim, cols)
    return cache[key]


def word_lift(rep: Representation, letters, inverse: bool = False) -> SparseMatrix:
    """Product of reflection lifts over the word; the inverse reverses it."""
    m = SparseMatrix.identity(rep.dim)
    if not inverse:
        for t in letters:
            m = m @ reflection_lift(rep, t)
    else:
        for t in letters:
            m = reflection_lift(rep, t, True) @ m
    return m


def apply_word_lift(rep: Representation, letters, v: dict) -> dict:
    out = v
    for t in reversed(letters):
        out = reflection_lift(rep, t).apply(out)
    return out


def root_word(diagram: Diagram, beta: tuple) -> tuple[tuple[str, ...], str]:
    """Fixed decomposition beta = s_{l1} ... s_{lm} alpha_k by height reduction."""
    if not wt.is_positive_root_vector(beta):
        raise NotPositiveRootError(f"{beta} is not positive")
    letters = []
    cur = tuple(beta)
    while sum(cur) > 1:
        for v in diagram.search_order:
            if wt.coroot_pairing(diagram, cur, v) > 0:
                nxt = wt.reflect_root(diagram, cur, v)
                break
        else:
            raise NotPositiveRootError(f"{beta} is not a real root")
        if not wt.is_positive_root_vector(nxt):
            raise NotPositiveRootError(f"{beta} is not a real root")
        letters.append(v)
        cur = nxt
    if sum(cur) != 1 or any(x < 0 for x in cur):
        raise NotPositiveRootError(f"{beta} is not a root")
    k = diagram.vertices[cur.index(1)]
    return tuple(letters), k


def root_operator(rep: Representation, beta: tuple, lowering: bool = False) -> SparseMatrix:
    """E_beta (or F_beta) as the lift-conjugate of a Chevalley generator."""
    cache = rep.__dict__.setdefault("_rootops", {})
    key = (tuple(beta), lowering)
    if key in cache:
        return cache[key]
    letters, k = root_word(rep.diagram, tuple(beta))
    gen = rep.f[k] if lowering else rep.e[k]
    m = word_lift(rep, letters) @ gen @ word_lift(rep, letters, inverse=True)
    cache[key] = m
    return m


def z1_graded_dims(diagram: Diagram, vertex: str = "z1") -> dict[int, int]:
    """Dimensions of the graded pieces of g under the alpha_vertex coefficient."""
    i = diagram.idx(vertex)
    dims: dict[int, int] = {0: diagram.rank}
    for beta in positive_roots(diagram):
        for deg in (beta[i], -beta[i]):
            dims[deg] = dims.get(deg, 0) + 1
    return dict(sorted(dims.items()))


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return a @ b - b @ a


def check_relations(rep: Representation) -> list[str]:
    """Chevalley-Serre relations as exact matrix identities; returns failures."""
    d = rep.diagram
    bad = []
    zero = SparseMatrix(rep.dim, rep.dim)
    for u in d.vertices:
        for v in d.vertices:
            c = commutator(rep.e[u], rep.f[v])
            want = rep.h(u) if u == v else zero
            if c != want:
                bad.append(f"[e_{u}, f_{v}]")
            if u == v:
                continue
            a = d.cartan[d.idx(u)][d.idx(v)]
            for name, x, y in (("e", rep.e[u], rep.e[v]), ("f", rep.f[u], rep.f[v])):
                m = y
                for _ in range(1 - a):
                    m = commutator(x, m)
                if not m.is_zero():
                    bad.append(f"serre_{name}({u},{v})")
    for v in d.vertices:
        i = d.idx(v)
        alpha = wt.simple_root_in_omega(d, v)
        for j, col in enumerate(rep.e[v].cols):
            for k in col:
                if rep.weights[k] != wt.add(rep.weights[j], alpha):
                    bad.append(f"e_{v} weight")
        for j, col in enumerate(rep.f[v].cols):
            for k in col:
                if rep.weights[k] != wt.sub(rep.weights[j], alpha):
                    bad.append(f"f_{v} weight")
    return bad


def weight_multiplicities(rep: Representation) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    for w in rep.weights:
        out[w] = out.get(w, 0) + 1
    return out
