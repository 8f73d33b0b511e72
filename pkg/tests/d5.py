"""Helpers for the D5 (format 1,5,5,1) checks shared by several test files."""

from itertools import combinations

from weylres import weight as wt
from weylres.diagram import Format, diagram_from_format
from weylres.liealg import build_irrep, positive_roots, root_operator, t_grading
from weylres.resolution import GenericY
from weylres.weyl import enumerate_double_cosets

from oracles import pfaffian_terms, skew_normal_form

FMT = Format(1, 4, 1)
DIAGRAM = diagram_from_format(FMT)


def cosets():
    return enumerate_double_cosets(DIAGRAM, 40)


def generic_skew_block():
    """Sum of t_beta E_beta over every root of z1-degree 1, restricted between the
    two z1-components of the vector representation.  Entries are (coefficient, beta)."""
    rep = build_irrep(DIAGRAM, wt.fundamental(DIAGRAM, DIAGRAM.y_end))
    g = t_grading(rep, "z1")
    low, top = g.components[g.bottom], g.components[g.top]
    zi = DIAGRAM.idx("z1")
    block = [[None] * len(low) for _ in top]
    for beta in positive_roots(DIAGRAM):
        if beta[zi] != 1:
            continue
        op = root_operator(rep, tuple(beta))
        for j, lj in enumerate(low):
            for i, c in op.cols[lj].items():
                assert block[top.index(i)][j] is None, "each entry should carry a single root"
                block[top.index(i)][j] = (c, tuple(beta))
    return block


def skew_pfaffians(sigma, size=4):
    """Principal size x size pfaffians of the generic skew matrix with only sigma's
    inversion roots kept, as {sorted y-index tuple: coefficient} dicts."""
    skew = skew_normal_form(generic_skew_block())
    n = len(skew)
    var_of = {tuple(b): k for k, b in enumerate(GenericY.for_sigma(sigma).roots)}
    out = []
    for idx in combinations(range(n), size):
        full = pfaffian_terms(skew, idx)
        kept = {}
        for mono, c in full.items():
            if all(b in var_of for b in mono):
                kept[tuple(sorted(var_of[b] for b in mono))] = c
        out.append(kept)
    return out


def as_terms(poly):
    """Poly -> {sorted variable-index tuple: coefficient} for comparison with pfaffian_terms."""
    out = {}
    for e, c in poly.terms.items():
        key = tuple(k for k, a in enumerate(e) for _ in range(a))
        out[key] = c
    return out


def equal_up_to_unit(p, q):
    if set(p) != set(q) or not p:
        return False
    k = next(iter(p))
    u = p[k] / q[k]
    return all(p[m] == u * q[m] for m in p)
