"""Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.

Run under pytest (the lines go straight to the terminal) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from d5 import FMT as D5FMT, as_terms, cosets as d5_cosets, equal_up_to_unit, skew_pfaffians  # noqa: E402
from e6_example import BOURBAKI, COARSE, TABLE, WORD, table_in  # noqa: E402
from oracles import (  # noqa: E402
    cartan_from_edges,
    perm_of_word,
    schur_dimension,
    subword_images,
    type_a_dimension,
    type_d_dimension,
    weyl_dimension_oracle,
)
from weylres import weight as wt  # noqa: E402
from weylres.diagram import Diagram, Format, diagram_from_format  # noqa: E402
from weylres.grading import (  # noqa: E402
    BettiTable,
    betti_multidegrees,
    exchange_grading,
    normalize_last,
    render_coarse,
)
from weylres.liealg import build_irrep, check_relations, z1_graded_dims  # noqa: E402
from weylres.linkage import (  # noqa: E402
    has_unit_entry,
    is_exact_at_point,
    link,
    link_format,
    structure_maps,
    verify_structure_maps,
)
from weylres.resolution import (  # noqa: E402
    build_resolution,
    check_complex,
    koszul_complex,
    split_complex,
    verify_minor_identities,
)
from weylres.sparse import rank  # noqa: E402
from weylres.weyl import WeylWord, all_elements, bruhat_leq, enumerate_double_cosets  # noqa: E402


def _cosets(f, max_length=40):
    fmt = Format.from_ranks(*f)
    return fmt, enumerate_double_cosets(diagram_from_format(fmt), max_length)


# 1. worked E6 example --------------------------------------------------------

def _route_a():
    """Format (1,5,6,2) for sigma, then the x/z exchange of the grading."""
    fmt = Format(1, 4, 2)
    d = diagram_from_format(fmt)
    sigma = WeylWord(d, tuple(BOURBAKI[t] for t in WORD.split()))
    t = exchange_grading(betti_multidegrees(fmt, sigma), sigma)
    got = [sorted(m) for m in t.modules]
    return got == table_in(d.vertices), render_coarse(t, "x1")


def _route_b():
    """Format (2,6,5,1) for sigma^-1, dualized and shifted so F0 sits at 0."""
    fmt = Format(2, 4, 1)
    d = diagram_from_format(fmt)
    labels = {"1": "x2", "2": "z1", "3": "x1", "4": "u", "5": "y1", "6": "y2"}
    sigma = WeylWord(d, tuple(labels[t] for t in WORD.split())).inverse()
    t = betti_multidegrees(fmt, sigma)
    dual = normalize_last(BettiTable(d, [[wt.neg(g) for g in m] for m in reversed(t.modules)]), 0)
    order = [labels[str(k)] for k in range(1, 7)]
    got = [sorted(tuple(-g[d.idx(v)] for v in order) for g in m) for m in dual.modules]
    return got == [sorted(m) for m in TABLE], render_coarse(dual, "z1")


def criterion_1():
    start = time.perf_counter()
    ok_a, coarse_a = _route_a()
    ok_b, coarse_b = _route_b()
    elapsed = time.perf_counter() - start
    # the thirteen generators of F1..F3; F0 is the unit generator at 0
    count = sum(len(m) for m in TABLE[1:])
    ok = ok_a and ok_b and coarse_a == COARSE and coarse_b == COARSE and count == 13 and elapsed < 5
    return ok, f"routes A/B table {ok_a}/{ok_b}, coarse {coarse_a!r}, {elapsed:.2f}s"


# 2. D5 pfaffians ----------------------------------------------------------------

def criterion_2():
    start = time.perf_counter()
    sigma = d5_cosets()[2]
    c = build_resolution(D5FMT, sigma)
    pfs = [q for q in skew_pfaffians(sigma, 4) if q]
    entries = list(c.d1.entries[0]) + [row[0] for row in c.d3.entries]
    matched = [any(equal_up_to_unit(as_terms(p), q) for q in pfs) for p in entries]
    zero = (c.d1 @ c.d2).is_zero() and (c.d2 @ c.d3).is_zero()
    elapsed = time.perf_counter() - start
    ok = c.ring.nvars == 10 and all(matched) and len(matched) == 10 and zero and elapsed < 120
    return ok, f"{sum(matched)}/{len(matched)} entries are pfaffians, d^2 = 0: {zero}, {elapsed:.2f}s"


# 3. identity coset is split exact ----------------------------------------------

def criterion_3():
    details = []
    ok = True
    for f in [(1, 4, 4, 1), (1, 5, 6, 2)]:
        fmt = Format.from_ranks(*f)
        c = build_resolution(fmt, WeylWord(diagram_from_format(fmt)))
        constant = all(m.is_constant() for m in c.d)
        zero = [0] * c.ring.nvars
        ranks = [rank(m.evaluate(zero)) for m in c.d]
        rs = [fmt.r1, fmt.r2, fmt.r3]
        # exact and split: rank d_i + rank d_{i+1} = f_i at every spot
        fs = list(fmt.f)
        exact = ranks[0] == fs[0] and ranks[0] + ranks[1] == fs[1] and ranks[1] + ranks[2] == fs[2] and ranks[2] == fs[3]
        good = constant and ranks == rs and exact
        ok = ok and good
        details.append(f"{f}: ranks {ranks}")
    return ok, "; ".join(details)


# 4. short cosets sweep ----------------------------------------------------------

SWEEP_FORMATS = [(1, 4, 4, 1), (1, 5, 5, 1), (2, 5, 4, 1), (1, 4, 5, 2), (1, 5, 6, 2)]


def criterion_4():
    checked = 0
    bad = []
    for f in SWEEP_FORMATS:
        fmt, reps = _cosets(f, 6)
        for sigma in reps:
            c = build_resolution(fmt, sigma)
            report = check_complex(c, seed=len(sigma), points=5)
            degrees = c.degrees == betti_multidegrees(fmt, sigma).modules
            checked += 1
            if not (report["ok"] and degrees):
                bad.append(f"{f} {sigma}")
    return not bad and checked > 0, f"{checked} complexes, failures: {bad or 'none'}"


# 5. witness minors ---------------------------------------------------------------

def criterion_5():
    details = []
    ok = True
    for f in [(1, 5, 5, 1), (1, 4, 4, 1)]:
        fmt, reps = _cosets(f)
        sigma = reps[1]
        rep = verify_minor_identities(fmt, sigma)
        powers = all(
            item["d2"]["power"] == fmt.r3 + 1 and item["d3"]["power"] == fmt.r2 - 1 for item in rep["identities"]
        )
        good = rep["ok"] and powers and len(rep["identities"]) > 0
        ok = ok and good
        details.append(f"{f} sigma={sigma}: {len(rep['identities'])} coordinates ok={good}")
    return ok, "; ".join(details)


# 6. representations --------------------------------------------------------------

A2, A3, D4, D5, E6 = Diagram(1, 0, 0), Diagram(1, 0, 1), Diagram(1, 1, 1), Diagram(1, 2, 1), Diagram(2, 2, 1)
WEIGHTS = [
    (A2, (1, 0)), (A2, (2, 1)),
    (A3, (0, 1, 0)), (A3, (1, 0, 1)), (A3, (2, 1, 0)),
    (D4, (0, 1, 0, 0)), (D4, (1, 0, 0, 1)),
    (D5, (0, 0, 0, 1, 0)), (D5, (1, 0, 0, 0, 0)), (D5, (0, 0, 1, 0, 0)),
    (E6, (0, 0, 0, 0, 1, 0)), (E6, (0, 0, 0, 0, 0, 1)), (E6, (1, 0, 0, 0, 0, 0)),
]


def _d_labels(d, lam):
    order = [f"y{i}" for i in range(d.ny, 0, -1)] + ["u", "x1", "z1"]
    return tuple(lam[d.idx(v)] for v in order)


def criterion_6():
    bad = []
    for d, lam in WEIGHTS:
        rep = build_irrep(d, lam)
        expected = weyl_dimension_oracle(cartan_from_edges(d.vertices, d.edges), lam)
        if d in (A2, A3):
            expected_closed = type_a_dimension(lam)
        elif d in (D4, D5):
            expected_closed = type_d_dimension(d.rank, _d_labels(d, lam))
        else:
            expected_closed = expected
        if not (rep.dim == expected == expected_closed and check_relations(rep) == []):
            bad.append((d.vertices, lam))
    e6_27 = build_irrep(E6, wt.fundamental(E6, "y2")).dim
    e6_78 = build_irrep(E6, wt.fundamental(E6, "z1")).dim
    ok = not bad and len(WEIGHTS) >= 10 and e6_27 == 27 and e6_78 == 78
    return ok, f"{len(WEIGHTS)} weights, failures {bad or 'none'}, E6: {e6_27}, {e6_78}"


# 7. graded pieces of the E6 algebra ----------------------------------------------

def criterion_7():
    dims = z1_graded_dims(Diagram(1, 2, 2))
    # removing z1 leaves sl2 x sl5; g_k = wedge^k C^2 (x) wedge^{2k} C^5
    g1 = schur_dimension((1,), 2) * schur_dimension((1, 1), 5)
    g2 = schur_dimension((1, 1), 2) * schur_dimension((1, 1, 1, 1), 5)
    g0 = schur_dimension((2,), 2) + schur_dimension((2, 1, 1, 1), 5) + 1
    expected = (g2, g1, g0, g1, g2)
    got = tuple(dims[k] for k in sorted(dims))
    ok = got == expected == (5, 20, 28, 20, 5) and sum(got) == 78 and g1 == 2 * comb(5, 2)
    return ok, f"dims {got}, oracle {expected}"


# 8. coset census and Bruhat order -----------------------------------------------

def criterion_8():
    counts = {}
    for n in (3, 5, 7):
        fmt = Format(1, n - 1, 1)
        counts[n] = len(enumerate_double_cosets(diagram_from_format(fmt), 200))
    census = all(counts[n] == -(-n // 2) for n in counts)
    letter = {"x1": 0, "u": 1, "z1": 2}
    elems = all_elements(Diagram(1, 0, 1))
    images = {w: subword_images(w.reduced().letters, letter) for w in elems}
    mismatches = sum(
        1 for u in elems for w in elems if bruhat_leq(u, w) != (perm_of_word(u.letters, letter) in images[w])
    )
    ok = census and len(elems) == 24 and mismatches == 0
    return ok, f"coset counts {counts}, Bruhat mismatches {mismatches}/{len(elems) ** 2}"


# 9. linkage ------------------------------------------------------------------------

def _structure_corpus():
    out = [("koszul", koszul_complex()), ("split 1,3,1", split_complex(1, 3, 1)), ("split 1,4,2", split_complex(1, 4, 2))]
    for f in [(1, 4, 4, 1), (1, 5, 5, 1), (1, 4, 5, 2), (1, 5, 6, 2)]:
        fmt, reps = _cosets(f)
        out += [(f"{f} {sigma}", build_resolution(fmt, sigma)) for sigma in reps]
    out.append(("koszul self-link", link(koszul_complex(), [0, 1, 2]).complex))
    return out


def _split_lifts_fix_z():
    c = split_complex(1, 3, 1)
    sm = structure_maps(c)
    for k, (i, j) in enumerate(sm.pairs):
        expected = [0, 0, 0, 0]
        if i == 0:
            expected[j - 1] = 1
        if [p.constant_term() for p in sm.w31.column(k)] != expected:
            return False
    return all(
        sm.w21.entries[0][m].constant_term() == (1 if (i, k) == (0, 3) else 0) for m, (i, k) in enumerate(sm.mixed)
    )


def criterion_9():
    self_link = link(koszul_complex(), [0, 1, 2]).complex
    rep = check_complex(self_link)
    koszul_ok = (
        self_link.ranks == (1, 4, 3, 0)
        and rep["ok"]
        and has_unit_entry(self_link.d1)
        and is_exact_at_point(self_link, [2, 3, 5])
    )
    rng = random.Random(2024)
    formats = [(1, rng.randint(3, 60), rng.randint(0, 60), rng.randint(0, 60)) for _ in range(100)]
    involutive = all(link_format(link_format(f)) == f for f in formats)
    d5 = link(build_resolution(D5FMT, d5_cosets()[2]), [0, 1, 2])
    d5_rep = check_complex(d5.complex)
    d5_ok = d5.complex.ranks == (1, 4, 5, 2) and d5_rep["ok"] and d5_rep["d1d2_zero"] and d5_rep["d2d3_zero"]
    corpus = _structure_corpus()
    replay_bad = [name for name, c in corpus if not verify_structure_maps(c, structure_maps(c))["ok"]]
    split_ok = _split_lifts_fix_z()
    ok = koszul_ok and involutive and d5_ok and not replay_bad and split_ok
    detail = (
        f"self-link {koszul_ok}, involution {involutive}, D5 link {d5_ok}, "
        f"replay {len(corpus) - len(replay_bad)}/{len(corpus)}, split lifts {split_ok}"
    )
    return ok, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _line(k, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_acceptance_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(_line(k, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
