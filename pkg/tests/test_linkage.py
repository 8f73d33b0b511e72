import pytest
from hypothesis import given, strategies as st

from d5 import FMT as D5FMT, cosets as d5_cosets
from weylres.diagram import Format
from weylres.errors import FormatError, RegularSequenceSuspect
from weylres.linkage import (
    has_unit_entry,
    is_exact_at_point,
    link,
    link_format,
    rank_invariants,
    regular_sequence_evidence,
    structure_maps,
    verify_structure_maps,
)
from weylres.resolution import build_resolution, check_complex, koszul_complex, split_complex


@given(st.integers(3, 40), st.integers(0, 40), st.integers(0, 40))
def test_link_format_is_an_involution(f1, f2, f3):
    f = (1, f1, f2, f3)
    g = link_format(f)
    assert g[1] >= 3
    assert link_format(g) == f


@pytest.mark.parametrize(
    "f, g",
    [((1, 3, 3, 1), (1, 4, 3, 0)), ((1, 4, 5, 2), (1, 5, 5, 1)), ((1, 6, 7, 2), (1, 5, 7, 3))],
)
def test_link_format_examples(f, g):
    assert link_format(f) == g


def test_link_format_rejects_small_f1():
    with pytest.raises(FormatError):
        link_format((1, 2, 2, 1))


def test_koszul_structure_maps_are_exterior_multiplication():
    c = koszul_complex()
    sm = structure_maps(c)
    assert verify_structure_maps(c, sm)["ok"]
    for k in range(3):
        col = [p for p in sm.w31.column(k) if not p.is_zero()]
        assert len(col) == 1 and col[0].is_constant() and abs(col[0].constant_term()) == 1
    # e_i . (e_j ^ e_k) lands in F3 with a unit exactly when {i,j,k} = {1,2,3}
    nonzero = [m for m in range(sm.w21.ncols) if not sm.w21.entries[0][m].is_zero()]
    assert len(nonzero) == 3


def test_split_structure_maps_fix_z_and_f3():
    c = split_complex(1, 3, 1)
    sm = structure_maps(c)
    # F1 = F0 + Z (index 0 | 1..3), F2 = Z + F3 (0..2 | 3)
    for k, (i, j) in enumerate(sm.pairs):
        col = [p.constant_term() for p in sm.w31.column(k)]
        expected = [0, 0, 0, 0]
        if i == 0:
            expected[j - 1] = 1
        assert col == expected, (i, j)
    for m, (i, k) in enumerate(sm.mixed):
        val = sm.w21.entries[0][m].constant_term()
        assert val == (1 if (i, k) == (0, 3) else 0), (i, k)


def test_koszul_self_link_is_exact_unit_ideal():
    res = link(koszul_complex(), [0, 1, 2])
    c = res.complex
    assert c.ranks == (1, 4, 3, 0)
    assert all(res.ladder.values())
    assert has_unit_entry(c.d1)
    report = check_complex(c)
    assert report["d1d2_zero"] and report["d2d3_zero"] and report["ok"]
    assert is_exact_at_point(c, [2, 3, 5])
    assert c.d1.format() == "[ 1  x  y  z ]"


def test_double_link_restores_the_format():
    once = link(koszul_complex(), [0, 1, 2]).complex
    twice = link(once, [1, 2, 3]).complex
    assert twice.ranks == (1, 3, 3, 1)
    assert check_complex(twice)["ok"]


def test_unit_column_is_refused():
    once = link(koszul_complex(), [0, 1, 2]).complex
    assert not regular_sequence_evidence(once, [0, 1, 2])["ok"]
    with pytest.raises(RegularSequenceSuspect):
        link(once, [0, 1, 2])


def test_d5_pfaffian_link():
    c = build_resolution(D5FMT, d5_cosets()[2])
    res = link(c, [0, 1, 2])
    assert res.evidence["ok"] and all(res.ladder.values())
    out = res.complex
    assert out.ranks == (1, 4, 5, 2)
    assert check_complex(out)["ok"]
    # the selected pfaffians reappear as the last three generators
    assert out.d1.entries[0][c.ranks[3]:] == c.d1.entries[0][:3]


def test_link_needs_three_distinct_columns():
    with pytest.raises(FormatError):
        link(koszul_complex(), [0, 0, 1])


def test_rank_invariants():
    split = split_complex(1, 3, 1)
    inv = rank_invariants(split, structure_maps(split))
    assert inv["full_rank"] == [True, True]
    kos = koszul_complex()
    inv = rank_invariants(kos, structure_maps(kos))
    assert (inv["rank_w3"], inv["rank_w2"]) == (3, 3)
    assert inv["deficits"] == [-2, -3]
    c = build_resolution(D5FMT, d5_cosets()[2])
    inv = rank_invariants(c, structure_maps(c))
    assert inv["deficits"] == [1, -3]
    assert "under-approximate" in inv["note"]
