from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import perm_of_word, subword_images
from weylres.diagram import Diagram, Format, diagram_from_format
from weylres.weyl import (
    WeylWord,
    all_elements,
    bruhat_leq,
    enumerate_double_cosets,
    is_min_double_coset_rep,
    minimal_containing_diagram,
)

A3 = Diagram(1, 0, 1)
E6 = Diagram(1, 2, 2)
words = st.lists(st.sampled_from(E6.vertices), max_size=10)


@given(words)
def test_inverse_cancels(letters):
    w = WeylWord(E6, tuple(letters))
    assert (w * w.inverse()).same_element(WeylWord(E6))


@given(words)
def test_reduced_word_represents_same_element(letters):
    w = WeylWord(E6, tuple(letters))
    r = w.reduced()
    assert r.is_reduced()
    assert r.same_element(w)
    assert len(r) == w.length() <= len(w)


@given(words)
def test_inversion_set_size_equals_length_for_reduced_words(letters):
    w = WeylWord(E6, tuple(letters)).reduced()
    inv = w.inversion_set()
    assert len(set(inv)) == len(w)
    assert all(all(c >= 0 for c in b) for b in inv)


def test_group_orders():
    assert len(all_elements(A3)) == 24
    assert len(all_elements(Diagram(1, 1, 1))) == 192
    assert len(all_elements(Diagram(1, 2, 1))) == 1920


def test_a3_bruhat_order_against_subwords():
    letter = {"x1": 0, "u": 1, "z1": 2}
    elems = all_elements(A3)
    assert len(elems) == 24
    images = {w: subword_images(w.reduced().letters, letter) for w in elems}
    for u, w in product(elems, elems):
        expected = perm_of_word(u.letters, letter) in images[w]
        assert bruhat_leq(u, w) == expected, (str(u), str(w))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_dn_coset_counts(n):
    fmt = Format(1, n - 1, 1)
    reps = enumerate_double_cosets(diagram_from_format(fmt), 200)
    assert len(reps) == -(-n // 2)
    assert all(is_min_double_coset_rep(w) for w in reps)


def test_e6_cosets_are_minimal_and_distinct():
    reps = enumerate_double_cosets(E6, 40)
    assert [len(w) for w in reps] == [0, 3, 7, 10, 11, 17]
    assert all(w.is_reduced() and is_min_double_coset_rep(w) for w in reps)


def test_non_minimal_word_detected():
    assert not is_min_double_coset_rep(WeylWord(E6, ("x1",)))
    assert not is_min_double_coset_rep(WeylWord(E6, ("z1",)))
    assert is_min_double_coset_rep(WeylWord(E6, ("z1", "u", "x1")))


def test_minimal_containing_diagram():
    w = WeylWord(E6, ("z2", "z1", "u", "y1", "x1"))
    assert minimal_containing_diagram(w) == Diagram(1, 1, 2)
