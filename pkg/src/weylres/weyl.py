"""Weyl group elements as words in simple reflections.

A word ``(a, b, c)`` stands for s_a s_b s_c; the rightmost letter acts
first.  Group elements are compared through their action on rho, which is
faithful, so every question here reduces to weight arithmetic and works for
affine and indefinite diagrams as well.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import weight as wt
from .diagram import Diagram
from .errors import NotReducedError


@dataclass(frozen=True)
class WeylWord:
    diagram: Diagram
    letters: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for v in self.letters:
            self.diagram.idx(v)

    @classmethod
    def parse(cls, diagram: Diagram, text: str) -> "WeylWord":
        return cls(diagram, tuple(text.split()))

    def __str__(self) -> str:
        return " ".join(self.letters) if self.letters else "e"

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.diagram, self.letters + other.letters)

    def act(self, lam: Sequence) -> tuple:
        return wt.apply_word(self.diagram, self.letters, lam)

    def act_root(self, beta: Sequence) -> tuple:
        return wt.apply_word_to_root(self.diagram, self.letters, beta)

    def canonical_form(self) -> tuple:
        return self.act(wt.rho(self.diagram))

    def same_element(self, other: "WeylWord") -> bool:
        return self.canonical_form() == other.canonical_form()

    def length(self) -> int:
        return len(_descent_word(self.diagram, self.canonical_form()))

    def is_reduced(self) -> bool:
        return self.length() == len(self.letters)

    def reduced(self) -> "WeylWord":
        """A reduced word for the same element (greedy left descents)."""
        return WeylWord(self.diagram, _descent_word(self.diagram, self.canonical_form()))

    def inverse(self) -> "WeylWord":
        return WeylWord(self.diagram, tuple(reversed(self.letters)))

    def inversion_set(self) -> list[tuple]:
        if not self.is_reduced():
            raise NotReducedError(f"{self} is not reduced")
        return inversion_set(self)


def canonical_form(w: WeylWord) -> tuple:
    return w.canonical_form()


def length(w: WeylWord) -> int:
    return w.length()


def is_reduced(w: WeylWord) -> bool:
    return w.is_reduced()


def inverse(w: WeylWord) -> WeylWord:
    return w.inverse()


def _descent_word(diagram: Diagram, image: tuple) -> tuple[str, ...]:
    """Reduced word read off from w(rho) by stripping left descents."""
    letters = []
    cur = list(image)
    order = diagram.search_order
    while True:
        for v in order:
            if cur[diagram.idx(v)] < 0:
                letters.append(v)
                cur = list(wt.reflect(diagram, cur, v))
                break
        else:
            return tuple(letters)


def element_from_rho_image(diagram: Diagram, image: tuple) -> WeylWord:
    return WeylWord(diagram, _descent_word(diagram, image))


def bruhat_leq(u: WeylWord, w: WeylWord) -> bool:
    """Bruhat order, scanning one fixed reduced word of w from the left.

    If s is a left descent of w then u <= w iff (su <= sw when s is also a
    left descent of u, else u <= sw).
    """
    d = w.diagram
    cu = u.canonical_form()
    letters = w.reduced().letters
    lu = len(_descent_word(d, cu))
    for k, s in enumerate(letters):
        if lu > len(letters) - k:
            return False
        i = d.idx(s)
        if cu[i] < 0:
            cu = wt.reflect(d, cu, s)
            lu -= 1
    return lu == 0


def positive_after(diagram: Diagram, letters: Sequence[str], beta: Sequence) -> bool:
    image = wt.apply_word_to_root(diagram, letters, beta)
    return wt.is_positive_root_vector(image)


def is_min_double_coset_rep(w: WeylWord, left: str = "z1", right: str = "x1") -> bool:
    """Minimal length representative of W_P(left) \\ W / W_P(right).

    W_P(t) is the stabilizer of omega_t, generated by s_i for i != t.
    """
    d = w.diagram
    if not w.is_reduced():
        return False
    image = w.act(wt.fundamental(d, right))
    li = d.idx(left)
    if any(b < 0 for i, b in enumerate(image) if i != li):
        return False
    inv = w.inverse().letters
    for v in d.vertices:
        # no right descent in W_P(right), no left descent in W_P(left)
        if v != right and not positive_after(d, w.letters, wt.simple_root(d, v)):
            return False
        if v != left and not positive_after(d, inv, wt.simple_root(d, v)):
            return False
    return True


def orbit_bfs(diagram: Diagram, start: str, max_length: int) -> Iterator[tuple[tuple, tuple[str, ...]]]:
    """Breadth-first walk over W.omega_start yielding (weight, reduced word).

    Each weight is reached first by a minimal coset representative; letters
    are tried in the diagram's fixed search order.
    """
    lam = wt.fundamental(diagram, start)
    seen = {lam}
    frontier = [(lam, ())]
    depth = 0
    while frontier:
        for item in frontier:
            yield item
        if depth == max_length:
            return
        nxt = []
        for mu, word in frontier:
            for v in diagram.search_order:
                if mu[diagram.idx(v)] > 0:
                    nu = wt.reflect(diagram, mu, v)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append((nu, (v,) + word))
        frontier = nxt
        depth += 1


def enumerate_double_cosets(diagram: Diagram, max_length: int, left: str = "z1", right: str = "x1") -> list[WeylWord]:
    li = diagram.idx(left)
    out = []
    for mu, word in orbit_bfs(diagram, right, max_length):
        if all(b >= 0 for i, b in enumerate(mu) if i != li):
            out.append(WeylWord(diagram, word))
    return out


def inversion_set(w: WeylWord) -> list[tuple]:
    """beta_j = s_{i1} ... s_{i(j-1)} alpha_{ij} along the stored word."""
    d = w.diagram
    out = []
    for j, v in enumerate(w.letters):
        out.append(wt.apply_word_to_root(d, w.letters[:j], wt.simple_root(d, v)))
    return out


def all_elements(diagram: Diagram, limit: int = 100000) -> list[WeylWord]:
    """Every element of a finite Weyl group, by BFS on the orbit of rho."""
    start = wt.rho(diagram)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        mu = queue.popleft()
        for v in diagram.search_order:
            if mu[diagram.idx(v)] > 0:
                nu = wt.reflect(diagram, mu, v)
                if nu not in seen:
                    seen[nu] = (v,) + seen[mu]
                    if len(seen) > limit:
                        raise ValueError("group too large to enumerate")
                    queue.append(nu)
    return [WeylWord(diagram, word) for word in seen.values()]


def minimal_containing_diagram(w: WeylWord) -> Diagram:
    """Smallest T-shaped diagram whose vertices cover the letters of w."""
    from .diagram import parse_vertex

    lengths = {"x": 0, "y": 0, "z": 0}
    for v in w.letters:
        arm, i = parse_vertex(v)
        if arm in lengths:
            lengths[arm] = max(lengths[arm], i)
    return Diagram(lengths["x"], lengths["y"], lengths["z"])
