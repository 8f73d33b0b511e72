"""Weight lattice arithmetic.

Weights are integer tuples of fundamental-weight (omega) coordinates and
root vectors are tuples of simple-root (alpha) coordinates, both aligned
with ``diagram.vertices``.  :func:`to_dict` and :func:`from_dict` convert to
the ``{vertex: int}`` form used in JSON.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .diagram import Diagram
from .errors import AffineTypeError

Weight = tuple
RootVector = tuple


def zero(diagram: Diagram) -> tuple:
    return (0,) * diagram.rank


def fundamental(diagram: Diagram, v: str) -> tuple:
    out = [0] * diagram.rank
    out[diagram.idx(v)] = 1
    return tuple(out)


def rho(diagram: Diagram) -> tuple:
    return (1,) * diagram.rank


def simple_root_in_omega(diagram: Diagram, v: str) -> tuple:
    return diagram.cartan[diagram.idx(v)]


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def scale(k, a: Sequence) -> tuple:
    return tuple(k * x for x in a)


def total(vectors: Iterable[Sequence], n: int) -> tuple:
    acc = [0] * n
    for v in vectors:
        for i, x in enumerate(v):
            acc[i] += x
    return tuple(acc)


def reflect(diagram: Diagram, lam: Sequence, v: str) -> tuple:
    """s_v(lam) = lam - <alpha_v^vee, lam> alpha_v, in omega-coordinates."""
    i = diagram.idx(v)
    c = lam[i]
    if c == 0:
        return tuple(lam)
    row = diagram.cartan[i]
    return tuple(x - c * a for x, a in zip(lam, row))


def apply_word(diagram: Diagram, letters: Sequence[str], lam: Sequence) -> tuple:
    """Act by s_{l1} ... s_{lk} on a weight; the rightmost letter acts first."""
    out = tuple(lam)
    for v in reversed(letters):
        out = reflect(diagram, out, v)
    return out


def coroot_pairing(diagram: Diagram, beta: Sequence, v: str) -> int:
    """<beta, alpha_v^vee> for beta in alpha-coordinates."""
    j = diagram.idx(v)
    return sum(b * diagram.cartan[i][j] for i, b in enumerate(beta) if b)


def reflect_root(diagram: Diagram, beta: Sequence, v: str) -> tuple:
    """s_v(beta) for beta in alpha-coordinates; valid in every type."""
    c = coroot_pairing(diagram, beta, v)
    if c == 0:
        return tuple(beta)
    out = list(beta)
    out[diagram.idx(v)] -= c
    return tuple(out)


def apply_word_to_root(diagram: Diagram, letters: Sequence[str], beta: Sequence) -> tuple:
    out = tuple(beta)
    for v in reversed(letters):
        out = reflect_root(diagram, out, v)
    return out


def simple_root(diagram: Diagram, v: str) -> tuple:
    out = [0] * diagram.rank
    out[diagram.idx(v)] = 1
    return tuple(out)


def alpha_to_omega(diagram: Diagram, c: Sequence) -> tuple:
    n = diagram.rank
    a = diagram.cartan
    return tuple(sum(c[i] * a[i][j] for i in range(n) if c[i]) for j in range(n))


def omega_to_alpha(diagram: Diagram, lam: Sequence, integral: bool = True) -> tuple:
    """Coordinates c with sum c_i alpha_i = lam.

    With ``integral`` set, raises ValueError unless every c_i is an integer.
    """
    inv = diagram.cartan_inverse
    if inv is None:
        raise AffineTypeError(f"{diagram} has a singular Cartan matrix")
    n = diagram.rank
    c = tuple(sum((inv[i][j] * lam[j] for j in range(n) if lam[j]), Fraction(0)) for i in range(n))
    if not integral:
        return c
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"{lam} is not in the root lattice")
    return tuple(int(x) for x in c)


def pairing(diagram: Diagram, a: Sequence, b: Sequence) -> Fraction:
    """Invariant form with <alpha_i, omega_j> = delta_ij."""
    ca = omega_to_alpha(diagram, a, integral=False)
    return sum((x * y for x, y in zip(ca, b)), Fraction(0))


def dual_weight_coefficient(diagram: Diagram, r: str, sigma: Sequence[str], t: str) -> Fraction:
    """<omega_r - sigma^{-1} omega_r, omega_t>: the alpha_t-coefficient of omega_r - sigma^{-1} omega_r."""
    w_r = fundamental(diagram, r)
    moved = apply_word(diagram, list(reversed(sigma)), w_r)
    return pairing(diagram, sub(w_r, moved), fundamental(diagram, t))


def to_dict(diagram: Diagram, vec: Sequence) -> dict:
    return {v: (int(x) if getattr(x, "denominator", 1) == 1 else str(x)) for v, x in zip(diagram.vertices, vec) if x}


def from_dict(diagram: Diagram, data: dict) -> tuple:
    out = [0] * diagram.rank
    for k, x in data.items():
        out[diagram.idx(k)] = int(x)
    return tuple(out)


def height(beta: Sequence) -> int:
    return sum(beta)


def is_positive_root_vector(beta: Sequence) -> bool:
    return any(beta) and all(x >= 0 for x in beta)


def is_negative_root_vector(beta: Sequence) -> bool:
    return any(beta) and all(x <= 0 for x in beta)
