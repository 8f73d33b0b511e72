"""Reference multidegrees of an 11-letter E6 coset, Bourbaki order (z2, x1, z1, u, y1, y2).

A generator listed as (c1..c6) is generated in degree -(c1 alpha_1 + ... + c6 alpha_6).
"""

BOURBAKI = {"1": "z2", "2": "x1", "3": "z1", "4": "u", "5": "y1", "6": "y2"}
WORD = "3 4 2 5 6 1 4 5 3 4 2"

TABLE = [
    [(0, 0, 0, 0, 0, 0)],
    [(0, 2, 1, 2, 1, 0), (0, 2, 1, 2, 1, 1), (1, 3, 2, 3, 2, 1), (1, 3, 2, 4, 2, 1), (1, 3, 3, 4, 2, 1)],
    [(1, 4, 3, 5, 3, 2), (1, 4, 3, 5, 3, 1), (1, 4, 3, 5, 2, 1), (1, 4, 3, 4, 2, 1), (1, 4, 2, 4, 2, 1),
     (0, 4, 2, 4, 2, 1)],
    [(1, 5, 3, 5, 2, 1), (1, 6, 4, 7, 4, 2)],
]

COARSE = "0 -> R(-5) + R(-6) -> R^6(-4) -> R^2(-2) + R^3(-3) -> R"


def table_in(vertices):
    """Reference table as generated-in degrees in the given vertex order."""
    pos = {v: int(k) - 1 for k, v in BOURBAKI.items()}
    return [sorted(tuple(-c[pos[v]] for v in vertices) for c in m) for m in TABLE]
