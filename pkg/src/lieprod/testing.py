"""Random nilpotent algebras for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactlin import nullspace_of_rows
from .genprod import Cochain2, central_extension
from .liecore import LieAlgebra


def scalar_cocycles(g: LieAlgebra) -> list[dict]:
    """Basis of Z^2(g, Q) as dicts {(i, j): value}, 1-based, i < j."""
    n = g.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: k for k, p in enumerate(pairs)}

    def coord(a, b):
        # (unknown index, sign) of c(X_a, X_b)
        if a < b:
            return index[(a, b)], 1
        return index[(b, a)], -1

    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                row: dict = {}
                for (a, b), d in (((i, j), k), ((j, k), i), ((k, i), j)):
                    for m, x in g.bracket_basis(a, b).items():
                        if m == d:
                            continue
                        u, s = coord(m, d)
                        row[u] = row.get(u, 0) + s * x
                row = {u: v for u, v in row.items() if v}
                if row:
                    rows.append(row)
    ker = nullspace_of_rows(len(pairs), rows)
    return [{(pairs[u][0] + 1, pairs[u][1] + 1): v for u, v in vec.items()} for vec in ker.basis]


def random_central_extension(g: LieAlgebra, r: int, rng: random.Random) -> LieAlgebra:
    """Extend g by r new central vectors using random rational 2-cocycles."""
    basis = scalar_cocycles(g)
    values: dict = {}
    for t in range(1, r + 1):
        coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in basis]
        for c, cocycle in zip(coeffs, basis):
            if not c:
                continue
            for pair, v in cocycle.items():
                slot = values.setdefault(pair, {})
                slot[t] = slot.get(t, 0) + c * v
    values = {p: {t: v for t, v in vec.items() if v} for p, vec in values.items()}
    return central_extension(g, Cochain2(g.dim, r, values))


def random_nilpotent(seed: int, rounds: int | None = None) -> LieAlgebra:
    """Iterated random central extension of a small abelian algebra.

    Deterministic for a given seed; the result is nonabelian with at least
    two generators.
    """
    rng = random.Random(seed)
    while True:
        m = rng.randint(2, 4)
        g = LieAlgebra(m)
        steps = rounds if rounds is not None else rng.randint(1, 2)
        for _ in range(steps):
            g = random_central_extension(g, rng.randint(1, 3), rng)
        if not g.is_abelian():
            return g
