"""
Products by generators of nilpotent Lie algebras.

The product g1 x g2 is the central extension of g1 + g2 by the cochain that
sends each (generator of g1, generator of g2) pair to its own new central
vector. Basis layout of the product: the g1 block, then the g2 block, then
the n1*n2 new vectors Z_1..Z_{n1 n2}, where Z_{(i-1) n2 + j} = [X_i, X'_j].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import Eliminator, Matrix, add_scaled, format_rational, parse_rational
from .liecore import (
    AlgebraInvariants,
    LieAlgebra,
    adapted_basis,
    invariants,
    validate,
)

__all__ = [
    "Cochain2",
    "ProductDecomposition",
    "direct_sum",
    "build_generator_cocycle",
    "two_cocycle_check",
    "central_extension",
    "product_by_generators",
    "verify_canonical_isomorphism",
    "commutativity_map",
    "associativity_map",
    "power",
    "PowerStats",
    "AlgebraStats",
    "power_stats",
    "epsilon_min_n",
    "corollary_bound",
    "product_necessary_conditions",
]


@dataclass(frozen=True)
class Cochain2:
    """Alternating bilinear map Q^source -> Q^target, by its values on basis pairs.

    ``values[(i, j)]`` (1-based, i < j) is a sparse 1-based target vector.
    """

    source_dim: int
    target_dim: int
    values: dict = field(default_factory=dict)

    def evaluate(self, u: dict, v: dict) -> dict:
        """phi(u, v) for 0-based sparse vectors; result is 0-based sparse."""
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                if a == b:
                    continue
                if a < b:
                    vec = self.values.get((a + 1, b + 1))
                    s = x * y
                else:
                    vec = self.values.get((b + 1, a + 1))
                    s = -x * y
                if vec:
                    for t, c in vec.items():
                        w = out.get(t - 1, 0) + s * c
                        if w:
                            out[t - 1] = w
                        else:
                            out.pop(t - 1, None)
        return out

    def nonzero_count(self) -> int:
        return sum(1 for v in self.values.values() if v)


def _block(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


@dataclass(frozen=True)
class ProductDecomposition:
    """Index bookkeeping for g1 x g2 (all indices 1-based, ranges inclusive)."""

    g1_range: tuple
    g2_range: tuple
    g3_range: tuple
    g1_generators: tuple
    g2_generators: tuple
    g1_basis_change: tuple | None = None  # new basis vectors of g1, old coordinates
    g2_basis_change: tuple | None = None
    nonsplit: str = "asserted, not decided"

    @property
    def n1(self) -> int:
        return len(self.g1_generators)

    @property
    def n2(self) -> int:
        return len(self.g2_generators)

    @property
    def dim(self) -> int:
        return self.g3_range[1]

    def block(self, i: int) -> range:
        """1-based indices of block i (1, 2 or 3)."""
        return _block((self.g1_range, self.g2_range, self.g3_range)[i - 1])

    def z_index(self, i: int, j: int) -> int:
        """Product index of Z for the i-th generator of g1 and j-th of g2 (1-based)."""
        return self.g3_range[0] + (i - 1) * self.n2 + (j - 1)

    def to_json(self) -> dict:
        out = {
            "g1_range": list(self.g1_range),
            "g2_range": list(self.g2_range),
            "g3_range": list(self.g3_range),
            "g1_generators": list(self.g1_generators),
            "g2_generators": list(self.g2_generators),
            "n1": self.n1,
            "n2": self.n2,
        }
        for key in ("g1_basis_change", "g2_basis_change"):
            val = getattr(self, key)
            if val is not None:
                out[key] = [{str(k + 1): format_rational(c) for k, c in sorted(v.items())} for v in val]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ProductDecomposition":
        known = {"g1_range", "g2_range", "g3_range", "g1_generators", "g2_generators",
                 "n1", "n2", "g1_basis_change", "g2_basis_change"}
        if not isinstance(data, dict):
            raise ValueError("decomposition must be an object")
        extra = set(data) - known
        if extra:
            raise ValueError(f"decomposition: unknown fields {sorted(extra)}")
        try:
            dec = cls(
                g1_range=tuple(data["g1_range"]),
                g2_range=tuple(data["g2_range"]),
                g3_range=tuple(data["g3_range"]),
                g1_generators=tuple(data["g1_generators"]),
                g2_generators=tuple(data["g2_generators"]),
                g1_basis_change=_parse_change(data.get("g1_basis_change")),
                g2_basis_change=_parse_change(data.get("g2_basis_change")),
            )
        except KeyError as exc:
            raise ValueError(f"decomposition: missing field {exc}") from None
        for key in ("n1", "n2"):
            if key in data and data[key] != getattr(dec, key):
                raise ValueError(f"decomposition: {key}={data[key]} disagrees with generator list")
        return dec


def _parse_change(val):
    if val is None:
        return None
    return tuple({int(k) - 1: parse_rational(c) for k, c in v.items()} for v in val)


def direct_sum(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    m1 = g1.dim
    brackets = dict(g1.brackets)
    for (i, j), vec in g2.brackets.items():
        brackets[(i + m1, j + m1)] = {k + m1: c for k, c in vec.items()}
    return LieAlgebra(m1 + g2.dim, brackets)


def build_generator_cocycle(
    g1: LieAlgebra,
    g2: LieAlgebra,
    gens1: Sequence[int] | None = None,
    gens2: Sequence[int] | None = None,
) -> Cochain2:
    """The generator-pairing cochain on g1 + g2.

    (i-th generator of g1, j-th generator of g2) maps to e_{(i-1) n2 + j};
    every other basis pair maps to zero. Generators default to the greedy
    choice of :func:`liecore.invariants`.
    """
    if gens1 is None:
        gens1 = invariants(g1).generator_indices
    if gens2 is None:
        gens2 = invariants(g2).generator_indices
    n1, n2 = len(gens1), len(gens2)
    if n1 < 2 or n2 < 2:
        raise ValueError(f"each factor needs at least 2 generators, got {n1} and {n2}")
    m1 = g1.dim
    values = {}
    for i, a in enumerate(gens1, start=1):
        for j, b in enumerate(gens2, start=1):
            values[(a, m1 + b)] = {(i - 1) * n2 + j: Fraction(1)}
    return Cochain2(g1.dim + g2.dim, n1 * n2, values)


def two_cocycle_check(g: LieAlgebra, c: Cochain2) -> list[tuple[tuple[int, int, int], dict]]:
    """Basis triples where c([x,y],z) + c([y,z],x) + c([z,x],y) != 0.

    Returns ``[((i, j, k), value), ...]`` with 1-based indices; empty when c
    is a 2-cocycle for the trivial module.
    """
    if c.source_dim != g.dim:
        raise ValueError(f"cochain on dimension {c.source_dim} but algebra has dimension {g.dim}")
    n = g.dim
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict = {}
                for (a, b), d in (((i, j), k), ((j, k), i), ((k, i), j)):
                    ab = g.bracket_basis(a, b)
                    if ab:
                        add_scaled(acc, c.evaluate(ab, {d: Fraction(1)}), 1)
                if acc:
                    out.append(((i + 1, j + 1, k + 1), {t + 1: v for t, v in sorted(acc.items())}))
    return out


def central_extension(g: LieAlgebra, c: Cochain2) -> LieAlgebra:
    """g + Q^r with bracket [x, y] + c(x, y); the new vectors are central."""
    n = g.dim
    brackets = {k: dict(v) for k, v in g.brackets.items()}
    for (i, j), vec in c.values.items():
        if vec:
            slot = brackets.setdefault((i, j), {})
            for t, v in vec.items():
                slot[n + t] = slot.get(n + t, 0) + v
    return LieAlgebra(n + c.target_dim, brackets)


def product_by_generators(
    g1: LieAlgebra, g2: LieAlgebra, check: bool = True
) -> tuple[LieAlgebra, ProductDecomposition]:
    """g1 x g2 and its block decomposition.

    Factors whose generators are not adapted (C^1 not spanned by the other
    basis vectors) are first rewritten in an adapted basis; the basis change
    is recorded in the decomposition. With ``check`` the cocycle condition,
    Jacobi identity, nilindex and center dimension are asserted.
    """
    inv1, inv2 = invariants(g1), invariants(g2)
    a1, change1 = adapted_basis(g1, inv1)
    a2, change2 = adapted_basis(g2, inv2)
    if change1 is not None:
        inv1 = invariants(a1)
    if change2 is not None:
        inv2 = invariants(a2)
    gens1, gens2 = inv1.generator_indices, inv2.generator_indices
    phi = build_generator_cocycle(a1, a2, gens1, gens2)
    total = direct_sum(a1, a2)
    if check:
        bad = two_cocycle_check(total, phi)
        if bad:
            raise AssertionError(f"generator cochain is not a cocycle at {bad[0][0]}")
    p = central_extension(total, phi)
    m1, m2 = a1.dim, a2.dim
    dec = ProductDecomposition(
        g1_range=(1, m1),
        g2_range=(m1 + 1, m1 + m2),
        g3_range=(m1 + m2 + 1, m1 + m2 + len(gens1) * len(gens2)),
        g1_generators=tuple(gens1),
        g2_generators=tuple(m1 + b for b in gens2),
        g1_basis_change=None if change1 is None else tuple(change1),
        g2_basis_change=None if change2 is None else tuple(change2),
    )
    if check:
        _check_product(p, dec, inv1, inv2)
    return p, dec


def _check_product(p: LieAlgebra, dec: ProductDecomposition, inv1: AlgebraInvariants, inv2: AlgebraInvariants) -> None:
    if validate(p):
        raise AssertionError("product violates the Jacobi identity")
    inv = invariants(p)
    if inv.nilindex != max(inv1.nilindex, inv2.nilindex):
        raise AssertionError(
            f"nilindex {inv.nilindex} != max({inv1.nilindex}, {inv2.nilindex})"
        )
    gens_central = any(inv1.center.contains({a - 1: 1}) for a in inv1.generator_indices) or any(
        inv2.center.contains({b - 1: 1}) for b in inv2.generator_indices
    )
    expected_z = inv1.center.dim + inv2.center.dim + dec.n1 * dec.n2
    if not gens_central and inv.center.dim != expected_z:
        raise AssertionError(f"center dimension {inv.center.dim} != {expected_z}")


# -- canonical isomorphisms -------------------------------------------------


def verify_canonical_isomorphism(a: LieAlgebra, b: LieAlgebra, m) -> bool:
    """True iff the linear map m is an isomorphism a -> b.

    ``m`` is a Matrix whose column l is the image of X_(l+1), or a sequence
    of sparse 0-based image vectors.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if isinstance(m, Matrix):
        if m.shape != (b.dim, a.dim):
            raise ValueError(f"map has shape {m.shape}, expected {(b.dim, a.dim)}")
        images = m.columns()
        mat = m
    else:
        images = [dict(v) for v in m]
        if len(images) != a.dim:
            raise ValueError("map must give one image per basis vector")
        mat = Matrix.from_columns(b.dim, images)
    if Eliminator(a.dim).add_all(mat.rows).rank != a.dim:
        raise ValueError("map is not invertible")
    n = a.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat.apply(a.bracket_basis(i, j))
            rhs = b.bracket_sparse(images[i], images[j])
            if lhs != rhs:
                return False
    return True


def _keyed_product(parts):
    """Build a product tree and track a provenance key per basis vector.

    ``parts`` is either ``(algebra, keys)`` or ``("x", left, right)``.
    """
    if parts[0] != "x":
        return parts
    left, lkeys = _keyed_product(parts[1])
    right, rkeys = _keyed_product(parts[2])
    p, dec = product_by_generators(left, right)
    if dec.g1_basis_change is not None or dec.g2_basis_change is not None:
        raise ValueError("canonical maps need factors with adapted bases")
    zkeys = [
        ("Z", lkeys[a - 1], rkeys[b - 1 - left.dim])
        for a in dec.g1_generators
        for b in dec.g2_generators
    ]
    return p, list(lkeys) + list(rkeys) + zkeys


def _signed_permutation(src_keys, dst_keys) -> Matrix:
    where = {k: i for i, k in enumerate(dst_keys)}
    images = []
    for k in src_keys:
        if k in where:
            images.append({where[k]: Fraction(1)})
        elif k[0] == "Z" and ("Z", k[2], k[1]) in where:
            images.append({where[("Z", k[2], k[1])]: Fraction(-1)})
        else:
            raise ValueError(f"no counterpart for basis vector {k}")
    return Matrix.from_columns(len(dst_keys), images)


def _leaf(g: LieAlgebra, tag) -> tuple:
    return g, [("X", tag, i) for i in range(1, g.dim + 1)]


def commutativity_map(g1: LieAlgebra, g2: LieAlgebra) -> tuple[LieAlgebra, LieAlgebra, Matrix]:
    """(g1 x g2, g2 x g1, m) with m the block swap.

    m sends the g1 and g2 blocks to their copies and Z_{(i-1)n2+j} to
    -Z'_{(j-1)n1+i}; the sign comes from [X_i, X'_j] = -[X'_j, X_i].
    """
    a, akeys = _keyed_product(("x", _leaf(g1, 1), _leaf(g2, 2)))
    b, bkeys = _keyed_product(("x", _leaf(g2, 2), _leaf(g1, 1)))
    return a, b, _signed_permutation(akeys, bkeys)


def associativity_map(factors: Sequence[LieAlgebra]) -> tuple[LieAlgebra, LieAlgebra, Matrix]:
    """((g1 x g2) x ... ) x gt  versus  g1 x (g2 x ( ... x gt)).

    Each new central vector is matched by the pair of original generators it
    was created from.
    """
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    leaves = [_leaf(g, t) for t, g in enumerate(factors, start=1)]
    left = leaves[0]
    for leaf in leaves[1:]:
        left = ("x", left, leaf)
    right = leaves[-1]
    for leaf in reversed(leaves[:-1]):
        right = ("x", leaf, right)
    a, akeys = _keyed_product(left)
    b, bkeys = _keyed_product(right)
    return a, b, _signed_permutation(akeys, bkeys)


# -- powers and closed forms ------------------------------------------------


def power(g: LieAlgebra, n: int) -> tuple[LieAlgebra, list[ProductDecomposition]]:
    """Left-associated n-th power g x g x ... x g."""
    if n < 1:
        raise ValueError(f"power needs n >= 1, got {n}")
    result = g
    decs = []
    for _ in range(n - 1):
        result, dec = product_by_generators(result, g, check=False)
        decs.append(dec)
    return result, decs


@dataclass(frozen=True)
class AlgebraStats:
    dim: int
    center_dim: int
    derived_dim: int
    generators: int

    @classmethod
    def of(cls, g: LieAlgebra, inv: AlgebraInvariants | None = None) -> "AlgebraStats":
        if inv is None:
            inv = invariants(g)
        return cls(g.dim, inv.center.dim, inv.derived.dim, len(inv.generator_indices))


@dataclass(frozen=True)
class PowerStats:
    dim: Fraction
    dimZ: Fraction
    codimZ: Fraction
    noncentral_derived: Fraction
    ratio: Fraction  # codimZ / dimZ

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("dim", "dimZ", "codimZ", "noncentral_derived", "ratio")}


def power_stats(dim_g: int, dimZ_g: int, dimC1_g: int, k: int, n: int) -> PowerStats:
    """Closed forms for dim and dim Z of the n-th power of an algebra with k generators."""
    if k < 2:
        raise ValueError(f"need k >= 2 generators, got {k}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    half_k2 = Fraction(k * k, 2)
    dim = half_k2 * n * n + (dim_g - half_k2) * n
    dim_z = half_k2 * n * n + (dimZ_g - half_k2) * n
    codim = dim - dim_z
    return PowerStats(
        dim=dim,
        dimZ=dim_z,
        codimZ=codim,
        noncentral_derived=Fraction(n * (dimC1_g - dimZ_g)),
        ratio=codim / dim_z,
    )


def _stats_at(s: AlgebraStats, n: int) -> PowerStats:
    return power_stats(s.dim, s.center_dim, s.derived_dim, s.generators, n)


def corollary_bound(s: AlgebraStats, big_n: int) -> Fraction:
    """2N/k^2 (codim Z - k) - 2 dim Z / k^2 + 1; every larger n gives ratio < 1/N."""
    k2 = s.generators ** 2
    codim = s.dim - s.center_dim
    return Fraction(2 * big_n, k2) * (codim - s.generators) - Fraction(2 * s.center_dim, k2) + 1


def epsilon_min_n(s: AlgebraStats, epsilon, mode: str = "center_ratio") -> int:
    """Smallest n whose n-th power has ratio below epsilon.

    ``center_ratio``: codim Z / dim Z. ``derived_ratio``:
    (dim C^1 - dim Z) / dim Z; in this mode the result is also checked against
    :func:`corollary_bound` with N = ceil(1/epsilon).
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    mode = {"center": "center_ratio", "derived": "derived_ratio"}.get(mode, mode)
    if mode not in ("center_ratio", "derived_ratio"):
        raise ValueError(f"unknown mode {mode!r}")

    def ratio(n):
        st = _stats_at(s, n)
        if mode == "center_ratio":
            return st.ratio
        return st.noncentral_derived / st.dimZ

    n = 1
    while ratio(n) >= epsilon:
        n += 1
    if mode == "derived_ratio":
        bound = corollary_n(s, math.ceil(1 / epsilon))
        if n > bound:
            raise AssertionError(f"minimal n={n} exceeds the sufficient bound {bound}")
    return n


def corollary_n(s: AlgebraStats, big_n: int) -> int:
    """Smallest integer strictly above :func:`corollary_bound` (at least 1)."""
    return max(1, math.floor(corollary_bound(s, big_n)) + 1)


# -- necessary conditions ---------------------------------------------------


@dataclass(frozen=True)
class NecessaryConditions:
    passes: bool
    failures: list
    values: dict
    note: str = "necessary conditions only; passing does not make g a product by generators"


def product_necessary_conditions(g: LieAlgebra) -> NecessaryConditions:
    inv = invariants(g)
    z = inv.center.dim
    k = g.dim - inv.derived.dim
    failures = []
    if z < 6:
        failures.append(f"dim Z(g) = {z} < 6")
    if k < 4:
        failures.append(f"dim g/C^1 g = {k} < 4")
    if g.dim < 10:
        failures.append(f"dim g = {g.dim} < 10")
    return NecessaryConditions(
        passes=not failures,
        failures=failures,
        values={"dim": g.dim, "center_dim": z, "abelianization_dim": k},
    )
