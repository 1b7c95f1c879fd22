"""
Lie algebras given by structure constants, and their classical invariants.

Basis vectors are numbered 1..dim in the public API (``X1`` .. ``Xn``);
internally sparse vectors use 0-based keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exactlin import Matrix, Subspace, add_scaled, nullspace_of_rows, span

__all__ = [
    "LieAlgebra",
    "AlgebraInvariants",
    "NotNilpotentError",
    "JacobiViolation",
    "validate",
    "bracket",
    "invariants",
    "lower_central_series",
    "center",
    "transporter",
    "generator_indices",
    "derived_power",
]


class NotNilpotentError(ValueError):
    """The lower central series stabilised at a nonzero term."""

    def __init__(self, stable: Subspace):
        self.stable = stable
        super().__init__(
            f"algebra is not nilpotent: lower central series stabilises at a "
            f"subspace of dimension {stable.dim}"
        )


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q by its structure constants.

    ``brackets`` maps 1-based pairs ``(i, j)`` with ``i < j`` to the expansion
    of ``[X_i, X_j]`` as ``{k: coefficient}``. Missing pairs are zero.
    Construction only checks the table shape; use :func:`validate` for Jacobi.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        labels: Sequence[str] | None = None,
    ):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        if labels is None:
            labels = [f"X{i}" for i in range(1, dim + 1)]
        if len(labels) != dim:
            raise ValueError(f"{len(labels)} labels for dimension {dim}")
        self.labels = tuple(labels)
        table = {}
        for (i, j), vec in (brackets or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexError(f"bracket ({i},{j}) out of range for dimension {dim}")
            if i == j:
                raise ValueError(f"diagonal bracket ({i},{i}) is not allowed")
            if i > j:
                raise ValueError(f"bracket pair ({i},{j}) must have i < j")
            out = {}
            for k, c in vec.items():
                if not 1 <= k <= dim:
                    raise IndexError(f"target X{k} of bracket ({i},{j}) out of range")
                c = Fraction(c)
                if c:
                    out[k] = c
            if out:
                table[(i, j)] = dict(sorted(out.items()))
        self.brackets = dict(sorted(table.items()))

    @cached_property
    def _table(self) -> dict:
        # full antisymmetric table on 0-based indices
        t = {}
        for (i, j), vec in self.brackets.items():
            v = {k - 1: c for k, c in vec.items()}
            t[(i - 1, j - 1)] = v
            t[(j - 1, i - 1)] = {k: -c for k, c in v.items()}
        return t

    @cached_property
    def _rows(self) -> list[dict]:
        # _rows[a][b] = [X_a, X_b], 0-based, only nonzero entries
        rows = [{} for _ in range(self.dim)]
        for (a, b), v in self._table.items():
            rows[a][b] = v
        return rows

    def bracket_basis(self, a: int, b: int) -> dict:
        """[X_a, X_b] for 0-based indices as a sparse vector (do not mutate)."""
        return self._table.get((a, b), {})

    def bracket_sparse(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        rows = self._rows
        for a, x in u.items():
            ra = rows[a]
            if not ra:
                continue
            for b, y in v.items():
                vec = ra.get(b)
                if vec:
                    add_scaled(out, vec, x * y)
        return out

    def ad_matrix(self, a: int) -> Matrix:
        """Matrix of ad(X_a) (0-based a) acting on column vectors."""
        cols = [self._table.get((a, b), {}) for b in range(self.dim)]
        return Matrix.from_columns(self.dim, cols)

    def is_abelian(self) -> bool:
        return not self.brackets

    def basis_vector(self, i: int) -> dict:
        """Sparse vector of X_i, 1-based."""
        return {i - 1: Fraction(1)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.labels == other.labels
            and self.brackets == other.brackets
        )

    def __hash__(self):
        return hash((self.dim, self.labels, tuple((k, tuple(v.items())) for k, v in self.brackets.items())))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.brackets)})"


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]  # 1-based i < j < k
    value: dict  # 1-based sparse vector of the Jacobi sum


def validate(g: LieAlgebra) -> list[JacobiViolation]:
    """All basis triples where the Jacobi identity fails (empty when valid)."""
    n = g.dim
    t = g._table
    rows = g._rows
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc: dict = {}
                for (a, b), c in (((i, j), k), ((j, k), i), ((k, i), j)):
                    ab = t.get((a, b))
                    if not ab:
                        continue
                    for m, x in ab.items():
                        vec = rows[m].get(c)
                        if vec:
                            add_scaled(acc, vec, x)
                if acc:
                    out.append(
                        JacobiViolation(
                            (i + 1, j + 1, k + 1),
                            {m + 1: v for m, v in sorted(acc.items())},
                        )
                    )
    return out


def bracket(g: LieAlgebra, u: Sequence, v: Sequence) -> list[Fraction]:
    """[u, v] for dense coordinate vectors."""
    if len(u) != g.dim or len(v) != g.dim:
        raise ValueError(f"vectors must have length {g.dim}")
    su = {i: Fraction(x) for i, x in enumerate(u) if x}
    sv = {i: Fraction(x) for i, x in enumerate(v) if x}
    w = g.bracket_sparse(su, sv)
    return [w.get(i, Fraction(0)) for i in range(g.dim)]


def bracket_subspaces(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """[a, b] as a subspace."""
    vecs = (g.bracket_sparse(x, y) for x in a.basis for y in b.basis)
    return span(g.dim, vecs)


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """C^0 g = g, C^1 g = [g,g], ... ending with the zero subspace.

    Raises NotNilpotentError when the series stabilises above zero.
    """
    n = g.dim
    full = Subspace.full(n)
    series = [full]
    current = full
    while not current.is_zero():
        nxt = span(n, (g.bracket_sparse({a: Fraction(1)}, x) for a in range(n) for x in current.basis))
        if nxt.dim == current.dim:
            raise NotNilpotentError(current)
        series.append(nxt)
        current = nxt
    return series


def derived_power(g: LieAlgebra, k: int) -> Subspace:
    """C^k g."""
    series = lower_central_series(g)
    return series[k] if k < len(series) else Subspace.zero(g.dim)


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    # v is central iff sum_a v_a [X_a, X_b] = 0 for every b
    eqs: dict = {}
    for (a, b), vec in g._table.items():
        for k, c in vec.items():
            eqs.setdefault((b, k), {})[a] = c
    return nullspace_of_rows(n, eqs.values())


def generator_indices(g: LieAlgebra, derived: Subspace | None = None) -> list[int]:
    """Lowest-index greedy choice of basis vectors spanning g / C^1 g (1-based)."""
    if derived is None:
        derived = span(g.dim, g._table.values())
    e = derived.eliminator()
    out = []
    for i in range(g.dim):
        if e.add({i: Fraction(1)}):
            out.append(i + 1)
    return out


def transporter(g: LieAlgebra, z: Subspace | None = None) -> Subspace:
    """{v : [v, g] is contained in Z(g)}."""
    n = g.dim
    if z is None:
        z = center(g)
    # equations: (reduce_mod_Z([v, X_b]))_k = 0 for all b, k; linear in v
    eqs: dict = {}
    for b in range(n):
        for a in range(n):
            vec = g._table.get((a, b))
            if not vec:
                continue
            red = z.reduce(vec)
            for k, c in red.items():
                eqs.setdefault((b, k), {})[a] = c
    return nullspace_of_rows(n, eqs.values())


@dataclass(frozen=True)
class AlgebraInvariants:
    center: Subspace
    lower_central: list = field(default_factory=list)  # list[Subspace]
    nilindex: int = 0
    generator_indices: list = field(default_factory=list)
    transporter: Subspace | None = None

    @property
    def derived(self) -> Subspace:
        return self.lower_central[1] if len(self.lower_central) > 1 else self.lower_central[0]

    @property
    def series_dims(self) -> list[int]:
        return [s.dim for s in self.lower_central]

    def term(self, k: int) -> Subspace:
        if k < len(self.lower_central):
            return self.lower_central[k]
        return Subspace.zero(self.center.ambient_dim)


def invariants(g: LieAlgebra) -> AlgebraInvariants:
    """Center, lower central series, nilindex, generators and transporter."""
    series = lower_central_series(g)
    z = center(g)
    derived = series[1] if len(series) > 1 else series[0]
    return AlgebraInvariants(
        center=z,
        lower_central=series,
        nilindex=len(series) - 1,
        generator_indices=generator_indices(g, derived),
        transporter=transporter(g, z),
    )


def is_adapted(g: LieAlgebra, inv: AlgebraInvariants | None = None) -> bool:
    """True when C^1 g is spanned by the non-generator basis vectors."""
    if inv is None:
        inv = invariants(g)
    gens = set(inv.generator_indices)
    others = span(g.dim, ({i - 1: Fraction(1)} for i in range(1, g.dim + 1) if i not in gens))
    return others == inv.derived


def change_basis(g: LieAlgebra, new_basis: Sequence[Mapping]) -> LieAlgebra:
    """Structure constants of g in a new basis.

    new_basis[i] is the sparse (0-based) expansion of the i-th new vector in
    the old basis.
    """
    n = g.dim
    if len(new_basis) != n:
        raise ValueError("basis change needs exactly dim vectors")
    cols = Matrix.from_columns(n, list(new_basis))
    # coordinates in the new basis: solve cols * x = w
    inv = _inverse(cols)
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = g.bracket_sparse(new_basis[i], new_basis[j])
            if w:
                x = inv.apply(w)
                brackets[(i + 1, j + 1)] = {k + 1: c for k, c in x.items()}
    return LieAlgebra(n, brackets)


def _inverse(m: Matrix) -> Matrix:
    from .exactlin import Eliminator

    n = m.nrows
    if m.ncols != n:
        raise ValueError("only square matrices are invertible")
    e = Eliminator(2 * n, "first")
    for r, row in enumerate(m.rows):
        aug = dict(row)
        aug[n + r] = Fraction(1)
        e.add(aug)
    rows = e.echelon_rows()
    if len(rows) < n or any(min(rows[i]) != i for i in range(n)):
        raise ValueError("matrix is singular")
    return Matrix(n, n, [{c - n: v for c, v in r.items() if c >= n} for r in rows[:n]])


def adapted_basis(g: LieAlgebra, inv: AlgebraInvariants | None = None) -> tuple[LieAlgebra, list[dict] | None]:
    """Rewrite g in a basis whose first vectors are generators and whose rest spans C^1 g.

    Returns ``(g, None)`` when g is already adapted, otherwise the rewritten
    algebra and the list of new basis vectors (0-based sparse, old coordinates).
    """
    if inv is None:
        inv = invariants(g)
    if is_adapted(g, inv):
        return g, None
    gens = [{i - 1: Fraction(1)} for i in inv.generator_indices]
    new_basis = gens + [dict(r) for r in inv.derived.basis]
    return change_basis(g, new_basis), new_basis
