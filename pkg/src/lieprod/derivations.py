"""
Derivation algebras and characteristic nilpotence.

A derivation D is stored as a square Matrix acting on column vectors:
column l holds the coordinates of D(X_l). Unknown d[k][l] of the Leibniz
system has flat index k*n + l (row-major), which is also the order used to
canonicalise the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Eliminator, Matrix, Subspace, add_scaled, nullspace_of_rows, span
from .liecore import LieAlgebra, center, lower_central_series

__all__ = [
    "DerivationSpace",
    "CnlaReport",
    "derivation_space",
    "leibniz_equations",
    "is_derivation",
    "orbit_sequence",
    "derivation_lcs",
    "nilpotency_exponent",
    "cnla_check",
    "commutator",
]


@dataclass(frozen=True)
class DerivationSpace:
    algebra_dim: int
    basis: tuple  # tuple[Matrix, ...]
    subspace: Subspace  # the vectorised basis, canonical

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, d: Matrix) -> bool:
        return self.subspace.contains(d.vectorize())

    def combination(self, coeffs) -> Matrix:
        """sum_i coeffs[i] * basis[i]."""
        acc: dict = {}
        for c, d in zip(coeffs, self.subspace.basis):
            add_scaled(acc, d, Fraction(c))
        return Matrix.unvectorize(acc, self.algebra_dim, self.algebra_dim)


def leibniz_equations(g: LieAlgebra):
    """Yield the nonzero rows of the linear system defining Der(g).

    For i < j and each target k:
      sum_l c_ij^l d_kl - sum_m c_mj^k d_mi - sum_m c_im^k d_mj = 0
    """
    n = g.dim
    table = g._table
    # into[(b, k)] = [(m, coeff)] with [X_m, X_b] having X_k-coefficient coeff
    into: dict = {}
    for (m, b), vec in table.items():
        for k, c in vec.items():
            into.setdefault((b, k), []).append((m, c))
    targets_by_b: dict = {}
    for (b, k) in into:
        targets_by_b.setdefault(b, set()).add(k)
    for i in range(n):
        for j in range(i + 1, n):
            cij = table.get((i, j), {})
            ks = set(targets_by_b.get(j, ())) | set(targets_by_b.get(i, ()))
            if cij:
                ks = set(range(n))
            for k in sorted(ks):
                row: dict = {}
                for l, c in cij.items():
                    row[k * n + l] = row.get(k * n + l, 0) + c
                # [X_m, X_j]_k d_mi
                for m, c in into.get((j, k), ()):
                    idx = m * n + i
                    row[idx] = row.get(idx, 0) - c
                # [X_i, X_m]_k d_mj  ==  -[X_m, X_i]_k d_mj
                for m, c in into.get((i, k), ()):
                    idx = m * n + j
                    row[idx] = row.get(idx, 0) + c
                row = {a: v for a, v in row.items() if v}
                if row:
                    yield row


def derivation_space(g: LieAlgebra) -> DerivationSpace:
    n = g.dim
    ker = nullspace_of_rows(n * n, leibniz_equations(g))
    basis = tuple(Matrix.unvectorize(v, n, n) for v in ker.basis)
    return DerivationSpace(n, basis, ker)


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    """Direct check of D[x,y] = [Dx,y] + [x,Dy] on basis pairs."""
    n = g.dim
    cols = d.columns()
    for i in range(n):
        for j in range(i + 1, n):
            lhs = d.apply(g.bracket_basis(i, j))
            rhs = g.bracket_sparse(cols[i], {j: Fraction(1)})
            add_scaled(rhs, g.bracket_sparse({i: Fraction(1)}, cols[j]), 1)
            add_scaled(rhs, lhs, -1)
            if rhs:
                return False
    return True


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def _apply_columns(cols: list, vec) -> dict:
    out: dict = {}
    for c, x in vec.items():
        col = cols[c]
        if col:
            add_scaled(out, col, x)
    return out


def orbit_sequence(der: DerivationSpace, cap: int | None = None) -> tuple[list[Subspace], bool]:
    """g^[1] = Der(g)(g), g^[k] = Der(g)(g^[k-1]).

    Returns the computed terms and whether the sequence reached zero. Stops on
    zero, on stabilisation, or after ``cap`` steps (default: algebra dim).
    """
    n = der.algebra_dim
    if cap is None:
        cap = n
    maps = [d.columns() for d in der.basis]
    current = Subspace.full(n)
    terms: list[Subspace] = []
    for _ in range(cap):
        e = Eliminator(n, "first")
        for v in current.basis:
            for cols in maps:
                e.add(_apply_columns(cols, v))
        nxt = e.subspace()
        if not current.contains_subspace(nxt):
            raise AssertionError("orbit sequence is not decreasing")
        terms.append(nxt)
        if nxt.is_zero():
            return terms, True
        if nxt == current:
            return terms, False
        current = nxt
    return terms, False


def _nonzero_rows(m: Matrix) -> dict:
    return {r: row for r, row in enumerate(m.rows) if row}


def _commutator_vec(a: dict, b: dict, n: int) -> dict:
    """Row-major vectorisation of AB - BA for matrices given as nonzero-row dicts."""
    out: dict = {}
    for x, y, sign in ((a, b, 1), (b, a, -1)):
        for r, row in x.items():
            base = r * n
            for k, v in row.items():
                yrow = y.get(k)
                if not yrow:
                    continue
                f = sign * v
                for c, w in yrow.items():
                    key = base + c
                    t = out.get(key, 0) + f * w
                    if t:
                        out[key] = t
                    else:
                        del out[key]
    return out


def derivation_lcs(der: DerivationSpace) -> tuple[list[int], bool]:
    """Dimensions of the lower central series of Der(g) under commutators.

    Starts with dim Der(g). Returns the dims and whether it reached zero.
    """
    n = der.algebra_dim
    basis = [_nonzero_rows(d) for d in der.basis]
    dims = [len(basis)]
    current = basis
    while current:
        e = Eliminator(n * n, "first")
        for i, a in enumerate(basis):
            # [a, a] = 0 and [a, b] = -[b, a] when current is all of Der(g)
            others = current[i + 1:] if current is basis else current
            for b in others:
                e.add(_commutator_vec(a, b, n))
        if e.rank == len(current):
            return dims, False
        dims.append(e.rank)
        current = [_nonzero_rows(Matrix.unvectorize(r, n, n)) for r in e.echelon_rows()]
    return dims, True


def nilpotency_exponent(d: Matrix, cap: int | None = None) -> int | None:
    """Smallest r with D^r = 0, or None if D^cap != 0 (cap defaults to size)."""
    n = d.nrows
    if cap is None:
        cap = n
    if d.is_zero():
        return 1 if n else 0
    p = d
    for r in range(2, cap + 1):
        p = p @ d
        if p.is_zero():
            return r
    return None


@dataclass(frozen=True)
class CnlaReport:
    is_cnla: bool
    orbit_dims: list
    der_lcs_dims: list
    max_derivation_nilpotency_exponent: int | None
    der_dim: int
    stable_dim: int | None = None  # dimension where the orbit sequence stabilised

    @property
    def orbit_length(self) -> int | None:
        """Smallest m with g^[m] = 0."""
        return len(self.orbit_dims) if self.is_cnla else None

    def to_json(self) -> dict:
        return {
            "is_cnla": self.is_cnla,
            "der_dim": self.der_dim,
            "orbit_dims": list(self.orbit_dims),
            "orbit_length": self.orbit_length,
            "der_lcs_dims": list(self.der_lcs_dims),
            "max_derivation_nilpotency_exponent": self.max_derivation_nilpotency_exponent,
            "stable_dim": self.stable_dim,
        }


def cnla_check(g: LieAlgebra, der: DerivationSpace | None = None, route_b: bool = True) -> CnlaReport:
    """Decide characteristic nilpotence by the orbit sequence and by Der(g).

    Both routes must agree; a disagreement raises RuntimeError. Passing
    ``route_b=False`` skips the commutator series (it is the costly half on
    large products) and reports ``der_lcs_dims`` as empty.
    """
    if g.is_abelian():
        raise ValueError("characteristic nilpotence is only defined here for nonabelian algebras")
    lower_central_series(g)  # raises on non-nilpotent input
    if der is None:
        der = derivation_space(g)
    terms, orbit_zero = orbit_sequence(der)
    orbit_dims = [t.dim for t in terms]
    if route_b:
        lcs_dims, lcs_zero = derivation_lcs(der)
        if lcs_zero != orbit_zero:
            raise RuntimeError(
                f"orbit route ({orbit_zero}) and derivation-algebra route ({lcs_zero}) disagree"
            )
    else:
        lcs_dims = []
    exps = [nilpotency_exponent(d) for d in der.basis]
    max_exp = None if any(e is None for e in exps) else max(exps, default=0)
    return CnlaReport(
        is_cnla=orbit_zero,
        orbit_dims=orbit_dims,
        der_lcs_dims=lcs_dims,
        max_derivation_nilpotency_exponent=max_exp,
        der_dim=der.dim,
        stable_dim=None if orbit_zero else orbit_dims[-1],
    )


def preserves(d: Matrix, sub: Subspace) -> bool:
    """D(sub) is contained in sub."""
    return all(sub.contains(d.apply(v)) for v in sub.basis)
