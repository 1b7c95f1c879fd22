"""
Exact linear algebra over the rationals.

Vectors are sparse dicts ``{column: Fraction}`` with 0-based columns and no
stored zeros. Everything here is exact; there is no floating point path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction
SparseVec = dict  # dict[int, Fraction]

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "Matrix",
    "Subspace",
    "SubspaceRelation",
    "Eliminator",
    "reduce",
    "nullspace",
    "span",
    "subspace_relate",
    "sparse",
    "add_scaled",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a canonical Fraction.

    Floats and malformed strings raise ValueError.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"not a rational literal: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator: {text!r}")
    if sep and (den.strip().startswith(("-", "+"))):
        raise ValueError(f"sign must be on the numerator: {text!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def sparse(values: Iterable) -> dict:
    """Dense sequence -> sparse dict, dropping zeros."""
    return {i: Fraction(v) for i, v in enumerate(values) if v != 0}


def add_scaled(target: dict, source: Mapping, scale) -> None:
    """target += scale * source, in place, keeping the no-zeros invariant."""
    if scale == 0:
        return
    for c, v in source.items():
        w = target.get(c, 0) + scale * v
        if w:
            target[c] = w
        else:
            target.pop(c, None)


class Matrix:
    """Sparse rational matrix stored as a tuple of row dicts."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        out = []
        for r in rows:
            row = {}
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range for {ncols} columns")
                if v != 0:
                    row[c] = Fraction(v)
            out.append(row)
        self.rows = tuple(out)

    @classmethod
    def _wrap(cls, nrows: int, ncols: int, rows) -> "Matrix":
        """Trusted constructor: rows are already clean Fraction dicts."""
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.rows = nrows, ncols, tuple(rows)
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
        return cls(len(data), ncols, [sparse(row) for row in data])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping]) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    rows[r][c] = v
        return cls(nrows, len(columns), rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx) -> Fraction:
        r, c = idx
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry {idx} out of range for shape {self.shape}")
        return self.rows[r].get(c, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        return [[row.get(c, Fraction(0)) for c in range(self.ncols)] for row in self.rows]

    def column(self, c: int) -> dict:
        return {r: row[c] for r, row in enumerate(self.rows) if c in row}

    def columns(self) -> list[dict]:
        cols = [{} for _ in range(self.ncols)]
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.columns())

    def apply(self, vec: Mapping) -> dict:
        """Matrix times a sparse column vector."""
        out = {}
        for r, row in enumerate(self.rows):
            if not row:
                continue
            s = 0
            if len(row) < len(vec):
                for c, v in row.items():
                    x = vec.get(c)
                    if x:
                        s += v * x
            else:
                for c, x in vec.items():
                    v = row.get(c)
                    if v:
                        s += v * x
            if s:
                out[r] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = []
        orows = other.rows
        for row in self.rows:
            acc: dict = {}
            for k, v in row.items():
                if orows[k]:
                    add_scaled(acc, orows[k], v)
            rows.append(acc)
        return Matrix._wrap(self.nrows, other.ncols, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = []
        for a, b in zip(self.rows, other.rows):
            acc = dict(a)
            add_scaled(acc, b, 1)
            rows.append(acc)
        return Matrix._wrap(self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, s) -> "Matrix":
        s = Fraction(s)
        if not s:
            return Matrix(self.nrows, self.ncols)
        return Matrix._wrap(self.nrows, self.ncols, [{c: s * v for c, v in row.items()} for row in self.rows])

    def is_zero(self) -> bool:
        return not any(self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        cmap = {c: j for j, c in enumerate(cols)}
        out = []
        for r in rows:
            src = self.rows[r]
            out.append({cmap[c]: v for c, v in src.items() if c in cmap})
        return Matrix(len(rows), len(cols), out)

    def vectorize(self) -> dict:
        """Row-major flattening to a sparse vector of length nrows*ncols."""
        n = self.ncols
        return {r * n + c: v for r, row in enumerate(self.rows) for c, v in row.items()}

    @classmethod
    def unvectorize(cls, vec: Mapping, nrows: int, ncols: int) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        for idx, v in vec.items():
            if v:
                rows[idx // ncols][idx % ncols] = Fraction(v)
        return cls._wrap(nrows, ncols, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self.rows)))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}, {self.ncols}, nnz={self.nnz()})"


class Eliminator:
    """Streaming Gauss-Jordan elimination on sparse rows.

    Rows are added one at a time and kept fully reduced against each other.
    ``pivot="first"`` pivots on the smallest column of each new row, which
    yields the canonical reduced row echelon form. ``pivot="last"`` pivots on
    the largest column; the kernel vectors read off from that form are
    already in canonical reduced row echelon form.
    """

    def __init__(self, ncols: int, pivot: str = "first"):
        if pivot not in ("first", "last"):
            raise ValueError(f"unknown pivot strategy {pivot!r}")
        self.ncols = ncols
        self.pivot = pivot
        self.pivots: dict[int, dict] = {}  # pivot column -> row (pivot entry 1)
        self.occurs: dict[int, set] = {}  # column -> pivot columns of rows using it

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_vector(self, vec: Mapping) -> dict:
        """Return vec reduced modulo the current row space."""
        row = {c: v for c, v in vec.items() if v}
        pivots = self.pivots
        for c in [c for c in row if c in pivots]:
            f = row.get(c)
            if f:
                add_scaled(row, pivots[c], -f)
        return row

    def add(self, vec: Mapping) -> bool:
        """Add a row; return True when it increased the rank."""
        row = self.reduce_vector(vec)
        if not row:
            return False
        p = min(row) if self.pivot == "first" else max(row)
        inv = 1 / row[p]
        if inv != 1:
            row = {c: v * inv for c, v in row.items()}
        # clear column p from the existing rows
        for q in self.occurs.pop(p, ()):
            prow = self.pivots[q]
            f = prow[p]
            for c, v in row.items():
                w = prow.get(c, 0) - f * v
                if w:
                    if c not in prow:
                        self.occurs.setdefault(c, set()).add(q)
                    prow[c] = w
                else:
                    del prow[c]
                    if c != p:
                        self.occurs[c].discard(q)
        self.pivots[p] = row
        for c in row:
            if c != p:
                self.occurs.setdefault(c, set()).add(p)
        return True

    def add_all(self, vecs: Iterable[Mapping]) -> "Eliminator":
        for v in vecs:
            self.add(v)
        return self

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce_vector(vec)

    def echelon_rows(self) -> list[dict]:
        """Rows sorted by pivot column. Canonical RREF when pivot="first"."""
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]

    def subspace(self) -> "Subspace":
        if self.pivot == "first":
            return Subspace._from_rref(self.ncols, self.echelon_rows())
        return span(self.ncols, self.pivots.values())

    def kernel(self) -> "Subspace":
        """Canonical basis of {x : row . x = 0 for all rows}."""
        if self.pivot != "last":
            return _kernel_from_rows(self.ncols, self.pivots)
        # With last-column pivots every entry of a row sits left of its pivot,
        # so e_f - sum_p row_p[f] e_p has leading column f.
        basis = []
        free = [c for c in range(self.ncols) if c not in self.pivots]
        for f in free:
            vec = {f: Fraction(1)}
            for p in self.occurs.get(f, ()):
                vec[p] = -self.pivots[p][f]
            basis.append(vec)
        return Subspace._from_rref(self.ncols, basis)


def _kernel_from_rows(ncols: int, pivots: Mapping[int, Mapping]) -> "Subspace":
    cols_hit: dict[int, list] = {}
    for p, row in pivots.items():
        for c, v in row.items():
            if c != p:
                cols_hit.setdefault(c, []).append((p, v))
    vecs = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, v in cols_hit.get(f, ()):
            vec[p] = -v
        vecs.append(vec)
    return span(ncols, vecs)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of Q^n held by its canonical reduced row echelon basis."""

    ambient_dim: int
    basis: tuple  # tuple of sparse dicts, sorted by pivot

    @classmethod
    def _from_rref(cls, ambient_dim: int, rows) -> "Subspace":
        rows = sorted((dict(r) for r in rows), key=min)
        return cls(ambient_dim, tuple(rows))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple({i: Fraction(1)} for i in range(n)))

    @classmethod
    def spanned_by(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Span of dense coordinate vectors."""
        return span(n, (sparse(v) for v in vectors))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(r) for r in self.basis)

    def vectors(self) -> list[list[Fraction]]:
        """Basis as dense lists."""
        return [[r.get(c, Fraction(0)) for c in range(self.ambient_dim)] for r in self.basis]

    def reduce(self, vec: Mapping) -> dict:
        """Remainder of vec modulo this subspace; zero iff vec lies in it."""
        out = {c: v for c, v in vec.items() if v}
        for row in self.basis:
            p = min(row)
            f = out.get(p)
            if f:
                add_scaled(out, row, -f)
        return out

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def eliminator(self, pivot: str = "first") -> Eliminator:
        e = Eliminator(self.ambient_dim, pivot)
        if pivot == "first":
            # already reduced; install directly
            for row in self.basis:
                p = min(row)
                e.pivots[p] = dict(row)
                for c in row:
                    if c != p:
                        e.occurs.setdefault(c, set()).add(p)
        else:
            e.add_all(self.basis)
        return e

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        e = self.eliminator()
        e.add_all(other.basis)
        return e.subspace()

    def intersection(self, other: "Subspace") -> "Subspace":
        return subspace_relate(self, other).intersection

    def is_zero(self) -> bool:
        return not self.basis

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self.basis)))

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(n: int, vectors: Iterable[Mapping]) -> Subspace:
    """Canonical subspace spanned by sparse vectors of length n."""
    e = Eliminator(n, "first")
    for v in vectors:
        if any(not 0 <= c < n for c in v):
            raise IndexError(f"vector index out of range for ambient dimension {n}")
        e.add(v)
    return e.subspace()


def reduce(m: Matrix) -> tuple[Matrix, int]:
    """Canonical reduced row echelon form of m and its rank.

    The zero rows are kept at the bottom so the shape is unchanged.
    """
    e = Eliminator(m.ncols, "first").add_all(m.rows)
    rows = e.echelon_rows()
    rank = len(rows)
    rows.extend({} for _ in range(m.nrows - rank))
    return Matrix(m.nrows, m.ncols, rows), rank


def nullspace(m: Matrix) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    return Eliminator(m.ncols, "last").add_all(m.rows).kernel()


def nullspace_of_rows(ncols: int, rows: Iterable[Mapping]) -> Subspace:
    """nullspace for a stream of sparse equation rows (no Matrix materialized)."""
    return Eliminator(ncols, "last").add_all(rows).kernel()


@dataclass(frozen=True)
class SubspaceRelation:
    sum: Subspace
    intersection: Subspace
    a_contains_b: bool
    b_contains_a: bool


def subspace_relate(a: Subspace, b: Subspace) -> SubspaceRelation:
    a._check(b)
    n = a.ambient_dim
    total = a + b
    # (x, y) with sum x_i a_i - sum y_j b_j = 0 gives x.a in the intersection
    na, nb = a.dim, b.dim
    cols = [{} for _ in range(n)]
    for i, row in enumerate(a.basis):
        for c, v in row.items():
            cols[c][i] = v
    for j, row in enumerate(b.basis):
        for c, v in row.items():
            cols[c][na + j] = -v
    ker = nullspace_of_rows(na + nb, cols)
    inter_vecs = []
    for k in ker.basis:
        acc: dict = {}
        for i, x in k.items():
            if i < na:
                add_scaled(acc, a.basis[i], x)
        inter_vecs.append(acc)
    inter = span(n, inter_vecs)
    return SubspaceRelation(
        sum=total,
        intersection=inter,
        a_contains_b=inter.dim == b.dim,
        b_contains_a=inter.dim == a.dim,
    )
