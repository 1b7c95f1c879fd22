"""Exact rational elimination: reduced echelon forms, kernels and subspaces.

Every decision in the package (centers, derivation spaces, containment) goes
through these routines, so nothing is ever rounded.
"""

from fractions import Fraction

from lieprod.exactlin import Matrix, Subspace, nullspace, reduce, subspace_relate

m = Matrix.from_dense([[2, 4, 1], [1, 2, Fraction(1, 3)], [0, 0, 1]])
rref, rank = reduce(m)
print("rank", rank)
for row in rref.to_dense():
    print("  ", [str(x) for x in row])

ker = nullspace(m)
print("kernel dim", ker.dim, "basis", ker.vectors())
for v in ker.basis:
    assert m.apply(v) == {}

# two spanning sets of the same plane give identical canonical bases
a = Subspace.spanned_by(3, [[1, 1, 0], [0, 1, 1]])
b = Subspace.spanned_by(3, [[1, 2, 1], [2, 1, -1]])
print("same plane:", a == b, a.basis == b.basis)

rel = subspace_relate(a, Subspace.spanned_by(3, [[0, 0, 1]]))
print("sum dim", rel.sum.dim, "intersection dim", rel.intersection.dim)
