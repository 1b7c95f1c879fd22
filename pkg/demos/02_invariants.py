"""Lower central series, center, generators and transporter of the catalog algebras."""

from lieprod import catalog
from lieprod.liecore import invariants, validate


def show(name):
    g = catalog.get(name).algebra
    inv = invariants(g)
    print(name)
    print("  Jacobi violations:", len(validate(g)))
    print("  series dims:", inv.series_dims, "nilindex", inv.nilindex)
    print("  center:", ["X%d" % (p + 1) for p in inv.center.pivots])
    print("  generators:", ["X%d" % i for i in inv.generator_indices])
    print("  transporter dim", inv.transporter.dim, "inside C1:", inv.derived.contains_subspace(inv.transporter))


for name in ("heisenberg_3", "dixmier_lister_8", "luks_16"):
    show(name)

# The Luks algebra has a generator, X5, whose brackets all land in the center.
lk = catalog.luks_16()
inv = invariants(lk)
print("X5 in transporter:", inv.transporter.contains({4: 1}), " X5 in C1:", inv.derived.contains({4: 1}))
