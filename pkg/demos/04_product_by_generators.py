"""The product by generators and its canonical isomorphisms.

g1 x g2 is the central extension of g1 + g2 in which each pair of generators
(X_i of g1, X'_j of g2) brackets to a fresh central vector.
"""

from lieprod import catalog
from lieprod.genprod import (
    associativity_map,
    build_generator_cocycle,
    commutativity_map,
    direct_sum,
    product_by_generators,
    two_cocycle_check,
    verify_canonical_isomorphism,
)
from lieprod.liecore import invariants

h3, dl, lk = catalog.heisenberg_3(), catalog.dixmier_lister_8(), catalog.luks_16()

phi = build_generator_cocycle(h3, h3)
print("cochain on h3 + h3:", {k: {t: str(c) for t, c in v.items()} for k, v in phi.values.items()})
print("cocycle violations:", two_cocycle_check(direct_sum(h3, h3), phi))

for a, b, label in ((h3, h3, "h3 x h3"), (dl, dl, "DL x DL"), (lk, lk, "L x L")):
    p, dec = product_by_generators(a, b)
    inv = invariants(p)
    print(f"{label}: dim {p.dim}, center {inv.center.dim}, nilindex {inv.nilindex}, "
          f"g3 = X{dec.g3_range[0]}..X{dec.g3_range[1]}")

a, b, m = commutativity_map(h3, dl)
print("h3 x DL ~ DL x h3:", verify_canonical_isomorphism(a, b, m))
a, b, m = associativity_map([h3, h3, h3])
print("(h3 x h3) x h3 ~ h3 x (h3 x h3):", verify_canonical_isomorphism(a, b, m), "dim", a.dim)
