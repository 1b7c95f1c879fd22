"""Derivation algebras and characteristic nilpotency, decided two ways.

Route A iterates g -> Der(g)(g) until it stops shrinking; route B computes the
lower central series of Der(g) under commutators. cnla_check raises if they
disagree.
"""

from lieprod import catalog
from lieprod.derivations import cnla_check, derivation_space
from lieprod.genprod import product_by_generators

for name in ("heisenberg_3", "dixmier_lister_8", "luks_16"):
    rep = cnla_check(catalog.get(name).algebra)
    print(f"{name}: dim Der {rep.der_dim}, CNLA {rep.is_cnla}")
    print(f"  orbit dims {rep.orbit_dims}")
    print(f"  Der lower central dims {rep.der_lcs_dims}")

# The scaling map X1, X2, X3 -> X1, X2, 2 X3 keeps h3 from being CNLA.
der = derivation_space(catalog.heisenberg_3())
print("h3 derivation basis size", der.dim)

dl = catalog.dixmier_lister_8()
p, _ = product_by_generators(dl, dl)
rep = cnla_check(p)
print(f"DL x DL: dim Der {rep.der_dim}, CNLA {rep.is_cnla}, orbit {rep.orbit_dims}")
