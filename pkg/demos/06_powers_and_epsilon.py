"""Iterated powers: closed forms against construction, and how fast the center takes over."""

from fractions import Fraction

from lieprod import catalog
from lieprod.genprod import AlgebraStats, corollary_bound, epsilon_min_n, power, power_stats
from lieprod.liecore import invariants

dl = catalog.dixmier_lister_8()
s = AlgebraStats.of(dl)
for n in (1, 2, 3):
    h, _ = power(dl, n)
    st = power_stats(s.dim, s.center_dim, s.derived_dim, s.generators, n)
    print(f"n={n}: built dim {h.dim} / Z {invariants(h).center.dim}; formula {st.dim} / {st.dimZ}")

for n in (1, 5, 9, 50):
    print(f"n={n}: codim Z / dim Z = {power_stats(8, 2, 4, 4, n).ratio}")

eps = Fraction(1, 10)
print("smallest n with ratio < 1/10:", epsilon_min_n(s, eps, "center"))
print("derived ratio: n =", epsilon_min_n(s, eps, "derived"), "bound", corollary_bound(s, 10))
