"""S-algebra certificates and the block structure of derivations of a product.

Write p = g1 + g2 + g3 and D_ij for the block of D mapping g_j into g_i.
prop3_check verifies the relations every product satisfies; relations_check
adds the ones that need both factors certified.
"""

from lieprod import catalog
from lieprod.derivations import derivation_space
from lieprod.genprod import product_by_generators
from lieprod.salgebra import ProductContext, prop3_check, relations_check, s_algebra_certificate

for name in ("dixmier_lister_8", "luks_16", "heisenberg_3"):
    cert = s_algebra_certificate(catalog.get(name).algebra)
    print(f"{name}: {cert.verdict} via {cert.route}")
    for x, w in sorted(cert.per_generator.items()):
        print(f"    X{x}: {w.to_json()}")

dl = catalog.dixmier_lister_8()
p, dec = product_by_generators(dl, dl)
der = derivation_space(p)
print("prop3 on DL x DL:", prop3_check(p, dec, der).passed)
cert = s_algebra_certificate(dl)
rep = relations_check(p, dec, (cert, cert), der)
print("relations on DL x DL:", rep.passed, "power bound exponent", rep.power_bound_exponent)
print("observed:", rep.observations)

# h3 gets no certificate, and rightly so: some derivation of h3 x h3 moves X1 to X1'.
h3 = catalog.heisenberg_3()
q, qdec = product_by_generators(h3, h3)
ctx = ProductContext(q, qdec)
for d in derivation_space(q).basis:
    image = ctx.split(d)[(2, 1)].apply({0: 1})
    if not ctx.C1[2].contains(image):
        print("h3 x h3: D(X1) block in g2 =", {f"X{k + 1}": str(v) for k, v in image.items()})
        break
