"""Multiply Ext classes and watch the Yoneda algebra being generated.

E = Ext*(A/J, A/J) is a graded algebra under the Yoneda product.  On a
directed A3 quiver with its length-2 path killed, the two degree-1 classes
compose to the unique degree-2 class, and E is generated in degree one.  On
the two-vertex algebra behind @paper nothing composes: a fresh generator is
needed in every degree, so E is not finitely generated.
"""

import quiverhom as qh

a3 = qh.fixture_algebra("a3")
ids = a3.quiver.vertex_ids

print("@a3: dims of E_n:", qh.dims_of_e(a3, 6))
f = qh.ext_basis(a3, 1)[0]
g = next(e for e in qh.ext_basis(a3, 1) if e.source != f.source)
print(f"degree-1 classes start at simples {ids[f.source]} and {ids[g.source]}")

fg = qh.yoneda_product(g, f) if g.source == f.target_vertex() else qh.yoneda_product(f, g)
print(f"their composition lands in degree {fg.degree} and is nonzero: {not fg.is_zero}")

profile = qh.generation_profile(a3, 6)
for n, dim, prods, new in profile.rows:
    print(f"  degree {n}: dim {dim}, spanned by products {prods}, new generators {new}")
print(f"generators stop appearing after degree s = {profile.s}")

cert = qh.gldim_certificate(a3, 6)
print(
    f"certificate: r = {cert.r}, s = {cert.s}, m = {cert.m} "
    f"so E_n = 0 for n > {cert.bound}; verdict: {cert.verdict}"
)

print("\n@paper:", end=" ")
paper = qh.fixture_algebra("paper")
report = qh.yoneda_quiver(paper, 6)
out = report.as_json()
arrows = ", ".join(
    f"{row['count']} x ({row['source']} -> {row['target']}, degree {row['degree']})"
    for row in out["new_generators"]
)
print(f"new Yoneda-quiver arrows {arrows}")
all_zero, checked, _ = qh.products_vanish(paper, 6)
print(f"all {checked} products of positive-degree classes vanish: {all_zero}")
print("so E needs a generator in every degree and gl.dim cannot be finite")
