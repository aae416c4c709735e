"""Walk through the shipped example algebra.

Builds the algebra, finds the simples of infinite projective dimension,
strips the projective P(1) layer by layer and prints what is left at
each stage.

    python demos/01_example_walkthrough.py
"""

from findim import example_algebra, pd, projective, simple
from findim.decomp import decompose_module, is_isomorphic
from findim.homology import classify_simples
from findim.layers import F_iterates, G_iterates, layer_profile
from findim.modules import radical

algebra, modules = example_algebra()
print(algebra)

cls = classify_simples(algebra)
for v in range(algebra.n):
    print(f"pd S({v + 1}) = {pd(simple(algebra, v))}")
print("infinite simples:", [v + 1 for v in sorted(cls.infinite)], " alpha =", cls.alpha)

# The iterates of F = S o rad shrink P(1) down to zero.
p1 = projective(algebra, 0)
for i, sub in enumerate(F_iterates(p1, cls.infinite)):
    m = sub.as_rep()
    parts = [x.dims for x in decompose_module(m)] if not m.is_zero() else []
    print(f"F^{i} S(P(1)): dims {m.dims} -> summands {parts}")

qg2 = G_iterates(p1, cls.infinite)[2][1].quotient()
print("Q G^2 (P(1)) is S(1):", is_isomorphic(qg2, simple(algebra, 0)))

prof = layer_profile(p1, cls.infinite)
print(f"P(1): ll^inf={prof.ll_inf_top} l^inf={prof.l_inf_rad} l_inf={prof.l_inf_soc} r^inf={prof.r_inf}")

print("P(4) is rad P(3):", is_isomorphic(projective(algebra, 3), radical(projective(algebra, 2)).as_rep()))
