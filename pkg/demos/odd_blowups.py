# %% [markdown]
# Blow-ups of C5 and the smallest 2-density for m = 2k-1, r = 3
#
# A graph with no independent set of size 3 has a triangle-free complement.
# Blowing up C5 (cliques in the parts, complete joins between neighbouring
# parts) keeps the complement a blow-up of C5, so alpha stays at 2.
# Here we compare the odd-optimal blow-ups with the exhaustive minimum.

# %%
from fractions import Fraction

from turan2d.constructions import ConstructionSpec, build, odd_bound, odd_optimal_parameter
from turan2d.density import m2
from turan2d.enumeration import min_m2
from turan2d.invariants import independence_number

# %%
print(" k  a  n   e   m2      bound")
for k in range(4, 13):
    g = build(ConstructionSpec("odd-optimal", (k,)))
    print(f"{k:2d} {odd_optimal_parameter(k):2d} {g.n:2d} {g.e:3d}  {str(m2(g)):7s} {odd_bound(k)}")

# %% [markdown]
# The exhaustive search agrees with the blow-up at k = 4 and k = 5.

# %%
for m in (7, 9):
    out = min_m2(m, 3)
    k = (m + 1) // 2
    print(f"M({m},3) = {out.value}   blow-up gives {odd_bound(k)}   witnesses: {out.witnesses_total}")

# %% [markdown]
# Even m is simpler: two disjoint cliques K_k already reach (k+1)/2.

# %%
for k in range(3, 6):
    g = build(ConstructionSpec("disjoint-cliques", (k, k)))
    assert independence_number(g) == 2
    print(f"2K_{k}: m2 = {m2(g)}, M({2 * k},3) = {min_m2(2 * k, 3).value}, (k+1)/2 = {Fraction(k + 1, 2)}")
