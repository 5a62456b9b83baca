"""Ternary self-distributive cohomology, and heap cocycles inside it."""

# %%
from tcohom import FinAbGroup, abelian_heap, induced_h2_map, trivial_shelf, tsd_cohomology

X = abelian_heap(2)
for m in (2, 3):
    A = FinAbGroup([m])
    print(f"Z2 shelf, coefficients Z_{m}:  H1 = {tsd_cohomology(X, A, 1).group},  H2 = {tsd_cohomology(X, A, 2).group}")

# %% Heap classes survive as TSD classes
for n in (2, 3):
    for m in (2, 3, 4):
        f = induced_h2_map(abelian_heap(n), FinAbGroup([m]))
        print(f"Z{n} heap, Z_{m}: H2_H -> H2_SD injective = {f.injective}")

# %% The trivial shelf t(x,y,z) = x
for n in (2, 3):
    h1 = tsd_cohomology(trivial_shelf(n), FinAbGroup([2]), 1)
    im = tsd_cohomology(trivial_shelf(n), FinAbGroup([2]), 2).coboundaries
    print(f"trivial shelf of size {n}: H1 = {h1.group} (the constants), |im delta1| = {im.order}")
