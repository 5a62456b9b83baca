"""The extension Z3 -> Z9 -> Z3 seen through heap 2-cocycles.

A set-theoretic section of Z9 -> Z3 gives a cocycle on the Z3 heap; building
the extension from it recovers a cyclic group of order 9.
"""

# %%
from tcohom import (
    CochainSpace,
    ExtensionSpec,
    FinAbGroup,
    abelian_heap,
    build_extension,
    cohomology,
    heap_to_group,
    mod_square_ses,
    ses_section_cocycle,
)
from tcohom.transfers import element_orders

X, A = abelian_heap(3), FinAbGroup([3])
eta = ses_section_cocycle(mod_square_ses(3), X)
space = CochainSpace(3, 3, A)
print("nonzero values of eta:")
for tup, val in space.support(eta).items():
    print("  eta%s = %d" % (tup, val[0]))

# %% Its class
H = cohomology(X, A, "heap", 2)
print("H2_H(Z3, Z3) =", H.group, " class of eta:", H.class_of(eta).tolist())

# %% The extension heap and its group at base point 0
E = build_extension(ExtensionSpec(X, A, eta))
orders = element_orders(heap_to_group(E, 0))
print("element orders:", sorted(orders))
print("cyclic of order", len(orders), ":", max(orders) == len(orders))
