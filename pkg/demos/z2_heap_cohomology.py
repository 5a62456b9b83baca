"""Walk through the cohomology of the two-element heap.

Run with ``python3 demos/z2_heap_cohomology.py``.
"""

# %% The structure
import numpy as np

from tcohom import FinAbGroup, abelian_heap, check_heap, cohomology, pa_delta1, pa_delta2_full

t = abelian_heap(2)
print("table t(x,y,z) = x - y + z on Z2, flattened:", t.table.ravel().tolist())
print("heap axioms hold:", check_heap(t))

# %% Cochain differentials are integer matrices
A = FinAbGroup([2])
d1 = pa_delta1(t, A)
d2 = pa_delta2_full(t, A)
print("delta1:", d1.int_matrix.shape, " delta2 (types 1 and 2 stacked):", d2.int_matrix.shape)
print("delta2 o delta1 vanishes over Z:", not np.any(d2.int_matrix @ d1.int_matrix))

# %% First cohomology: every function is a cocycle here
h1 = cohomology(t, A, "pa", 1)
print("Z1 order:", h1.cocycles.order, " H1 =", h1.group)

# %% Second cohomology, with and without the degeneracy conditions
pa = cohomology(t, A, "pa", 2)
heap = cohomology(t, A, "heap", 2)
print("H2_PA =", pa.group, " |B2| =", pa.coboundaries.order)
print("H2_H  =", heap.group)
for r in heap.representatives:
    print("  generator supported on", heap.space.support(r))
