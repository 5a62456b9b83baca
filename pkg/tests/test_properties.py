"""Randomized law checks."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tcohom import (
    CochainSpace,
    ExtensionSpec,
    FinAbGroup,
    abelian_heap,
    catalog_group,
    cohomology,
    enumerate_heaps,
    extensions_isomorphic,
    group_to_heap,
    pa_delta1,
)
from tcohom.linalg import matmul, snf

small_ints = st.integers(-30, 30)


@settings(max_examples=150, deadline=None)
@given(arrays(np.int64, st.tuples(st.integers(0, 5), st.integers(0, 5)), elements=small_ints))
def test_snf_round_trip(M):
    s = snf(M, u=True, uinv=True, v=True, vinv=True)
    D = np.zeros(M.shape, dtype=object)
    for i, d in enumerate(s.diag):
        D[i, i] = d
    assert np.array_equal(matmul(matmul(s.U, M), s.V), D)
    assert np.array_equal(matmul(s.Uinv, matmul(D, s.Vinv)), M)
    assert all(b % a == 0 for a, b in zip(s.diag, s.diag[1:]))
    assert all(d > 0 for d in s.diag)


@settings(max_examples=12, deadline=None)
@given(st.permutations(range(4)), st.sampled_from(range(4)))
def test_relabeling_keeps_cohomology(perm, which):
    t = enumerate_heaps(4)[which]
    A = FinAbGroup([2])
    u = t.relabel(list(perm))
    for theory in ("pa", "heap"):
        assert cohomology(t, A, theory, 2).group.invariant_factors == cohomology(u, A, theory, 2).group.invariant_factors


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["Z4", "Z2^2", "S3", "Z6", "D4", "Q8"]), st.data())
def test_heap_cancellation(name, data):
    t = group_to_heap(catalog_group(name))
    n = t.size
    x, y, z = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert t(t(x, y, z), z, y) == x
    assert t(x, x, y) == y == t(y, x, x)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**8 - 1), arrays(np.int64, 2, elements=st.integers(0, 1)))
def test_coboundary_shift_keeps_extension_class(index, f):
    t, A = abelian_heap(2), FinAbGroup([2])
    Z = cohomology(t, A, "heap", 2).cocycles
    members = Z.elements()
    eta = members[index % len(members)]
    space = CochainSpace(2, 3, A)
    shifted = space.group.reduce(eta + pa_delta1(t, A).matrix @ f)
    assert extensions_isomorphic(ExtensionSpec(t, A, eta), ExtensionSpec(t, A, shifted), "both", equivariant=True)

