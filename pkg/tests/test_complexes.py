import numpy as np
import pytest

import tcohom.complexes as cx
from tcohom import (
    AbHom,
    ChainSpace,
    CochainSpace,
    FinAbGroup,
    abelian_heap,
    catalog_group,
    cohomology,
    essential_homology,
    group_cohomology2_normalized,
    pa_delta1,
    pa_delta2,
    pa_delta2_full,
    pa_delta3_full,
    trivial_shelf,
    tsd_boundary,
    tsd_cohomology,
    type0_boundary,
    verify_complex,
)
from tcohom.complexes import ComplexError, SizeLimitError


def test_z2_heap_values(z2_heap, Z2):
    assert cohomology(z2_heap, Z2, "pa", 1).cocycles.order == 4
    assert str(cohomology(z2_heap, Z2, "pa", 2).group) == "Z_2 x Z_2 x Z_2"
    assert str(cohomology(z2_heap, Z2, "heap", 2).group) == "Z_2"


@pytest.mark.parametrize("m", [3, 5, 7])
def test_sum_table_one_cocycles_are_constants(z3_sum, m):
    A = FinAbGroup([m])
    Z = cohomology(z3_sum, A, "pa", 1).cocycles
    assert Z.order == m
    assert all(len(set(v.tolist())) == 1 for v in Z.elements())


def test_tsd_z2_shelf(Z2, Z3):
    t = abelian_heap(2)
    assert str(tsd_cohomology(t, Z3, 1).group) == "Z_3"
    assert str(tsd_cohomology(t, Z3, 2).group) == "Z_3 x Z_3"
    assert str(tsd_cohomology(t, Z2, 2).group) == "Z_2 x Z_2 x Z_2 x Z_2"


def test_normalized_group_cohomology():
    assert str(group_cohomology2_normalized(catalog_group("Z2"), FinAbGroup([2])).group) == "Z_2"
    assert str(group_cohomology2_normalized(catalog_group("Z2^2"), FinAbGroup([2])).group) == "Z_2 x Z_2 x Z_2"
    assert str(group_cohomology2_normalized(catalog_group("Z3"), FinAbGroup([2])).group) == "0"


@pytest.mark.parametrize("t", [abelian_heap(2), abelian_heap(3), trivial_shelf(3)], ids=["Z2", "Z3", "triv3"])
def test_towers(t):
    A = FinAbGroup([0])
    d1 = pa_delta1(t, A)
    for k in range(3):
        assert verify_complex([d1, pa_delta2(t, A, k)])
    assert verify_complex([pa_delta2_full(t, A), pa_delta3_full(t, A)])
    for n in range(2, 5):
        assert verify_complex([type0_boundary(t, n), type0_boundary(t, n - 1)])
        assert verify_complex([tsd_boundary(t, n), tsd_boundary(t, n - 1)])


def test_verify_complex_rejects_bad_input():
    G = FinAbGroup([0, 0])
    swap = AbHom(G, G, np.array([[0, 1], [1, 0]]))
    assert not verify_complex([swap, swap])
    with pytest.raises(ValueError):
        verify_complex([swap, AbHom(FinAbGroup([0]), G, np.array([[1], [0]]))])


def test_essential_class(z2_heap):
    r = essential_homology(z2_heap, 0, 2)
    chain = cx.essential_chain(z2_heap, 0, 2, ChainSpace(2, 3).chain([(0, 1, 1)]))
    assert not r.is_trivial_class(chain)
    zero = cx.essential_chain(z2_heap, 0, 2, ChainSpace(2, 3).chain([(0, 0, 1)]))
    assert r.is_trivial_class(zero)


def test_cochain_space_helpers(Z2):
    sp = CochainSpace(2, 3, Z2)
    v = sp.chi((0, 1, 0), (1, 0, 1))
    assert sp.support(v) == {(0, 1, 0): (1,), (1, 0, 1): (1,)}
    assert int(sp.value(v, (1, 0, 1))[0]) == 1
    assert np.array_equal(sp.from_dict({(0, 1, 0): 1, (1, 0, 1): 3}), v)


def test_size_limit(monkeypatch):
    monkeypatch.setenv("TCOHOM_MAX_RANK", "10")
    with pytest.raises(SizeLimitError):
        pa_delta2_full(abelian_heap(3), FinAbGroup([2]))


def test_sign_error_is_caught_over_z2(monkeypatch, z2_heap, Z2):
    original = cx._pa2_terms

    def mutated(T, kind):
        terms = original(T, kind)
        if kind == 1:
            sign, f = terms[-1]
            terms = terms[:-1] + [(-sign, f)]
        return terms

    monkeypatch.setattr(cx, "_pa2_terms", mutated)
    with pytest.raises(ComplexError):
        cohomology(z2_heap, Z2, "pa", 2)
