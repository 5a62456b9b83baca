import numpy as np
import pytest

from tcohom import (
    AbHom,
    CochainSpace,
    CocycleError,
    ExtensionSpec,
    FinAbGroup,
    SesSpec,
    abelian_heap,
    build_extension,
    catalog_group,
    check_heap,
    cohomology,
    extensions_isomorphic,
    group_cohomology2_normalized,
    group_to_heap,
    h_heap_to_tsd,
    heap_to_group,
    induced_h2_map,
    mod_square_ses,
    obstruction_3cocycle,
    pa_delta1,
    phi2_group_to_pa,
    restrict_heap_cocycle_to_group,
    ses_section_cocycle,
    tsd_cohomology,
    tsd_delta,
)
from tcohom.complexes import normalized_tuples
from tcohom.transfers import (
    check_heap_cocycle,
    element_orders,
    extension_isomorphism,
    induced_homology_map,
    les_exactness,
    psi_chain_map,
)


def _nontrivial_eta(Z2):
    return CochainSpace(2, 3, Z2).chi((0, 1, 0), (1, 0, 1))


def test_mod9_section_cocycle(z3_heap, Z3):
    eta = ses_section_cocycle(mod_square_ses(3), z3_heap)
    assert int(CochainSpace(3, 3, Z3).value(eta, (2, 0, 2))[0]) == 1
    check_heap_cocycle(z3_heap, Z3, eta)
    assert not cohomology(z3_heap, Z3, "heap", 2).is_trivial_class(eta)


def test_mod9_extension_is_cyclic(z3_heap, Z3):
    eta = ses_section_cocycle(mod_square_ses(3), z3_heap)
    ext = build_extension(ExtensionSpec(z3_heap, Z3, eta))
    assert check_heap(ext)
    orders = element_orders(heap_to_group(ext, 0))
    assert len(orders) == 9 and max(orders) == 9


def test_z2_extensions(z2_heap, Z2):
    eta = _nontrivial_eta(Z2)
    twisted = ExtensionSpec(z2_heap, Z2, eta)
    split = ExtensionSpec(z2_heap, Z2, np.zeros_like(eta))
    assert max(element_orders(heap_to_group(build_extension(twisted), 0))) == 4
    assert max(element_orders(heap_to_group(build_extension(split), 0))) == 2
    assert not extensions_isomorphic(twisted, split, "both")
    assert extensions_isomorphic(twisted, twisted, "both")


def test_coboundary_shift_is_isomorphic(z3_heap, Z3):
    eta = ses_section_cocycle(mod_square_ses(3), z3_heap)
    f = np.array([1, 2, 0])
    shifted = CochainSpace(3, 3, Z3).group.reduce(eta + pa_delta1(z3_heap, Z3).matrix @ f)
    s1, s2 = ExtensionSpec(z3_heap, Z3, eta), ExtensionSpec(z3_heap, Z3, shifted)
    assert extensions_isomorphic(s1, s2, "both", equivariant=True)


def test_fiber_bijection_may_twist_coefficients():
    # an automorphism of A on one fiber identifies extensions with distinct classes
    t, A = abelian_heap(2), FinAbGroup([2, 2])
    sp = CochainSpace(2, 3, A)
    eta1 = sp.from_dict({(0, 1, 0): (0, 1), (1, 0, 1): (0, 1)})
    eta2 = sp.from_dict({(0, 1, 0): (1, 0), (1, 0, 1): (1, 0)})
    s1, s2 = ExtensionSpec(t, A, eta1), ExtensionSpec(t, A, eta2)
    assert not extensions_isomorphic(s1, s2, "snf")
    assert extension_isomorphism(s1, s2) is not None
    assert extension_isomorphism(s1, s2, equivariant=True) is None


def test_non_cocycle_is_rejected(z2_heap, Z2):
    bad = CochainSpace(2, 3, Z2).chi((0, 0, 0))
    with pytest.raises(CocycleError):
        check_heap_cocycle(z2_heap, Z2, bad)
    with pytest.raises(CocycleError):
        ExtensionSpec(z2_heap, Z2, bad)


@pytest.mark.parametrize("name,d", [("Z2", 2), ("Z3", 3), ("Z4", 2), ("Z2^2", 2)])
def test_restriction_inverts_phi(name, d):
    g, A = catalog_group(name), FinAbGroup([d])
    h = group_to_heap(g)
    heap = cohomology(h, A, "heap", 2)
    for coords in group_cohomology2_normalized(g, A).cocycles.elements():
        theta = np.zeros(g.size**2, dtype=np.int64)
        full = CochainSpace(g.size, 2, A)
        theta[normalized_tuples(g, 2)] = coords
        eta = phi2_group_to_pa(g, A, theta)
        assert heap.cocycles.contains(eta)
        back = restrict_heap_cocycle_to_group(h, A, eta, g.identity)
        assert np.array_equal(full.group.reduce(back), full.group.reduce(theta))


def test_h_injects(Z2, Z3):
    for t in (abelian_heap(2), abelian_heap(3)):
        for A in (Z2, Z3):
            assert induced_h2_map(t, A).injective


def test_h_keeps_the_function(z2_heap, Z2):
    eta = _nontrivial_eta(Z2)
    assert np.array_equal(h_heap_to_tsd(z2_heap, Z2, eta), eta)
    assert not tsd_cohomology(z2_heap, Z2, 2).is_trivial_class(eta)


@pytest.mark.parametrize("name,top", [("Z2", 4), ("Z3", 2)])
def test_psi_and_exactness(name, top):
    # the acceptance suite covers Z3 up to degree 4
    g = catalog_group(name)
    h = group_to_heap(g)
    for n in range(1, top + 1):
        psi_chain_map(g, h, g.identity, n)
    assert induced_homology_map(g, h, g.identity, 2).injective
    for n in range(2, min(top, 3) + 1):
        assert all(les_exactness(h, g.identity, n).values())


def test_obstruction_is_a_cocycle(z2_heap):
    H, E, G = FinAbGroup([2]), FinAbGroup([4]), FinAbGroup([2])
    ses = SesSpec(H, E, G, AbHom(H, E, [[2]]), AbHom(E, G, [[1]]), [[0], [1]])
    d3 = tsd_delta(z2_heap, H, 3)
    for phi in tsd_cohomology(z2_heap, G, 2).cocycles.elements():
        assert not np.any(d3(obstruction_3cocycle(z2_heap, ses, phi)))


def test_ses_validation():
    H, E = FinAbGroup([2]), FinAbGroup([4])
    with pytest.raises(ValueError):
        SesSpec(H, E, H, AbHom(H, E, [[1]]), AbHom(E, H, [[1]]), [[0], [1]])
