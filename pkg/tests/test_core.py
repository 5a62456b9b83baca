import numpy as np
import pytest

from tcohom import (
    AxiomError,
    GroupTable,
    TernaryTable,
    abelian_heap,
    affine_table,
    catalog_group,
    check_degeneracy,
    check_heap,
    check_para_associativity,
    check_tsd,
    enumerate_heaps,
    group_to_heap,
    heap_to_group,
    trivial_shelf,
)
from tcohom.core import brute_force_heaps, require_heap


def test_pa0_witness_is_least():
    r = check_para_associativity(affine_table(2, 1, 1, 0), 0)
    assert not r.holds
    assert r.witness == (0, 0, 0, 1, 0)


def test_degeneracy_witnesses_for_sum_table(z3_sum):
    left, right = check_degeneracy(z3_sum)
    assert left.witness == (1, 0)
    assert right.witness == (0, 1)
    assert all(check_para_associativity(z3_sum, k) for k in range(3))


def test_abelian_heaps_pass_everything():
    for n in range(1, 6):
        t = abelian_heap(n)
        assert check_heap(t)
        assert check_tsd(t)


def test_trivial_shelf_is_tsd_but_not_heap():
    t = trivial_shelf(3)
    assert check_tsd(t)
    assert not check_heap(t)


def test_require_heap_raises_with_report(z3_sum):
    with pytest.raises(AxiomError) as info:
        require_heap(z3_sum)
    assert info.value.report.axiom == "DEG_LEFT"


@pytest.mark.parametrize("n,count", list(zip(range(1, 9), [1, 1, 1, 4, 6, 80, 120, 2760])))
def test_heap_counts(n, count):
    assert len(enumerate_heaps(n)) == count


@pytest.mark.parametrize("n", [1, 2])
def test_enumeration_matches_brute_force(n):
    fast = {t.table.tobytes() for t in enumerate_heaps(n)}
    slow = {t.table.tobytes() for t in brute_force_heaps(n)}
    assert fast == slow


def test_group_heap_formula():
    g = catalog_group("S3")
    t = group_to_heap(g)
    for x in range(6):
        for y in range(6):
            for z in range(6):
                assert t(x, y, z) == g.mul(g.mul(x, g.inv(y)), z)


@pytest.mark.parametrize("name", ["Z4", "Z2^2", "S3", "Q8"])
def test_heap_to_group_recovers_group(name):
    g = catalog_group(name)
    h = heap_to_group(group_to_heap(g), g.identity)
    assert np.array_equal(h.product, g.product)


def test_relabel_preserves_axioms():
    t = group_to_heap(catalog_group("D4")).relabel([3, 1, 4, 0, 7, 2, 6, 5])
    assert check_heap(t)


def test_table_validation():
    with pytest.raises(ValueError):
        TernaryTable.from_array(np.zeros((2, 2, 3), dtype=int))
    with pytest.raises(ValueError):
        TernaryTable.from_array(np.full((2, 2, 2), 5))
    with pytest.raises(ValueError):
        GroupTable.from_array(np.array([[0, 1], [1, 1]]), 0)
