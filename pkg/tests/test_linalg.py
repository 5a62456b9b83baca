import itertools

import numpy as np
import pytest

from tcohom import AbHom, FinAbGroup, Subgroup, hom_image, hom_kernel, quotient_invariants
from tcohom.linalg import Quotient, integer_kernel, matmul, snf


def test_snf_known_matrix():
    M = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    s = snf(M, u=True, v=True)
    assert s.diag == [2, 6, 12]
    D = matmul(matmul(s.U, M), s.V)
    assert np.array_equal(D, np.diag([2, 6, 12]))
    assert abs(round(np.linalg.det(s.U.astype(float)))) == 1


def test_snf_zero_and_empty():
    assert snf(np.zeros((3, 2), dtype=int)).diag == []
    assert snf(np.zeros((0, 4), dtype=int)).rank == 0


def test_snf_large_entries_stay_exact():
    M = np.array([[2**40 + 1, 2**41], [3, 2**45 - 7]], dtype=object)
    s = snf(M, u=True, v=True)
    D = matmul(matmul(s.U, M), s.V)
    det = (2**40 + 1) * (2**45 - 7) - 3 * 2**41
    assert D[0, 0] * D[1, 1] in (det, -det)


def test_integer_kernel():
    M = np.array([[1, 2, 3], [2, 4, 6]])
    K = integer_kernel(M)
    assert K.shape[1] == 2
    assert not matmul(M, K).any()


def test_group_rendering():
    assert str(FinAbGroup([2, 2])) == "Z_2 x Z_2"
    assert str(FinAbGroup([6, 4])) == "Z_2 x Z_12"
    assert str(FinAbGroup([1])) == "0"
    assert str(FinAbGroup([0, 3])) == "Z_3 x Z"
    assert FinAbGroup([6]).is_isomorphic(FinAbGroup([2, 3]))


def test_kernel_image_by_enumeration():
    G, H = FinAbGroup([4, 2]), FinAbGroup([4])
    f = AbHom(G, H, np.array([[1, 2]]))
    ker = hom_kernel(f)
    brute = [x for x in G.elements() if not H.reduce(f.matrix @ np.array(x)).any()]
    assert ker.order == len(brute)
    assert all(ker.contains(np.array(x)) for x in brute)
    assert hom_image(f).order == G.order // ker.order


def test_quotient_z4_by_2z4():
    G = FinAbGroup([4])
    q = quotient_invariants(Subgroup.whole(G), Subgroup(G, np.array([[2]])))
    assert q.invariant_factors == (2,)


def test_quotient_of_free_lattice():
    Z = FinAbGroup.free(2)
    num = Subgroup.whole(Z)
    den = Subgroup(Z, np.array([[2, 0], [0, 3]]))
    Q = Quotient(num, den)
    assert Q.group.invariant_factors == (6,)
    assert Q.is_zero_class(np.array([4, 9]))
    assert not Q.is_zero_class(np.array([1, 0]))


@pytest.mark.parametrize("moduli", [[2, 2], [3], [4, 2]])
def test_subgroup_elements_match_enumeration(moduli):
    G = FinAbGroup(moduli)
    gens = np.array([[1] * len(moduli)]).T
    S = Subgroup(G, gens)
    closure = set()
    for c in range(max(moduli)):
        closure.add(tuple(G.reduce(c * gens[:, 0]).tolist()))
    assert {tuple(e.tolist()) for e in S.elements()} == closure
    assert all(S.contains(np.array(x)) == (tuple(x) in closure) for x in itertools.product(*map(range, moduli)))
