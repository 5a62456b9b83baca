import pytest

from tcohom import FinAbGroup, abelian_heap, affine_table


@pytest.fixture
def z2_heap():
    return abelian_heap(2)


@pytest.fixture
def z3_heap():
    return abelian_heap(3)


@pytest.fixture
def z3_sum():
    """x+y+z on Z3: para-associative but not a heap."""
    return affine_table(3, 1, 1, 1)


@pytest.fixture
def Z2():
    return FinAbGroup([2])


@pytest.fixture
def Z3():
    return FinAbGroup([3])
