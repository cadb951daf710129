import pytest

from catdeform.algebra import QQ, ExactMatrix, rank_kernel
from catdeform.category import cyclic, klein, symmetric
from catdeform.oracle import bar_differential, group_cohomology

from .conftest import F2, F3


def dims(g, field, n=3):
    return [e["dim_H"] for e in group_cohomology(g, field, n)]


def test_z2_degree_one():
    d = bar_differential(cyclic(2), F2, 1)
    assert (d.rows, d.cols) == (4, 2)
    r, ker = rank_kernel(d)
    assert len(ker) == 1


def test_trivial_group():
    for n in range(1, 5):
        d = bar_differential(cyclic(1), QQ, n)
        assert (d.rows, d.cols) == (1, 1)
        # alternating sum of n + 2 ones: 1 for odd n, 0 for even n
        assert d.to_dense() == [[QQ.one() if n % 2 else QQ.zero()]]


@pytest.mark.parametrize("g", [cyclic(2), cyclic(3), klein(), symmetric(3)], ids=["z2", "z3", "klein", "s3"])
@pytest.mark.parametrize("field", [QQ, F2, F3], ids=["Q", "F2", "F3"])
def test_d_squared(g, field):
    top = 3 if g.order > 4 else 4
    for n in range(1, top):
        prod = bar_differential(g, field, n + 1) @ bar_differential(g, field, n)
        assert prod.is_zero()


def test_classical_values():
    assert dims(cyclic(2), F2) == [1, 1, 1]
    assert dims(cyclic(2), QQ) == [0, 0, 0]
    assert dims(klein(), F2) == [2, 3, 4]
    assert dims(cyclic(3), F3) == [1, 1, 1]
    assert dims(cyclic(3), F2) == [0, 0, 0]
    assert dims(symmetric(3), F2) == [1, 1, 1]
