import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catdeform.algebra import (
    QQ,
    CyclotomicField,
    ExactMatrix,
    FieldError,
    PolyRing,
    PrimeField,
    Scalar,
    TruncatedPoly,
    cyclotomic_reduce,
    field_from_name,
    invert_dense,
    parse_truncated,
    poly_arith,
    rank,
    rank_kernel,
    scalar_arith,
    solve_linear,
)

F2 = PrimeField(2)


def test_rational_sum():
    a, b = Scalar.parse(QQ, "1/2"), Scalar.parse(QQ, "1/3")
    assert scalar_arith(a, b, "add") == Scalar(QQ, Fraction(5, 6))


def test_char_two():
    one = Scalar(F2, 1)
    assert scalar_arith(one, one, "add") == 0


def test_zeta4_squared():
    K = CyclotomicField(4)
    z = Scalar(K, K.zeta(1))
    assert (z * z).value == (-1, 0)


def test_division_by_zero_and_mismatch():
    with pytest.raises(ZeroDivisionError):
        scalar_arith(Scalar(QQ, Fraction(1)), Scalar(QQ, Fraction(0)), "div")
    with pytest.raises(FieldError):
        scalar_arith(Scalar(QQ, Fraction(1)), Scalar(F2, 1), "add")


def test_rational_lowest_terms():
    assert QQ.parse("-6/4") == Fraction(-3, 2)
    assert QQ.format(QQ.div(1, 3)) == "1/3"


@pytest.mark.parametrize("coeffs,n,want", [
    ((0, 0, 0, 0, 1), 5, (-1, -1, -1, -1)),
    ((0, 0, 1), 4, (-1, 0)),
    ((2, 3, -1), 1, (4,)),
])
def test_cyclotomic_reduce(coeffs, n, want):
    assert tuple(cyclotomic_reduce(coeffs, n)) == want


def test_field_names():
    assert field_from_name("Q") is QQ
    assert field_from_name("F3") == PrimeField(3)
    assert field_from_name("Q(zeta5)") == CyclotomicField(5)
    with pytest.raises(FieldError):
        PrimeField(4)


def test_rank_kernel_examples():
    r, ker = rank_kernel(ExactMatrix.from_dense(QQ, [[1, 2], [2, 4]]))
    assert r == 1 and ker == [[-2, 1]]
    r, ker = rank_kernel(ExactMatrix.from_dense(F2, [[1, 1], [1, 1]]))
    assert r == 1 and ker == [[1, 1]]
    r, ker = rank_kernel(ExactMatrix.identity(QQ, 3))
    assert r == 3 and ker == []


def test_solve_linear_examples():
    I = ExactMatrix.identity(QQ, 3)
    b = [Fraction(1), Fraction(-2), Fraction(7, 3)]
    assert solve_linear(I, b) == b
    M = ExactMatrix.from_dense(QQ, [[1, 2], [2, 4]])
    assert solve_linear(M, [1, 2]) == [1, 0]
    assert solve_linear(M, [1, 1]) is None
    with pytest.raises(ValueError):
        solve_linear(M, [1, 2, 3])


def test_truncated_examples():
    one_e = parse_truncated(QQ, "1 + 1*e", 2)
    one_me = parse_truncated(QQ, "1 + -1*e", 2)
    assert poly_arith(one_e, one_me, "mul") == TruncatedPoly.constant(QQ, Fraction(1), 2)
    inv = poly_arith(parse_truncated(QQ, "1 + 1*e", 3), None, "invert")
    assert inv.coeffs == (1, -1, 1)
    e = TruncatedPoly.epsilon(QQ, 2)
    assert (e * e).is_zero()
    with pytest.raises(ZeroDivisionError):
        e.inverse()


# -- properties --------------------------------------------------------------

fields = st.sampled_from([QQ, PrimeField(2), PrimeField(3), PrimeField(7), CyclotomicField(5), CyclotomicField(3)])


@settings(max_examples=60, deadline=None)
@given(fields, st.integers(0, 10**6))
def test_field_axioms(F, seed):
    rng = random.Random(seed)
    a, b, c = (F.random(rng) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero()
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one()
    assert F.parse(F.format(a)) == a


@st.composite
def matrices(draw):
    F = draw(st.sampled_from([QQ, PrimeField(2), PrimeField(5)]))
    rows = draw(st.integers(1, 6))
    cols = draw(st.integers(1, 6))
    rng = random.Random(draw(st.integers(0, 10**6)))
    sparse = draw(st.booleans())
    data = [[F.random(rng) if not sparse or rng.random() < 0.3 else F.zero() for _ in range(cols)] for _ in range(rows)]
    return F, ExactMatrix.from_dense(F, data)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(FM):
    F, M = FM
    r, ker = rank_kernel(M)
    assert r + len(ker) == M.cols
    assert r == rank(M.transpose())
    for v in ker:
        assert all(F.is_zero(x) for x in M.matvec(v))


@settings(max_examples=80, deadline=None)
@given(matrices(), st.integers(0, 10**6))
def test_solve_consistent_systems(FM, seed):
    F, M = FM
    rng = random.Random(seed)
    x = [F.random(rng) for _ in range(M.cols)]
    b = M.matvec(x)
    y = solve_linear(M, b)
    assert y is not None and M.matvec(y) == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([QQ, PrimeField(3)]), st.integers(1, 4), st.integers(0, 10**6))
def test_invert_dense(F, n, seed):
    rng = random.Random(seed)
    while True:
        A = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        if rank(ExactMatrix.from_dense(F, A)) == n:
            break
    B = invert_dense(F, A)
    prod = ExactMatrix.from_dense(F, A) @ ExactMatrix.from_dense(F, B)
    assert prod == ExactMatrix.identity(F, n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10**6))
def test_truncated_ring_laws(N, seed):
    rng = random.Random(seed)
    R = PolyRing(QQ, N)
    a, b = (TruncatedPoly(QQ, [QQ.random(rng) for _ in range(N)]) for _ in range(2))
    assert R.mul(a, b) == R.mul(b, a)
    if not QQ.is_zero(a.coeffs[0]):
        assert a * a.inverse() == R.one()
