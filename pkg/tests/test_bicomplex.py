import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catdeform.algebra import QQ, ExactMatrix, rank
from catdeform.bicomplex import (
    BiCochain,
    BiComplex,
    BicomplexError,
    bicochain_from_json,
    coprod,
    pushback,
    solve_D1,
    solve_D2,
    split_total,
    tensor,
    total_cohomology,
    total_differential,
    verify_bicomplex,
    verify_triple,
    zero,
)
from catdeform.category import BitensorDatum, cyclic, gen_function_bitensor, gen_grouplike_bitensor
from catdeform.coherence import TreeEngine
from catdeform.complex import TensorComplex
from catdeform.oracle import bar_differential

from .conftest import F2, F3

_cache = {}


def bic(kind, n, field):
    key = (kind, n, str(field))
    if key not in _cache:
        make = gen_grouplike_bitensor if kind == "grouplike" else gen_function_bitensor
        _cache[key] = BiComplex(make(cyclic(n), field))
    return _cache[key]


def from_function(cx, i, j, fn):
    S = cx.space(i, j)
    return BiCochain(S, [cx.field.parse(str(fn(*A))) for A, c, q, p in S.labels], cx.field)


def rand(cx, i, j, rng):
    return BiCochain(cx.space(i, j), [cx.field.random(rng) for _ in range(cx.space(i, j).dim)], cx.field)


def scalar_identity(field, n, s):
    return ExactMatrix.from_dense(field, [[s if r == c else field.zero() for c in range(n)] for r in range(n)])


# -- spaces ------------------------------------------------------------------

def test_space_dims():
    cx = bic("grouplike", 2, QQ)
    for j in (1, 2, 3):
        assert cx.space(3, j).dim == 8
    assert cx.space(3, 0).dim == 8
    triv = bic("grouplike", 1, QQ)
    for i, j in [(1, 1), (2, 3), (3, 0), (0, 3), (4, 1)]:
        assert triv.space(i, j).dim == 1
    fn = bic("function", 2, QQ)
    assert [fn.space(2, j).dim for j in (1, 2, 3)] == [2, 4, 8]


def test_bad_bidegrees():
    cx = bic("grouplike", 2, QQ)
    for i, j in [(0, 0), (-1, 2)]:
        with pytest.raises(BicomplexError):
            cx.space(i, j)
    g = gen_grouplike_bitensor(cyclic(2), QQ)
    plain = BiComplex(BitensorDatum(g.base, g.delta))
    with pytest.raises(BicomplexError):
        plain.space(3, 0)
    with pytest.raises(BicomplexError):
        solve_D1(plain)


# -- differentials -----------------------------------------------------------

def test_zero_maps_to_zero():
    cx = bic("function", 2, QQ)
    assert tensor(cx, zero(cx, 2, 2)).is_zero()
    assert coprod(cx, zero(cx, 2, 2)).is_zero()


def test_grouplike_two_cocycle():
    cx = bic("grouplike", 2, F2)
    s = from_function(cx, 2, 1, lambda g, h: g * h)
    assert tensor(cx, s).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_grouplike_reduces_to_tensor_complex(n):
    cx = bic("grouplike", n, QQ)
    tc = TensorComplex(TreeEngine(cx.bd.base))
    for i in (1, 2, 3):
        assert cx.diff_tensor(i, 1) == tc.delta(i)
        assert cx.diff_tensor(i, 1) == bar_differential(cyclic(n), QQ, i)


def alternating(field, j):
    return field.one() if j % 2 else field.zero()


def test_trivial_group_coprod_pattern():
    cx = bic("grouplike", 1, QQ)
    for j in (1, 2, 3, 4):
        assert cx.diff_coprod(1, j).to_dense() == [[alternating(QQ, j)]]


@pytest.mark.parametrize("i,j", [(1, 1), (2, 1), (2, 2), (3, 1), (1, 3)])
def test_grouplike_coprod_tuplewise(i, j):
    cx = bic("grouplike", 2, QQ)
    dim = cx.space(i, j).dim
    assert cx.diff_coprod(i, j) == scalar_identity(QQ, dim, alternating(QQ, j))


@pytest.mark.parametrize("kind,n,field,box", [
    ("grouplike", 2, F2, (4, 4)),
    ("function", 2, QQ, (3, 3)),
    ("grouplike", 1, QQ, (4, 4)),
    ("function", 3, F3, (3, 2)),
])
def test_identities_hold(kind, n, field, box):
    rep = verify_bicomplex(bic(kind, n, field), *box, max_total=6)
    assert rep["ok"], [c for c in rep["checks"] if not c["holds"]]
    names = {c["identity"] for c in rep["checks"]}
    assert names == {"tensor_squared", "coprod_squared", "commute", "anticommute_twisted"}


# -- total complex and triples -----------------------------------------------

@pytest.mark.parametrize("kind,n,field", [
    ("grouplike", 1, QQ), ("grouplike", 2, F2), ("function", 2, QQ), ("grouplike", 3, F3),
])
def test_total_cohomology(kind, n, field):
    cx = bic(kind, n, field)
    rep = total_cohomology(cx, 3)
    for e in rep:
        assert e["D_squared_zero"]
        assert e["rank_D"] + e["dim_ker"] == e["dim_X"]
        assert e["dim_H"] >= 0
    reps = rep[2]["representatives"]
    assert len(reps) == rep[2]["dim_H"]
    for a, k, b in reps:
        assert verify_triple(cx, a, k, b)["ok"]


def test_zero_triple_and_single_component():
    cx = bic("grouplike", 2, QQ)
    z = (zero(cx, 3, 1), zero(cx, 2, 2), zero(cx, 1, 3))
    assert verify_triple(cx, *z)["ok"]
    # a nonzero a alone needs both tensor(a) = 0 and coprod(a) = 0
    a = from_function(cx, 3, 1, lambda g, h, k: 1 if (g, h, k) == (1, 1, 1) else 0)
    rep = verify_triple(cx, a, z[1], z[2])
    held = {e["equation"]: e["holds"] for e in rep["equations"]}
    assert not rep["ok"]
    assert held["tensor(a) = 0"] is False and held["tensor(k) - coprod(a) = 0"] is False
    witness = rep["equations"][0]["witness"]
    assert witness and len(witness["tuple"]) == 4


def test_wrong_bidegrees_rejected():
    cx = bic("grouplike", 2, QQ)
    with pytest.raises(BicomplexError):
        verify_triple(cx, zero(cx, 2, 2), zero(cx, 2, 2), zero(cx, 1, 3))


@pytest.mark.parametrize("kind,n,field", [("grouplike", 2, QQ), ("function", 2, F2), ("grouplike", 3, F3)])
@settings(max_examples=5, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_triples_modulo_coboundaries(kind, n, field, seed):
    cx = bic(kind, n, field)
    rng = random.Random(seed)
    D2 = total_differential(cx, 2)
    x = [field.random(rng) for _ in range(D2.cols)]
    shift = split_total(cx, 3, D2.matvec(x))
    assert verify_triple(cx, *shift)["ok"]
    for rep in total_cohomology(cx, 3)[2]["representatives"]:
        moved = [p + q for p, q in zip(rep, shift)]
        assert verify_triple(cx, *moved)["ok"]


def test_random_non_cocycle_fails():
    cx = bic("function", 2, QQ)
    rng = random.Random(1)
    assert not verify_triple(cx, rand(cx, 3, 1, rng), rand(cx, 2, 2, rng), rand(cx, 1, 3, rng))["ok"]


# -- D1 / D2 and pushback ----------------------------------------------------

def test_d1_grouplike():
    assert solve_D1(bic("grouplike", 2, F2))["dim"] == 3
    # dim Z^3 = |G|^3 minus the rank of the next bar differential
    g = cyclic(2)
    rep = solve_D1(bic("grouplike", 2, QQ))
    assert rep["dim"] == 8 - rank(bar_differential(g, QQ, 3))
    triv = solve_D1(bic("grouplike", 1, QQ))
    assert triv["dim"] == 1 - rank(bar_differential(cyclic(1), QQ, 3))


@pytest.mark.parametrize("kind,n,field", [("grouplike", 2, F2), ("grouplike", 3, F3), ("function", 2, QQ)])
def test_solutions_and_pushback(kind, n, field):
    cx = bic(kind, n, field)
    for rep in (solve_D1(cx), solve_D2(cx)):
        M = cx.diff_tensor(3, 0) if rep["equation"] == "D1" else cx.diff_coprod(0, 3)
        for s in rep["basis"]:
            assert M.matvec(s.vec) == [field.zero()] * M.rows
        for cand in rep["candidates"]:
            assert len(cand["triple"]) == 3 and isinstance(cand["verdict"]["ok"], bool)


def test_pushback_zero_and_invariance():
    cx = bic("grouplike", 2, F2)
    out = pushback(cx, zero(cx, 3, 0))
    assert out["verdict"]["ok"] and all(p.is_zero() for p in out["triple"])
    rng = random.Random(3)
    s = solve_D1(cx)["basis"][0]
    u = rand(cx, 2, 0, rng)
    moved = s + tensor(cx, u)
    assert pushback(cx, moved)["verdict"]["ok"] == pushback(cx, s)["verdict"]["ok"]
    with pytest.raises(BicomplexError):
        pushback(cx, from_function(cx, 3, 0, lambda g, h, k: 1 if (g, h, k) == (0, 1, 1) else 0))


def test_bicochain_json_roundtrip():
    cx = bic("function", 2, QQ)
    s = rand(cx, 2, 2, random.Random(8))
    again = bicochain_from_json(cx, json.loads(json.dumps(s.to_json())))
    assert again == s
