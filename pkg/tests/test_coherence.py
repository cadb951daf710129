import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catdeform.algebra import QQ
from catdeform.category import BitensorDatum, cyclic, gen_function_bitensor, gen_grouplike_bitensor, gen_pointed
from catdeform.coherence import (
    CoherenceError,
    MorphismBlock,
    TreeEngine,
    bracket_compose,
    generalized_associator,
    hom_basis,
    left_comb,
    prolong,
    right_comb,
    tensor_placements,
)
from catdeform.coherence.diagrams import (
    Diagram,
    Normalizer,
    P,
    Q,
    commensuration,
    normalization_blocks,
    validate_bitensor,
)

from .conftest import BUNDLED, F2, bundled


def all_trees(lo, hi):
    if hi - lo == 1:
        return [lo]
    out = []
    for m in range(lo + 1, hi):
        for a in all_trees(lo, m):
            for b in all_trees(m, hi):
                out.append((a, b))
    return out


def identity_blocks(engine, tree, word):
    return MorphismBlock(engine, tree, tree, word, engine.identity_map(tree, word))


# -- hom bases ---------------------------------------------------------------

def test_hom_basis_dims():
    z2 = TreeEngine(bundled("vec_z2_omega"))
    assert hom_basis(z2, left_comb(3), right_comb(3), (1, 1, 1))[1] == 1
    fib = TreeEngine(bundled("fibonacci"))
    assert hom_basis(fib, left_comb(3), right_comb(3), (1, 1, 1))[1] == 5
    assert hom_basis(fib, left_comb(3), right_comb(3), (1, 1, 0))[1] == 2
    with pytest.raises(CoherenceError):
        hom_basis(fib, left_comb(3), right_comb(4), (1, 1, 1))


@pytest.mark.parametrize("name", BUNDLED)
def test_channel_counts_tree_independent(name):
    eng = TreeEngine(bundled(name))
    for word in itertools.product(range(eng.datum.n), repeat=4):
        counts = {str(eng.multiplicities(t, word)) for t in all_trees(0, 4)}
        assert len(counts) == 1


# -- generalized associators -------------------------------------------------

def test_associator_identity_and_omega():
    eng = TreeEngine(bundled("vec_z2_omega"))
    L = left_comb(3)
    assert generalized_associator(eng, L, L, (1, 0, 1)) == identity_blocks(eng, L, (1, 0, 1))
    blk = generalized_associator(eng, L, right_comb(3), (1, 1, 1)).matrices()
    assert list(blk.values()) == [[[Fraction(-1)]]]


def test_fibonacci_four_leaves_two_routes():
    eng = TreeEngine(bundled("fibonacci"))
    w = (1, 1, 1, 1)
    a = generalized_associator(eng, left_comb(4), right_comb(4), w)
    assert a == generalized_associator(eng, left_comb(4), right_comb(4), w, via="left")
    assert a == generalized_associator(eng, left_comb(4), right_comb(4), w, strategy="deep_first")


@pytest.mark.parametrize("name", BUNDLED)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_path_independence(name, data):
    eng = TreeEngine(bundled(name))
    n = data.draw(st.integers(2, 5))
    trees = all_trees(0, n)
    s = data.draw(st.sampled_from(trees))
    t = data.draw(st.sampled_from(trees))
    word = tuple(data.draw(st.lists(st.integers(0, eng.datum.n - 1), min_size=n, max_size=n)))
    a = generalized_associator(eng, s, t, word)
    assert a == generalized_associator(eng, s, t, word, via="left")
    assert a == generalized_associator(eng, s, t, word, strategy="deep_first")
    assert a.then(generalized_associator(eng, t, s, word)) == identity_blocks(eng, s, word)


# -- bracket composition and prolongation -----------------------------------

def test_bracket_empty_is_associator():
    eng = TreeEngine(bundled("fibonacci"))
    w = (1, 1, 1)
    assert bracket_compose(eng, [], w) == generalized_associator(eng, left_comb(3), right_comb(3), w)


def scalar_block(eng, tree, word, c):
    c = eng.field.parse(str(c))
    m = {ch: {ch: c} for ch in eng.identity_map(tree, word)}
    return MorphismBlock(eng, tree, tree, word, m)


def test_bracket_trivial_omega_keeps_matrix():
    eng = TreeEngine(bundled("vec_z2_trivial"))
    f = scalar_block(eng, left_comb(3), (1, 1, 1), Fraction(5))
    out = bracket_compose(eng, [f], (1, 1, 1))
    assert list(out.matrices().values()) == [[[Fraction(5)]]]


def test_bracket_omega_scalar_conjugation():
    eng = TreeEngine(bundled("vec_z2_omega"))
    L = left_comb(3)
    f = scalar_block(eng, L, (1, 1, 1), Fraction(3))
    out = bracket_compose(eng, [f], (1, 1, 1), src=L, tgt=L)
    assert out == f


def test_bracket_associative_in_parts():
    eng = TreeEngine(bundled("fibonacci"))
    w = (1, 1, 1)
    L, R = left_comb(3), right_comb(3)
    f = scalar_block(eng, L, w, Fraction(2))
    g = scalar_block(eng, R, w, Fraction(3))
    h = scalar_block(eng, L, w, Fraction(7))
    inner = bracket_compose(eng, [g, h], w, src=R, tgt=L)
    assert bracket_compose(eng, [f, inner], w) == bracket_compose(eng, [f, g, h], w)


def test_bracket_word_mismatch():
    eng = TreeEngine(bundled("vec_z2_trivial"))
    f = scalar_block(eng, left_comb(3), (1, 1, 1), Fraction(1))
    with pytest.raises(CoherenceError):
        bracket_compose(eng, [f], (0, 1, 1))


def test_prolong_dimensions_and_unit():
    eng = TreeEngine(bundled("fibonacci"))
    F = eng.field
    one = lambda iw, k, y, x: F.one() if y == x else F.zero()
    placements = tensor_placements(2)
    for word in itertools.product(range(2), repeat=3):
        for pl in placements:
            blk = prolong(eng, one, pl, word)
            dims = {k: (len(m), len(m[0]) if m else 0) for k, m in blk.matrices().items()}
            src = eng.multiplicities(pl.big_src, word)
            tgt = eng.multiplicities(pl.big_tgt, word)
            assert all(dims[k] == (tgt.get(k, 0), src[k]) for k in src)
    # tensoring by the unit simple leaves a 1x1 component unchanged
    eng = TreeEngine(bundled("vec_z2_trivial"))
    comp = lambda iw, k, y, x: Fraction(4)
    blk = prolong(eng, comp, tensor_placements(1)[0], (0, 1))
    assert list(blk.matrices().values()) == [[[Fraction(4)]]]


# -- diagram commensuration --------------------------------------------------

def test_commensuration_identity():
    bd = gen_function_bitensor(cyclic(2), QQ)
    norm = Normalizer(bd)
    D = P(2, 2)
    for labels in itertools.product(range(2), repeat=2):
        for g, (a, b, m) in commensuration(norm, D, D, labels).items():
            assert m == [[Fraction(int(r == c)) for c in range(len(b))] for r in range(len(a))]


def test_grouplike_kappa_trivial():
    bd = gen_grouplike_bitensor(cyclic(2), QQ)
    norm = Normalizer(bd)
    src = Diagram(2)
    src.outputs = list(src.split(src.merge(*src.inputs)))
    for labels in itertools.product(range(2), repeat=2):
        blocks = commensuration(norm, src, Q(2, 2), labels)
        assert [m for _, _, m in blocks.values()] == [[[Fraction(1)]]]


def test_counit_of_product():
    bd = gen_function_bitensor(cyclic(2), QQ)
    norm = Normalizer(bd)
    src = Diagram(2)
    src.counit(src.merge(*src.inputs))
    tgt = Diagram(2)
    for w in tgt.inputs:
        tgt.counit(w)
    for g, h in itertools.product(range(2), repeat=2):
        blocks = commensuration(norm, src, tgt, (g, h))
        dim = sum(len(a) for a, _, _ in blocks.values())
        assert dim == (1 if g == h == 0 else 0)
        for _, _, m in blocks.values():
            assert all(v != 0 for row in m for v in row)


def test_not_commensurable():
    bd = gen_grouplike_bitensor(cyclic(2), QQ)
    with pytest.raises(CoherenceError):
        commensuration(Normalizer(bd), P(2, 1), P(1, 2), (0, 0))


def test_normal_form_idempotent():
    bd = gen_function_bitensor(cyclic(3), QQ)
    norm = Normalizer(bd)
    for i, j in [(1, 2), (2, 2), (3, 1), (2, 3)]:
        D = Q(i, j)
        steps, nf, _ = norm.plan(D)
        assert steps == []
        for labels in itertools.product(range(3), repeat=i):
            for _, (chs, keys, m) in normalization_blocks(norm, D, labels).items():
                assert m == [[Fraction(int(r == c)) for c in range(len(keys))] for r in range(len(chs))]


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(1, 3), (2, 2), (3, 2), (2, 3)]), st.integers(0, 2), st.data())
def test_commensuration_composes(ij, which, data):
    bd = [gen_function_bitensor(cyclic(2), F2), gen_grouplike_bitensor(cyclic(3), QQ), gen_function_bitensor(cyclic(3), QQ)][which]
    norm = Normalizer(bd)
    i, j = ij
    labels = tuple(data.draw(st.lists(st.integers(0, bd.n - 1), min_size=i, max_size=i)))
    A, B, C = P(i, j), Q(i, j), P(i, j)
    ab = commensuration(norm, A, B, labels)
    bc = commensuration(norm, B, C, labels)
    ac = commensuration(norm, A, C, labels)
    F = bd.field
    for g, (_, _, m1) in ab.items():
        m2 = bc[g][2]
        prod = [[F.zero()] * len(m2[0]) for _ in m1] if m2 else []
        for r, row in enumerate(m1):
            for k, v in enumerate(row):
                for c, w in enumerate(m2[k]):
                    prod[r][c] = F.add(prod[r][c], F.mul(v, w))
        assert prod == ac[g][2]


# -- bitensor validation -----------------------------------------------------

@pytest.mark.parametrize("make,n,field", [
    (gen_grouplike_bitensor, 2, QQ),
    (gen_grouplike_bitensor, 3, QQ),
    (gen_function_bitensor, 2, F2),
    (gen_function_bitensor, 3, QQ),
])
def test_generated_bitensors_validate(make, n, field):
    assert validate_bitensor(make(cyclic(n), field))["ok"]


def test_nontrivial_omega_detected():
    g = cyclic(2)
    good = gen_grouplike_bitensor(g, QQ)
    base = gen_pointed(g, QQ, lambda a, b, c: Fraction(-1 if a * b * c else 1))
    bad = BitensorDatum(base, good.delta, counit=good.counit)
    rep = validate_bitensor(bad)
    assert not rep["ok"]
    assert not rep["checks"]["kappa_associator"]["ok"]
    assert rep["checks"]["kappa_associator"]["failures"]


def test_twisted_coassociator_detected():
    good = gen_grouplike_bitensor(cyclic(2), QQ)
    coF = {k: [[Fraction(-1)]] if k == (1, 1, 1, 1) else b for k, b in good.coF.items()}
    bad = BitensorDatum(good.base, good.delta, coF=coF, counit=good.counit)
    rep = validate_bitensor(bad)
    assert not rep["ok"] and not rep["checks"]["dual_pentagon"]["ok"]
