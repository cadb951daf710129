"""Generators for pointed, grouplike and function-algebra category data."""
from __future__ import annotations

import itertools

from .datum import BitensorDatum, DatumError, FusionDatum
from .group import GroupTable


class CocycleError(DatumError):
    pass


def _as_function(data, arity):
    if data is None or callable(data):
        return data
    table = dict(data)
    return lambda *args: table[tuple(args)]


def check_cocycle(g: GroupTable, field, omega):
    """First 4-tuple where w(gh,k,l) w(g,h,kl) != w(g,h,k) w(g,hk,l) w(h,k,l), else ``None``."""
    F, m = field, g.mul
    for a, b, c, d in itertools.product(range(g.order), repeat=4):
        lhs = F.mul(omega(m[a][b], c, d), omega(a, b, m[c][d]))
        rhs = F.mul(F.mul(omega(a, b, c), omega(a, m[b][c], d)), omega(b, c, d))
        if lhs != rhs:
            return (a, b, c, d)
    return None


def gen_pointed(g: GroupTable, field, omega=None, name=None):
    """Vec_G twisted by a multiplicative 3-cocycle ``omega`` (default trivial)."""
    omega = _as_function(omega, 3)
    n = g.order
    fusion = [[[1 if g.mul[a][b] == c else 0 for c in range(n)] for b in range(n)] for a in range(n)]
    F = {}
    if omega is not None:
        for a, b, c in itertools.product(range(n), repeat=3):
            w = omega(a, b, c)
            if field.is_zero(w):
                raise CocycleError(f"omega{(a, b, c)} is zero")
        bad = check_cocycle(g, field, omega)
        if bad is not None:
            raise CocycleError(f"omega is not a 3-cocycle: fails at {bad}")
        for a, b, c in itertools.product(range(n), repeat=3):
            w = omega(a, b, c)
            if w != field.one():
                F[(a, b, c, g.prod(a, b, c))] = [[w]]
    return FusionDatum(field, [str(x) for x in range(n)], 0, fusion, F, name=name or f"vec_{g.name or 'G'}")


def gen_grouplike_bitensor(g: GroupTable, field, name=None):
    """Delta(x) = x (x) x, counit the ground field on every simple."""
    base = gen_pointed(g, field)
    n = g.order
    delta = [[[1 if i == j == k else 0 for j in range(n)] for i in range(n)] for k in range(n)]
    return BitensorDatum(base, delta, counit=[1] * n, name=name or f"grouplike_{g.name or 'G'}")


def gen_function_bitensor(g: GroupTable, field, name=None):
    """Functions on G: diagonal product, non-simple unit, Delta(k) = sum over ij = k."""
    n = g.order
    fusion = [[[1 if a == b == c else 0 for c in range(n)] for b in range(n)] for a in range(n)]
    base = FusionDatum(field, [str(x) for x in range(n)], [1] * n, fusion, name=name)
    delta = [[[1 if g.mul[i][j] == k else 0 for j in range(n)] for i in range(n)] for k in range(n)]
    counit = [1 if x == 0 else 0 for x in range(n)]
    return BitensorDatum(base, delta, counit=counit, name=name or f"function_{g.name or 'G'}")


def group_of_pointed(d: FusionDatum):
    """Recover the multiplication table of a pointed datum."""
    if not d.is_pointed():
        raise DatumError("datum is not pointed")
    mul = [[d.products(a, b)[0][0] for b in range(d.n)] for a in range(d.n)]
    u = d.unit_index
    if u != 0:
        raise DatumError("pointed data must have the unit at index 0")
    return GroupTable(mul)


def pointed_omega(d: FusionDatum):
    """``omega(a, b, c)`` read from the 1x1 F blocks."""
    g = group_of_pointed(d)
    return lambda a, b, c: d.F[(a, b, c, g.prod(a, b, c))][0][0]


def gauge_twist(d: FusionDatum, beta):
    """omega' = omega * beta(h,k) beta(g,hk) / (beta(gh,k) beta(g,h))."""
    beta = _as_function(beta, 2)
    g = group_of_pointed(d)
    F, m = d.field, g.mul
    omega = pointed_omega(d)
    blocks = {}
    for a, b, c in itertools.product(range(d.n), repeat=3):
        num = F.mul(beta(b, c), beta(a, m[b][c]))
        den = F.mul(beta(m[a][b], c), beta(a, b))
        blocks[(a, b, c, g.prod(a, b, c))] = [[F.mul(omega(a, b, c), F.div(num, den))]]
    return FusionDatum(F, d.simples, d._unit_spec(), d.fusion, blocks, d.unit_iso, d.name)


def random_gauge(g: GroupTable, field, rng):
    """A random normalized 2-cochain with nonzero values (beta(0, x) = beta(x, 0) = 1)."""
    table = {}
    for a, b in itertools.product(range(g.order), repeat=2):
        if a == 0 or b == 0:
            table[(a, b)] = field.one()
            continue
        v = field.random(rng)
        while field.is_zero(v):
            v = field.random(rng)
        table[(a, b)] = v
    return table


def dims_report(d, max_degree=4):
    """Predicted dim X^n = sum over n-tuples of sum_k mult_k^2, without building bases."""
    from .datum import BitensorDatum as _B

    base = d.base if isinstance(d, _B) else d
    n = base.n
    # multiplicity vectors of iterated products, by dynamic programming over tuples
    out = {}
    per_len = [{(): {}}]
    for length in range(1, max_degree + 1):
        nxt = {}
        for word, mult in per_len[-1].items():
            for x in range(n):
                if not word:
                    nxt[(x,)] = {x: 1}
                    continue
                acc = {}
                for a, ma in mult.items():
                    for c, mm in base.products(a, x):
                        acc[c] = acc.get(c, 0) + ma * mm
                nxt[word + (x,)] = acc
        per_len.append(nxt)
        out[length] = sum(m * m for mult in nxt.values() for m in mult.values())
    rep = {"simples": n, "dim_X": out}
    if isinstance(d, _B):
        rep["biunital"] = d.biunital
    return rep
