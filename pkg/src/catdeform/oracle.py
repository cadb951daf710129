"""Group cohomology with trivial coefficients from the inhomogeneous bar complex."""
from __future__ import annotations

import itertools

from .algebra import ExactMatrix, rank


def _index(word, order):
    i = 0
    for g in word:
        i = i * order + g
    return i


def bar_differential(g, field, n):
    """``|G|^{n+1} x |G|^n`` matrix of the bar differential in degree ``n >= 1``.

    (d phi)(g1..g_{n+1}) = phi(g2..) + sum_i (-1)^i phi(.., g_i g_{i+1}, ..) + (-1)^{n+1} phi(g1..g_n)
    """
    if n < 1:
        raise ValueError("bar degree starts at 1")
    order, mul = g.order, g.mul
    one = field.one()
    minus = field.neg(one)
    entries = {}

    def add(r, c, v):
        x = field.add(entries.get((r, c), field.zero()), v)
        if field.is_zero(x):
            entries.pop((r, c), None)
        else:
            entries[(r, c)] = x

    for row, word in enumerate(itertools.product(range(order), repeat=n + 1)):
        add(row, _index(word[1:], order), one)
        for i in range(1, n + 1):
            merged = word[: i - 1] + (mul[word[i - 1]][word[i]],) + word[i + 1:]
            add(row, _index(merged, order), one if i % 2 == 0 else minus)
        add(row, _index(word[:n], order), one if (n + 1) % 2 == 0 else minus)
    return ExactMatrix(field, order ** (n + 1), order ** n, entries)


def group_cohomology(g, field, max_degree=4):
    """Dims of H^n(G; k) for n = 1..max_degree (the degree-0 differential is zero)."""
    out = []
    prev = 0
    for n in range(1, max_degree + 1):
        r = rank(bar_differential(g, field, n))
        dim = g.order ** n
        out.append({"degree": n, "dim_C": dim, "rank_d": r, "dim_Z": dim - r, "dim_H": dim - r - prev})
        prev = r
    return out
