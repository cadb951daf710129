"""Finite groups as multiplication tables with identity at index 0."""
from __future__ import annotations

import itertools
import json
from pathlib import Path


class GroupError(ValueError):
    pass


class GroupTable:
    def __init__(self, mul, name=None):
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        self._validate()
        self.inverse = tuple(next(h for h in range(self.order) if self.mul[g][h] == 0) for g in range(self.order))

    def _validate(self):
        n = self.order
        if n < 1:
            raise GroupError("group order must be >= 1")
        for g, row in enumerate(self.mul):
            if len(row) != n:
                raise GroupError(f"row {g} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise GroupError(f"row {g} entry {x} out of range (closure)")
        for g in range(n):
            if self.mul[0][g] != g or self.mul[g][0] != g:
                raise GroupError(f"index 0 is not a two-sided identity (fails at {g})")
        for g, h, k in itertools.product(range(n), repeat=3):
            if self.mul[self.mul[g][h]][k] != self.mul[g][self.mul[h][k]]:
                raise GroupError(f"not associative at ({g}, {h}, {k})")
        for g in range(n):
            if 0 not in self.mul[g]:
                raise GroupError(f"element {g} has no inverse")

    def __call__(self, g, h):
        return self.mul[g][h]

    def prod(self, *elems):
        out = 0
        for g in elems:
            out = self.mul[out][g]
        return out

    def elements(self):
        return range(self.order)

    def to_json(self):
        return {"order": self.order, "mul": [list(r) for r in self.mul]}

    def __eq__(self, other):
        return isinstance(other, GroupTable) and other.mul == self.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"GroupTable(order={self.order}{', ' + self.name if self.name else ''})"


def cyclic(n: int) -> GroupTable:
    return GroupTable([[(g + h) % n for h in range(n)] for g in range(n)], name=f"Z{n}")


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    # element (x, y) has index x * |b| + y so the identity stays at 0
    nb = b.order
    elems = list(itertools.product(range(a.order), range(nb)))
    mul = [[a.mul[x1][x2] * nb + b.mul[y1][y2] for (x2, y2) in elems] for (x1, y1) in elems]
    return GroupTable(mul, name=f"{a.name}x{b.name}")


def klein() -> GroupTable:
    g = direct_product(cyclic(2), cyclic(2))
    g.name = "Klein"
    return g


def symmetric(n: int) -> GroupTable:
    perms = sorted(itertools.permutations(range(n)))  # identity first
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    mul = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return GroupTable(mul, name=f"S{n}")


def load_group(path) -> GroupTable:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or "mul" not in data:
        raise GroupError("group file needs a 'mul' table")
    g = GroupTable(data["mul"], name=data.get("name"))
    if "order" in data and data["order"] != g.order:
        raise GroupError(f"declared order {data['order']} but table has {g.order} rows")
    return g
