"""Coherence checks for skeletal data: pentagon, triangle, bitensor axioms."""
from __future__ import annotations

import itertools

from ..coherence.trees import TreeEngine, left_comb


# the two pentagon paths from ((01)2)3 to 0(1(23)), as rotation sites
_LONG = [(0,), (), (1,)]
_SHORT = [(), ()]


def validate_pentagon(d, engine=None):
    """Compare both pentagon paths on every (i, j, k, l; e) with nonzero Hom.

    Returns ``{"ok", "instances", "failures"}``; each failure names the four
    simples, the total ``e`` and one differing channel.
    """
    eng = engine or TreeEngine(d)
    F = d.field
    tree = left_comb(4)
    failures = []
    count = 0
    for word in itertools.product(range(d.n), repeat=4):
        grouped, _ = eng.channels(tree, word)
        for e, chans in grouped.items():
            count += 1
            for ch in chans:
                a = eng.apply_moves({ch: F.one()}, _LONG)
                b = eng.apply_moves({ch: F.one()}, _SHORT)
                if a != b:
                    failures.append({"tuple": list(word), "total": e, "labels": [d.simples[x] for x in word]})
                    break
    return {"ok": not failures, "instances": count, "failures": failures}


def validate_triangle(d):
    """F[a,u,b;c] restricted to the unit channel times lambda_b equals rho_a."""
    F = d.field
    failures = []
    count = 0
    for u in range(d.n):
        if not d.unit[u]:
            continue
        for a, b, c in itertools.product(range(d.n), repeat=3):
            key = (a, u, b, c)
            if key not in d.F or not d.fusion[a][u][a] or not d.fusion[u][b][b]:
                continue
            left, right = d.F_left(*key), d.F_right(*key)
            rho = d.unit_block("rho", a)[_unit_row(d.rho_left(a), u)][0] if d.unit_iso else F.one()
            lam = d.unit_block("lambda", b)[_unit_row(d.lambda_left(b), u)][0] if d.unit_iso else F.one()
            for nu, nu2 in itertools.product(range(d.fusion[a][b][c]), repeat=2):
                count += 1
                r = left.index((a, 0, nu))
                s = right.index((b, 0, nu2))
                got = F.mul(d.F[key][r][s], lam)
                want = rho if nu == nu2 else F.zero()
                if got != want:
                    failures.append({"tuple": [a, u, b], "total": c})
    return {"ok": not failures, "instances": count, "failures": failures}


def _unit_row(chans, u):
    for i, ch in enumerate(chans):
        if ch[0] == u:
            return i
    return 0


def validate_fusion(d):
    rep = {"pentagon": validate_pentagon(d)}
    ok = rep["pentagon"]["ok"]
    if d.unit_iso:
        rep["triangle"] = validate_triangle(d)
        ok = ok and rep["triangle"]["ok"]
    rep["ok"] = ok
    return rep


def validate(d):
    """Full validation report for a fusion or bitensor datum."""
    from .datum import BitensorDatum

    if isinstance(d, BitensorDatum):
        from ..coherence.diagrams import validate_bitensor

        rep = validate_fusion(d.base)
        bi = validate_bitensor(d)
        rep["bitensor"] = bi
        rep["ok"] = rep["ok"] and bi["ok"]
        return rep
    return validate_fusion(d)
