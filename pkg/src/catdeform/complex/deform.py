"""Deformations of the associator: obstructions, the truncated-polynomial oracle, extension."""
from __future__ import annotations

from pathlib import Path

from ..algebra import PolyRing, TruncatedPoly, parse_truncated, solve_linear
from ..coherence.bracket import bracket_compose, prolong
from ..coherence.trees import add_into, apply_at, left_comb, tensor_placements
from .cochains import Cochain

# 4-leaf placements of a degree-3 component, named by the objects it sees
_PL = tensor_placements(3)
ONE_A, A_ABCD_0, A_ABCD_1, A_ABCD_2, A_ONE = _PL  # 1(x)a, a_{AB,C,D}, a_{A,BC,D}, a_{A,B,CD}, a(x)1


class DeformationCandidate:
    """``alpha + a1 e + ... + aN e^N`` for a fixed fusion datum."""

    def __init__(self, cx, cochains):
        self.cx = cx
        self.terms = list(cochains)
        for a in self.terms:
            if a.degree != 3:
                raise ValueError("associator perturbations have degree 3")

    @property
    def order(self):
        return len(self.terms)

    def a(self, i):
        return self.terms[i - 1]


def _comp(a):
    return lambda iw, k, y, x: a.get(iw, k, y, x)


def obstruction(cx, cand: DeformationCandidate, order: int) -> Cochain:
    """Right-hand side of delta(a^(order)) = o, from a^(1..order-1).

    o = sum_{i+j} [a^i_{AB,C,D} a^j_{A,B,CD}]
        - sum_{i+j} ([a^i_{A,BC,D} (1 a^j)] + [(a^i 1)(1 a^j)] + [(a^i 1) a^j_{A,BC,D}])
        - sum_{i+j+k} [(a^i 1) a^j_{A,BC,D} (1 a^k)]
    with all indices >= 1 and parts listed in the order they are applied.
    """
    eng = cx.engine
    F = cx.field
    space4 = cx.space(4)
    if order - 1 > cand.order:
        raise ValueError(f"need a^(1..{order - 1}) to build the order-{order} obstruction")
    vec = [F.zero()] * space4.dim
    pairs = [(i, order - i) for i in range(1, order)]
    triples = [(i, j, order - i - j) for i in range(1, order) for j in range(1, order - i)]
    L4 = left_comb(4)
    for word in space4.blocks:
        cache = {}

        def part(i, pl):
            key = (i, id(pl))
            if key not in cache:
                cache[key] = prolong(eng, _comp(cand.a(i)), pl, word)
            return cache[key]

        terms = []
        for i, j in pairs:
            terms.append((F.one(), [part(i, A_ABCD_0), part(j, A_ABCD_2)]))
            terms.append((F.neg(F.one()), [part(i, A_ABCD_1), part(j, ONE_A)]))
            terms.append((F.neg(F.one()), [part(i, A_ONE), part(j, ONE_A)]))
            terms.append((F.neg(F.one()), [part(i, A_ONE), part(j, A_ABCD_1)]))
        for i, j, k in triples:
            terms.append((F.neg(F.one()), [part(i, A_ONE), part(j, A_ABCD_1), part(k, ONE_A)]))
        if not terms:
            continue
        gl, _ = eng.channels(L4, word)
        _, ir = eng.channels(space4.R, word)
        for sign, parts in terms:
            blk = bracket_compose(eng, parts, word)
            for k, chs in gl.items():
                for x, ch in enumerate(chs):
                    for z, v in blk.map.get(ch, {}).items():
                        _, zi = ir[z]
                        idx = space4.label_index(word, k, zi, x)
                        vec[idx] = F.add(vec[idx], F.mul(sign, v))
    return Cochain(space4, vec)


# -- truncated-polynomial oracle -------------------------------------------

def deformed_F(cand: DeformationCandidate, order=None):
    """F-blocks over ``k[e]/e^{N+1}``: F + sum_k e^k a^(k) in block orientation."""
    d = cand.cx.engine.datum
    F = d.field
    N = cand.order if order is None else order
    size = N + 1
    out = {}
    for key, block in d.F.items():
        i, j, k, l = key
        rows, cols = len(block), len(block[0])
        poly = []
        for r in range(rows):
            prow = []
            for c in range(cols):
                coeffs = [block[r][c]]
                for t in range(1, size):
                    if t <= cand.order:
                        # component rows are right-comb channels, cols left-comb channels
                        coeffs.append(cand.a(t).get((i, j, k), l, c, r))
                    else:
                        coeffs.append(F.zero())
                prow.append(TruncatedPoly(F, coeffs))
            poly.append(prow)
        out[key] = poly
    return out


class _PolyRotations:
    """Rotations with polynomial F-blocks; deliberately separate from the tree engine."""

    def __init__(self, datum, Fpoly, ring):
        self.d = datum
        self.F = Fpoly
        self.ring = ring
        self.left = {k: {ch: i for i, ch in enumerate(datum.F_left(*k))} for k in datum.F}
        self.right = {k: datum.F_right(*k) for k in datum.F}

    def rot(self, ch):
        l, nu, (m, mu, cx, cy), cz = ch
        tot = lambda c: c if isinstance(c, int) else c[0]
        key = (tot(cx), tot(cy), tot(cz), l)
        r = self.left[key][(m, mu, nu)]
        out = []
        for c, coef in enumerate(self.F[key][r]):
            if not coef.is_zero():
                n, rho, sig = self.right[key][c]
                out.append(((l, sig, cx, (n, rho, cy, cz)), coef))
        return out

    def path(self, ch, sites):
        R = self.ring
        vec = {ch: R.one()}
        for site in sites:
            nxt = {}
            for c, v in vec.items():
                for new, w in apply_at(c, site, self.rot):
                    add_into(R, nxt, new, R.mul(v, w))
            vec = nxt
        return vec


def pentagon_residual(cand: DeformationCandidate, order=None):
    """Long path minus short path of the deformed pentagon, per power of e.

    Returns ``{"orders": [{"order", "zero", "witness"}], "defects": {m: Cochain}}``
    where ``defects[m]`` is (long - short) at e^m as a degree-4 cochain, so
    that at the top order it equals ``delta(a^(m)) - obstruction``.
    """
    cx = cand.cx
    d = cx.engine.datum
    F = d.field
    N = cand.order if order is None else order
    ring = PolyRing(F, N + 1)
    rot = _PolyRotations(d, deformed_F(cand, N), ring)
    space4 = cx.space(4)
    eng = cx.engine
    defects = {m: [F.zero()] * space4.dim for m in range(N + 1)}
    witness = {}
    for word in space4.blocks:
        gl, _ = eng.channels(space4.L, word)
        _, ir = eng.channels(space4.R, word)
        for k, chs in gl.items():
            for x, ch in enumerate(chs):
                long_ = rot.path(ch, [(0,), (), (1,)])
                short = rot.path(ch, [(), ()])
                for z in set(long_) | set(short):
                    diff = ring.sub(long_.get(z, ring.zero()), short.get(z, ring.zero()))
                    _, zi = ir[z]
                    idx = space4.label_index(word, k, zi, x)
                    for m, v in enumerate(diff.coeffs):
                        if not F.is_zero(v):
                            defects[m][idx] = v
                            witness.setdefault(m, {"tuple": list(word), "total": k})
    orders = [{"order": m, "zero": m not in witness, "witness": witness.get(m)} for m in range(N + 1)]
    return {"orders": orders, "defects": {m: Cochain(space4, v) for m, v in defects.items()}}


# -- order-by-order extension -------------------------------------------------

def obstruction_report(cx, cand, order):
    """Obstruction at ``order`` with closed/exact flags and an extension when exact."""
    res = pentagon_residual(cand)
    bad = [o for o in res["orders"][1:] if not o["zero"]]
    if bad:
        raise ValueError(f"candidate is not a deformation through order {cand.order}: residual at e^{bad[0]['order']}")
    o = obstruction(cx, cand, order)
    closed = cx.coboundary(o).is_zero()
    x = solve_linear(cx.delta(3), o.vec)
    return {
        "order": order,
        "obstruction": o,
        "closed": closed,
        "exact": x is not None,
        "extension": Cochain(cx.space(3), x) if x is not None else None,
    }


def extend_to_order(cx, a1: Cochain, N: int):
    """Iterate obstruction/solve from a closed ``a1`` up to order ``N``."""
    if not cx.coboundary(a1).is_zero():
        raise ValueError("a1 is not a cocycle")
    cand = DeformationCandidate(cx, [a1])
    reports = []
    for order in range(2, N + 1):
        rep = obstruction_report(cx, cand, order)
        reports.append(rep)
        if not rep["exact"]:
            return {"ok": False, "candidate": cand, "reports": reports, "stopped_at": order}
        cand = DeformationCandidate(cx, cand.terms + [rep["extension"]])
    return {"ok": True, "candidate": cand, "reports": reports, "stopped_at": None}


# -- deformed-category files -----------------------------------------------

def deformation_to_json(cand: DeformationCandidate):
    from ..category.io import category_to_json

    d = cand.cx.engine.datum
    out = category_to_json(d)
    out["order"] = cand.order
    Fp = deformed_F(cand)
    entries = []
    for key in sorted(Fp):
        e = dict(zip(("i", "j", "k", "l"), key))
        e["rows"] = [list(x) for x in d.F_left(*key)]
        e["cols"] = [list(x) for x in d.F_right(*key)]
        e["matrix"] = [[p.format() for p in row] for row in Fp[key]]
        entries.append(e)
    out["F"] = entries
    return out


def load_deformation(path, field=None):
    """Read a deformed-category file back as ``(datum, [a1, ..., aN])`` (unvalidated)."""
    from ..category.io import ParseError, _index, parse_category, read_json
    from ..coherence.trees import TreeEngine
    from .coboundary import TensorComplex

    data = read_json(path)
    N = data.get("order")
    if not isinstance(N, int) or N < 0:
        raise ParseError(f"{path}: deformed file needs a nonnegative integer 'order'")
    plain = dict(data)
    plain["F"] = []
    d0 = parse_category(plain, field=field, where=str(path))
    F = d0.field
    blocks = {}
    polys = {}
    for n, e in enumerate(data.get("F", [])):
        here = f"{path}.F[{n}]"
        key = tuple(_index(d0.simples, e.get(k), f"{here}.{k}") for k in ("i", "j", "k", "l"))
        try:
            mat = [[parse_truncated(F, str(v), N + 1) for v in row] for row in e["matrix"]]
        except (KeyError, ValueError, ArithmeticError) as err:
            raise ParseError(f"{here}: {err}") from None
        polys[key] = mat
        blocks[key] = [[p.coeffs[0] for p in row] for row in mat]
    d = d0.with_F(blocks)
    cx = TensorComplex(TreeEngine(d))
    space3 = cx.space(3)
    terms = []
    for t in range(1, N + 1):
        vec = [F.zero()] * space3.dim
        for (i, j, k, l), mat in polys.items():
            for r, row in enumerate(mat):
                for c, p in enumerate(row):
                    vec[space3.label_index((i, j, k), l, c, r)] = p.coeffs[t]
        terms.append(Cochain(space3, vec))
    return d, cx, terms


def save_deformation(cand, path):
    from ..category.io import dumps

    Path(path).write_text(dumps(deformation_to_json(cand)), encoding="utf-8")
