"""Identities, total cohomology, D1/D2, pushback and deformation triples."""
from __future__ import annotations

import json
from pathlib import Path

from ..algebra import EchelonBasis, ExactMatrix, rank_kernel
from .core import BiComplex, BicomplexError, BiSpace


class BiCochain:
    """An element of ``X^{i,j}`` stored as a dense coefficient vector."""

    def __init__(self, space: BiSpace, vec=None, field=None):
        self.space = space
        self.field = field
        F = field
        self.vec = list(vec) if vec is not None else [F.zero()] * space.dim
        if len(self.vec) != space.dim:
            raise ValueError(f"vector length {len(self.vec)} != dim X^{space.bidegree} = {space.dim}")

    @property
    def bidegree(self):
        return self.space.bidegree

    def component(self, A):
        """``{grading: dense matrix}`` (rows Q channels, cols P channels)."""
        out = {}
        for c, (off, nq, np_) in self.space.blocks.get(tuple(A), {}).items():
            out[c] = [self.vec[off + q * np_: off + (q + 1) * np_] for q in range(nq)]
        return out

    def is_zero(self):
        return all(self.field.is_zero(v) for v in self.vec)

    def __add__(self, other):
        F = self.field
        return BiCochain(self.space, [F.add(a, b) for a, b in zip(self.vec, other.vec)], F)

    def __sub__(self, other):
        F = self.field
        return BiCochain(self.space, [F.sub(a, b) for a, b in zip(self.vec, other.vec)], F)

    def scale(self, s):
        F = self.field
        return BiCochain(self.space, [F.mul(s, a) for a in self.vec], F)

    def __eq__(self, other):
        return isinstance(other, BiCochain) and other.space is self.space and other.vec == self.vec

    def to_json(self):
        F = self.field
        comps = []
        for A in self.space.blocks:
            blocks = []
            for c, m in self.component(A).items():
                if any(not F.is_zero(v) for row in m for v in row):
                    blocks.append({"out_tuple": list(c), "matrix": [[F.format(v) for v in row] for row in m]})
            if blocks:
                comps.append({"tuple": list(A), "blocks": blocks})
        return {"bidegree": list(self.bidegree), "components": comps}


def apply(cx: BiComplex, M: ExactMatrix, s: BiCochain, target) -> BiCochain:
    return BiCochain(cx.space(*target), M.matvec(s.vec), cx.field)


def tensor(cx: BiComplex, s: BiCochain) -> BiCochain:
    i, j = s.bidegree
    return apply(cx, cx.diff_tensor(i, j), s, (i + 1, j))


def coprod(cx: BiComplex, s: BiCochain) -> BiCochain:
    i, j = s.bidegree
    return apply(cx, cx.diff_coprod(i, j), s, (i, j + 1))


def bicochain_from_json(cx: BiComplex, data, where="bicochain"):
    from ..category.io import ParseError

    F = cx.field
    try:
        i, j = (int(x) for x in data["bidegree"])
        comps = data["components"]
    except (KeyError, TypeError, ValueError):
        raise ParseError(f"{where}: expected 'bidegree' [i, j] and 'components'") from None
    try:
        space = cx.space(i, j)
    except BicomplexError as e:
        raise ParseError(f"{where}: {e}") from None
    vec = [F.zero()] * space.dim
    for ci, comp in enumerate(comps):
        here = f"{where}.components[{ci}]"
        try:
            A = tuple(int(x) for x in comp["tuple"])
            blocks = comp["blocks"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{here}: needs integer 'tuple' and 'blocks'") from None
        if A not in space.blocks:
            raise ParseError(f"{here}: tuple {list(A)} has no component")
        for bi, blk in enumerate(blocks):
            try:
                c = tuple(int(x) for x in blk["out_tuple"])
                matrix = blk["matrix"]
            except (KeyError, TypeError, ValueError):
                raise ParseError(f"{here}.blocks[{bi}]: needs 'out_tuple' and 'matrix'") from None
            if c not in space.blocks[A]:
                raise ParseError(f"{here}.blocks[{bi}]: grading {list(c)} impossible")
            off, nq, np_ = space.blocks[A][c]
            if len(matrix) != nq or any(len(r) != np_ for r in matrix):
                raise ParseError(f"{here}.blocks[{bi}]: expected a {nq}x{np_} matrix")
            for q, row in enumerate(matrix):
                for p, v in enumerate(row):
                    try:
                        vec[off + q * np_ + p] = F.parse(v)
                    except (ValueError, ArithmeticError) as e:
                        raise ParseError(f"{here}.blocks[{bi}].matrix[{q}][{p}]: {e}") from None
    return BiCochain(space, vec, F)


def load_bicochain(cx, path):
    from ..category.io import read_json

    return bicochain_from_json(cx, read_json(path), where=str(path))


def save_bicochain(s: BiCochain, path):
    Path(path).write_text(json.dumps(s.to_json(), indent=1) + "\n", encoding="utf-8")


# -- identities ---------------------------------------------------------------

def _witness(space: BiSpace, M: ExactMatrix):
    """Source basis label of the first nonzero column of ``M``, or ``None``."""
    for col, entries in enumerate(M.col_dicts()):
        if entries:
            A, c, q, p = space.labels[col]
            return {"tuple": list(A), "grading": list(c), "q": q, "p": p}
    return None


def _minus(F, M):
    return M.scale(F.neg(F.one()))


def verify_bicomplex(cx: BiComplex, max_i, max_j, max_total=None):
    """Check the matrix identities out of every bidegree in range.

    ``tensor^2 = 0``, ``coprod^2 = 0``, the two differentials commute, hence
    ``coprod' = (-1)^i coprod`` anticommutes with ``tensor`` and ``D^2 = 0``.
    An identity is checked only if every bidegree it touches lies in the
    box ``i <= max_i, j <= max_j`` and has ``i + j <= max_total`` (when given).
    """
    F = cx.field
    lo = 0 if cx.bd.biunital else 1
    checks = []
    ok = True

    def inside(i, j):
        return i <= max_i and j <= max_j and (max_total is None or i + j <= max_total)

    for i in range(lo, max_i + 1):
        for j in range(lo, max_j + 1):
            if (i, j) == (0, 0) or not inside(i, j):
                continue
            S = cx.space(i, j)
            found = {}
            if inside(i + 2, j):
                found["tensor_squared"] = cx.diff_tensor(i + 1, j) @ cx.diff_tensor(i, j)
            if inside(i, j + 2):
                found["coprod_squared"] = cx.diff_coprod(i, j + 1) @ cx.diff_coprod(i, j)
            if inside(i + 1, j + 1):
                tc = cx.diff_tensor(i, j + 1) @ cx.diff_coprod(i, j)
                ct = cx.diff_coprod(i + 1, j) @ cx.diff_tensor(i, j)
                found["commute"] = tc + _minus(F, ct)
                # twisted coproduct differential (-1)^i coprod on X^{i,j}
                s0 = F.one() if i % 2 == 0 else F.neg(F.one())
                found["anticommute_twisted"] = tc.scale(s0) + ct.scale(F.neg(s0))
            for name, M in found.items():
                w = _witness(S, M)
                checks.append({"bidegree": [i, j], "identity": name, "holds": w is None, "witness": w})
                ok = ok and w is None
    return {"ok": ok, "checks": checks}


# -- total complex -------------------------------------------------------------

def total_blocks(cx: BiComplex, n):
    """Bidegrees of total degree ``n`` (``i + j = n + 1``, ``i, j >= 1``) with offsets."""
    out, off = [], 0
    for i in range(n, 0, -1):
        j = n + 1 - i
        dim = cx.space(i, j).dim
        out.append(((i, j), off, dim))
        off += dim
    return out, off


def total_differential(cx: BiComplex, n) -> ExactMatrix:
    """``D = tensor + (-1)^i coprod`` from total degree ``n`` to ``n + 1``."""
    F = cx.field
    src, sdim = total_blocks(cx, n)
    tgt, tdim = total_blocks(cx, n + 1)
    toff = {bd: off for bd, off, _ in tgt}
    entries = {}
    for (i, j), off, _ in src:
        sign = F.one() if i % 2 == 0 else F.neg(F.one())
        parts = [((i + 1, j), cx.diff_tensor(i, j), F.one()), ((i, j + 1), cx.diff_coprod(i, j), sign)]
        for bd, M, s in parts:
            for (r, c), v in M.entries.items():
                key = (toff[bd] + r, off + c)
                x = F.add(entries.get(key, F.zero()), F.mul(s, v))
                if F.is_zero(x):
                    entries.pop(key, None)
                else:
                    entries[key] = x
    return ExactMatrix(F, tdim, sdim, entries)


def split_total(cx: BiComplex, n, vec):
    """Cut a total-degree-``n`` vector into its bicochains, highest ``i`` first."""
    blocks, _ = total_blocks(cx, n)
    return [BiCochain(cx.space(*bd), vec[off:off + dim], cx.field) for bd, off, dim in blocks]


def join_total(cx: BiComplex, parts):
    out = []
    for p in parts:
        out.extend(p.vec)
    return out


def total_cohomology(cx: BiComplex, max_total=3, representatives=True):
    """Dims of the total cohomology of the basic bicomplex, degrees ``1..max_total``.

    Each entry also records whether ``D_n D_{n-1} = 0`` held as matrices.
    Degree-3 representatives are returned as ``(a, k, b)`` triples.
    """
    F = cx.field
    out = []
    prev = None
    prev_rank = 0
    for n in range(1, max_total + 1):
        D = total_differential(cx, n)
        _, dim = total_blocks(cx, n)
        r, ker = rank_kernel(D)
        entry = {
            "degree": n,
            "dim_X": dim,
            "rank_D": r,
            "dim_ker": dim - r,
            "rank_D_prev": prev_rank,
            "dim_H": dim - r - prev_rank,
            "D_squared_zero": (D @ prev).is_zero() if prev is not None else True,
        }
        if representatives and n == 3:
            image = EchelonBasis(F, dim)
            if prev is not None:
                for col in prev.col_dicts():
                    if col:
                        image.add(col)
            both = EchelonBasis(F, dim)
            for row in image.rows_in_order():
                both.add(dict(row))
            reps = []
            for v in ker:
                sv = {i: x for i, x in enumerate(v) if not F.is_zero(x)}
                if both.add(dict(sv)) is not None:
                    red = image.reduce(sv)
                    vec = [F.zero()] * dim
                    for i, x in red.items():
                        vec[i] = x
                    reps.append(tuple(split_total(cx, 3, vec)))
            entry["representatives"] = reps
        out.append(entry)
        prev = D
        prev_rank = r
    return out


# -- deformation triples ---------------------------------------------------------

def verify_triple(cx: BiComplex, a: BiCochain, k: BiCochain, b: BiCochain):
    """The four linear conditions on a first-order perturbation ``(a, k, b)``.

    They are the components of ``D(a, k, b) = 0`` in ``X^{4,1}, X^{3,2},
    X^{2,3}, X^{1,4}``.
    """
    if (a.bidegree, k.bidegree, b.bidegree) != ((3, 1), (2, 2), (1, 3)):
        raise BicomplexError("a triple has bidegrees (3,1), (2,2), (1,3)")
    eqs = [
        ("tensor(a) = 0", tensor(cx, a)),
        ("tensor(k) - coprod(a) = 0", tensor(cx, k) - coprod(cx, a)),
        ("coprod(k) + tensor(b) = 0", coprod(cx, k) + tensor(cx, b)),
        ("coprod(b) = 0", coprod(cx, b)),
    ]
    report = []
    for name, v in eqs:
        w = None
        for idx, x in enumerate(v.vec):
            if not cx.field.is_zero(x):
                A, c, q, p = v.space.labels[idx]
                w = {"tuple": list(A), "grading": list(c)}
                break
        report.append({"equation": name, "holds": w is None, "witness": w})
    return {"ok": all(e["holds"] for e in report), "equations": report}


def zero(cx, i, j):
    return BiCochain(cx.space(i, j), None, cx.field)


def _need_biunital(cx):
    if not cx.bd.biunital:
        raise BicomplexError("D1/D2 live on the extended bicomplex and need unit and counit data")


def solve_D1(cx: BiComplex, pushback_all=True):
    """Kernel of the input-raising differential on ``X^{3,0}``, with pushbacks."""
    _need_biunital(cx)
    return _solve(cx, "D1", (3, 0), cx.diff_tensor(3, 0), pushback_all)


def solve_D2(cx: BiComplex, pushback_all=True):
    """Kernel of the output-raising differential on ``X^{0,3}``, with pushbacks."""
    _need_biunital(cx)
    return _solve(cx, "D2", (0, 3), cx.diff_coprod(0, 3), pushback_all)


def _solve(cx, name, bd, M, pushback_all):
    _, ker = rank_kernel(M)
    basis = [BiCochain(cx.space(*bd), v, cx.field) for v in ker]
    rep = {"equation": name, "bidegree": list(bd), "dim": len(basis), "basis": basis, "candidates": []}
    if pushback_all:
        for s in basis:
            rep["candidates"].append(pushback(cx, s))
    return rep


def pushback(cx: BiComplex, s: BiCochain):
    """Candidate triple from a D1 or D2 solution by the edge map.

    ``s`` in ``X^{3,0}`` gives ``(coprod(s), 0, 0)``; ``t`` in ``X^{0,3}``
    gives ``(0, 0, tensor(t))``.  The verdict is attached.
    """
    if s.bidegree == (3, 0):
        if not tensor(cx, s).is_zero():
            raise BicomplexError("input does not solve D1")
        triple = (coprod(cx, s), zero(cx, 2, 2), zero(cx, 1, 3))
    elif s.bidegree == (0, 3):
        if not coprod(cx, s).is_zero():
            raise BicomplexError("input does not solve D2")
        triple = (zero(cx, 3, 1), zero(cx, 2, 2), tensor(cx, s))
    else:
        raise BicomplexError(f"pushback takes X^(3,0) or X^(0,3), got X^{s.bidegree}")
    return {"triple": triple, "verdict": verify_triple(cx, *triple)}
