"""Bicochain spaces ``X^{i,j}`` and the two differentials of a bitensor datum."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from ..algebra import ExactMatrix, invert_dense
from ..coherence.diagrams import (
    BOX_OFFSET,
    Diagram,
    Normalizer,
    P,
    Q,
    chan_key,
    cocomb_split,
    comb_merge,
    enumerate_channels,
    grading,
    normalization_blocks,
)
from ..coherence.trees import CoherenceError

MAX_BIDEGREE = 6


class BicomplexError(CoherenceError):
    pass


class BiSpace:
    """Ordered basis of ``X^{i,j} = Nat[P(i, j), Q(i, j)]``.

    Labels are ``(A, c, q, p)``: an input tuple ``A``, an output grading
    ``c``, a ``Q`` channel index ``q`` and a ``P`` channel index ``p``
    within that grading.  Tuples run in ``itertools.product`` order.
    """

    def __init__(self, cx, i, j):
        self.i, self.j = i, j
        self.P, self.Q = P(i, j), Q(i, j)
        T = cx.norm.tables
        self.labels = []
        self.blocks = {}  # A -> {c: (offset, q_count, p_count)}
        self.p_index = {}  # A -> {chan_key: (c, p)}
        self.q_chans = {}  # A -> {c: [channels]}
        for A in itertools.product(range(cx.bd.n), repeat=i):
            pg, qg = {}, {}
            for ch in enumerate_channels(self.P, T, A):
                pg.setdefault(grading(self.P, ch), []).append(ch)
            for ch in enumerate_channels(self.Q, T, A):
                qg.setdefault(grading(self.Q, ch), []).append(ch)
            self.p_index[A] = {chan_key(ch): (c, p) for c, chs in pg.items() for p, ch in enumerate(chs)}
            self.q_chans[A] = qg
            entry = {}
            for c in sorted(set(pg) | set(qg)):
                nq, np_ = len(qg.get(c, [])), len(pg.get(c, []))
                if nq != np_:
                    raise BicomplexError(f"X^{i},{j} at {A}, grading {c}: {np_} vs {nq} channels")
                entry[c] = (len(self.labels), nq, np_)
                for q in range(nq):
                    for p in range(np_):
                        self.labels.append((A, c, q, p))
            if entry:
                self.blocks[A] = entry
        self.index = {lab: n for n, lab in enumerate(self.labels)}

    @property
    def bidegree(self):
        return (self.i, self.j)

    @property
    def dim(self):
        return len(self.labels)

    def label_index(self, A, c, q, p):
        off, nq, np_ = self.blocks[tuple(A)][tuple(c)]
        return off + q * np_ + p


# -- term templates -----------------------------------------------------------
# A template is a diagram with one ``box`` op standing for a bicochain s;
# substituting P or Q for the box gives the two sides of a term.

def _box(D, ins, m):
    return list(D.box(ins, m, ("s",)))


def coprod_terms(n, m):
    """Templates of the differential that raises the output count: X^{n,m} -> X^{n,m+1}."""
    terms = []
    T = Diagram(n)
    firsts, seconds = [], []
    for w in T.inputs:
        a, b = T.split(w)
        firsts.append(a)
        seconds.append(b)
    outs = _box(T, seconds, m)
    T.outputs = [comb_merge(T, firsts, right=True)] + outs
    terms.append((1, T))
    for i in range(1, m + 1):
        T = Diagram(n)
        outs = _box(T, list(T.inputs), m)
        a, b = T.split(outs[i - 1])
        T.outputs = outs[: i - 1] + [a, b] + outs[i:]
        terms.append((-1 if i % 2 else 1, T))
    T = Diagram(n)
    firsts, seconds = [], []
    for w in T.inputs:
        a, b = T.split(w)
        firsts.append(a)
        seconds.append(b)
    outs = _box(T, firsts, m)
    T.outputs = outs + [comb_merge(T, seconds, right=True)]
    terms.append((1 if (m + 1) % 2 == 0 else -1, T))
    return terms


def tensor_terms(n, m):
    """Templates of the differential that raises the input count: X^{n,m} -> X^{n+1,m}."""
    terms = []
    T = Diagram(n + 1)
    pieces = cocomb_split(T, T.inputs[0], m, left=True)
    outs = _box(T, T.inputs[1:], m)
    T.outputs = [T.merge(pieces[t], outs[t]) for t in range(m)]
    terms.append((1, T))
    for i in range(1, n + 1):
        T = Diagram(n + 1)
        ins = list(T.inputs)
        merged = T.merge(ins[i - 1], ins[i])
        T.outputs = _box(T, ins[: i - 1] + [merged] + ins[i + 1:], m)
        terms.append((-1 if i % 2 else 1, T))
    T = Diagram(n + 1)
    outs = _box(T, T.inputs[:n], m)
    pieces = cocomb_split(T, T.inputs[n], m, left=True)
    T.outputs = [T.merge(outs[t], pieces[t]) for t in range(m)]
    terms.append((1 if (n + 1) % 2 == 0 else -1, T))
    return terms


def expand(T: Diagram, sub: Diagram):
    """Substitute ``sub`` for the box of ``T``; returns ``(diagram, id_map)``."""
    boxes = [oid for oid, op in T.ops.items() if op[0] == "box"]
    if len(boxes) != 1:
        raise BicomplexError("template must contain exactly one box")
    _, ins, outs, _ = T.ops[boxes[0]]
    D = T.copy()
    del D.ops[boxes[0]]
    idmap = {w: ins[k] for k, w in enumerate(sub.inputs)}
    for t, w in enumerate(sub.outputs):
        if w in idmap:
            D.rename_wire(outs[t], idmap[w])
        else:
            idmap[w] = outs[t]
    for oid, (kind, i, o, ex) in sub.ops.items():
        idmap.setdefault(oid, oid + BOX_OFFSET)
        for w in o:
            idmap.setdefault(w, w + BOX_OFFSET)
    for oid, (kind, i, o, ex) in sub.ops.items():
        D.ops[idmap[oid]] = (kind, tuple(idmap[w] for w in i), tuple(idmap[w] for w in o), ex)
    D.next_id = max(D.next_id, 2 * BOX_OFFSET)
    return D, idmap


class BiComplex:
    """Extended bicomplex of a bitensor datum, built lazily and cached."""

    def __init__(self, bd, threads=1, max_bidegree=MAX_BIDEGREE):
        self.bd = bd
        self.field = bd.field
        self.norm = Normalizer(bd)
        self.threads = max(1, int(threads or 1))
        self.max_bidegree = max_bidegree
        self._spaces = {}
        self._dt = {}
        self._dc = {}

    def check(self, i, j):
        if i < 0 or j < 0 or (i, j) == (0, 0):
            raise BicomplexError(f"bidegree ({i}, {j}) is not in the bicomplex")
        if (i == 0 or j == 0) and not self.bd.biunital:
            raise BicomplexError(f"bidegree ({i}, {j}) needs unit and counit data (datum is not biunital)")
        if i + j > self.max_bidegree + 2:
            raise BicomplexError(f"bidegree ({i}, {j}) exceeds the supported range")

    def space(self, i, j) -> BiSpace:
        self.check(i, j)
        if (i, j) not in self._spaces:
            self._spaces[(i, j)] = BiSpace(self, i, j)
        return self._spaces[(i, j)]

    def diff_tensor(self, i, j) -> ExactMatrix:
        """Matrix ``X^{i,j} -> X^{i+1,j}`` (rows target, cols source)."""
        if (i, j) not in self._dt:
            self._dt[(i, j)] = self._assemble((i, j), (i + 1, j), tensor_terms(i, j))
        return self._dt[(i, j)]

    def diff_coprod(self, i, j) -> ExactMatrix:
        """Matrix ``X^{i,j} -> X^{i,j+1}`` (rows target, cols source)."""
        if (i, j) not in self._dc:
            self._dc[(i, j)] = self._assemble((i, j), (i, j + 1), coprod_terms(i, j))
        return self._dc[(i, j)]

    # -- assembly ----------------------------------------------------------

    def _assemble(self, src, tgt, terms):
        S = self.space(*src)
        X = self.space(*tgt)
        norm = self.norm
        Pt = X.P
        prepared = []
        for sign, T in terms:
            FT, fmap = expand(T, S.P)
            GT, gmap = expand(T, S.Q)
            if norm.shape(FT) != norm.shape(Pt) or norm.shape(GT) != norm.shape(X.Q):
                raise BicomplexError(f"term of {src}->{tgt} is not commensurable with P/Q")
            prepared.append((self.field.one() if sign > 0 else self.field.neg(self.field.one()), FT, fmap, GT, gmap))
        words = list(X.blocks)

        def work(chunk):
            out = {}
            for A in chunk:
                self._rows_for(A, S, X, prepared, out)
            return out

        entries = {}
        if self.threads > 1 and len(words) > 1:
            size = max(1, len(words) // (4 * self.threads))
            chunks = [words[k:k + size] for k in range(0, len(words), size)]
            with ThreadPoolExecutor(max_workers=self.threads) as ex:
                for part in ex.map(work, chunks):
                    for key, v in part.items():
                        _acc(self.field, entries, key, v)
        else:
            entries = work(words)
        return ExactMatrix(self.field, X.dim, S.dim, entries)

    def _rows_for(self, A, S, X, prepared, out):
        F = self.field
        norm = self.norm
        NP = normalization_blocks(norm, X.P, A)
        qkeys = {c: {k: q for q, k in enumerate(ks)} for c, (_, ks, _) in normalization_blocks(norm, X.Q, A).items()}
        sub_ids_P = _sub_ids(S.P)
        sub_ids_Q = _sub_ids(S.Q)
        for sign, FT, fmap, GT, gmap in prepared:
            NF = normalization_blocks(norm, FT, A)
            inner = {fmap[x] for x in sub_ids_P} - set(fmap[w] for w in S.P.inputs) - set(fmap[w] for w in S.P.outputs)
            for c, (pchs, pks, pmat) in NP.items():
                if c not in X.blocks[A]:
                    continue
                fchs, fks, fmat = NF[c]
                finv = invert_dense(F, fmat) if fmat else []
                fk = {k: n for n, k in enumerate(fks)}
                gcache = {}
                for p_idx, prow in enumerate(pmat):
                    pre = {}
                    for k, v in zip(pks, prow):
                        if F.is_zero(v):
                            continue
                        for f_idx, w in enumerate(finv[fk[k]]):
                            if not F.is_zero(w):
                                _acc(F, pre, f_idx, F.mul(v, w))
                    for f_idx, cf in pre.items():
                        f = fchs[f_idx]
                        As = tuple(f[fmap[w]] for w in S.P.inputs)
                        subP = {x: f[fmap[x]] for x in sub_ids_P}
                        cs, sp = S.p_index[As][chan_key(subP)]
                        if As not in S.blocks or cs not in S.blocks[As]:
                            continue
                        outside = {k: v for k, v in f.items() if k not in inner}
                        for sq, qch in enumerate(S.q_chans[As][cs]):
                            gkey = (f_idx, sq)
                            if gkey not in gcache:
                                g = dict(outside)
                                for x in sub_ids_Q:
                                    g[gmap[x]] = qch[x]
                                gcache[gkey] = norm.normalize(GT, g)
                            col = S.label_index(As, cs, sq, sp)
                            base = F.mul(sign, cf)
                            for key, v in gcache[gkey].items():
                                row = X.label_index(A, c, qkeys[c][key], p_idx)
                                _acc(F, out, (row, col), F.mul(base, v))


def _sub_ids(D):
    ids = set(D.inputs)
    for oid, (_, _, outs, _) in D.ops.items():
        ids.add(oid)
        ids.update(outs)
    return ids


def _acc(F, d, key, v):
    x = F.add(d[key], v) if key in d else v
    if F.is_zero(x):
        d.pop(key, None)
    else:
        d[key] = x
