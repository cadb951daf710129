"""String diagrams of bitensor functor expressions and their commensurations.

A :class:`Diagram` realizes a formal expression in ``Id, (x), Delta, I, eps``
and composition: wires carry objects, ops are ``m`` (tensor product, two
inputs), ``s`` (coproduct, two outputs), ``u`` (unit object, no inputs) and
``e`` (counit, no outputs).  Inputs and outputs are ordered lists of wires;
``(x)``-powers are implicit in having several wires side by side.

Evaluated on simple inputs, a diagram is a semisimple object of
``C^{(x)j}``; a *channel* labels every wire with a simple and every op with a
multiplicity index and is stored as a dict ``{id: value}`` (wire and op ids
share one namespace).

Normalization rewrites any diagram to the canonical shape of
``Q(i, j) = (x^i)^{j} sh (^jDelta)^{i}``: every input split by a left
co-comb, every output a right comb of pieces.  Rewrites run in three phases:
push Delta and eps towards the inputs (kappa, counit-of-product, tau, eta),
then clean the co-combs (r, l, beta), then the combs (rho, lambda, alpha).
Every step is invertible, so the normalization map is an isomorphism onto
the normal-form channels and commensurations are ``norm(G)^-1 norm(F)``.
"""
from __future__ import annotations

import itertools

from ..algebra import invert_dense
from .trees import CoherenceError

BOX_OFFSET = 1_000_000


class Diagram:
    def __init__(self, n_inputs=0):
        self.ops = {}  # id -> (kind, ins, outs, extra)
        self.next_id = 0
        self.inputs = [self.fresh() for _ in range(n_inputs)]
        self.outputs = []

    def fresh(self):
        i = self.next_id
        self.next_id += 1
        return i

    def add(self, kind, ins, n_out, extra=None):
        oid = self.fresh()
        outs = tuple(self.fresh() for _ in range(n_out))
        self.ops[oid] = (kind, tuple(ins), outs, extra)
        return oid, outs

    def merge(self, a, b):
        return self.add("m", (a, b), 1)[1][0]

    def split(self, a):
        return self.add("s", (a,), 2)[1]

    def unit(self):
        return self.add("u", (), 1)[1][0]

    def counit(self, a):
        self.add("e", (a,), 0)

    def box(self, ins, n_out, extra):
        return self.add("box", ins, n_out, extra)[1]

    def copy(self):
        d = Diagram()
        d.ops = dict(self.ops)
        d.next_id = self.next_id
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        return d

    def producers(self):
        return {w: oid for oid, (_, _, outs, _) in self.ops.items() for w in outs}

    def consumers(self):
        return {w: oid for oid, (_, ins, _, _) in self.ops.items() for w in ins}

    def rename_wire(self, old, new):
        """Make every use of wire ``old`` use ``new`` instead."""
        for oid, (k, ins, outs, ex) in list(self.ops.items()):
            if old in ins:
                self.ops[oid] = (k, tuple(new if w == old else w for w in ins), outs, ex)
        self.outputs = [new if w == old else w for w in self.outputs]

    def signature(self):
        return (tuple(self.inputs), tuple(self.outputs), tuple(sorted((k, v[0], v[1], v[2]) for k, v in self.ops.items())))

    def topo_order(self):
        prod = self.producers()
        deps = {oid: {prod[w] for w in ins if w in prod} for oid, (_, ins, _, _) in self.ops.items()}
        order, done = [], set()
        while len(order) < len(deps):
            ready = [o for o in sorted(deps) if o not in done and deps[o] <= done]
            if not ready:
                raise CoherenceError("diagram has a cycle")
            order.append(ready[0])
            done.add(ready[0])
        return order

    def __repr__(self):
        return f"Diagram(in={self.inputs}, out={self.outputs}, ops={len(self.ops)})"


# -- builders --------------------------------------------------------------

def comb_merge(D, wires, right=True):
    """Iterated product of ``wires`` (right or left comb); the unit if empty."""
    wires = list(wires)
    if not wires:
        return D.unit()
    if right:
        w = wires[-1]
        for x in reversed(wires[:-1]):
            w = D.merge(x, w)
    else:
        w = wires[0]
        for x in wires[1:]:
            w = D.merge(w, x)
    return w


def cocomb_split(D, w, j, left=True):
    """Iterated coproduct of ``w`` into ``j`` pieces; the counit if ``j == 0``."""
    if j == 0:
        D.counit(w)
        return []
    pieces = [w]
    for _ in range(j - 1):
        if left:
            a, b = D.split(pieces[0])
            pieces = [a, b] + pieces[1:]
        else:
            a, b = D.split(pieces[-1])
            pieces = pieces[:-1] + [a, b]
    return pieces


def P(i, j):
    """``Delta^j (^i (x))``: left-comb product, then right co-comb coproduct."""
    if i == 0 and j == 0:
        raise CoherenceError("bidegree (0, 0) is excluded")
    D = Diagram(i)
    w = comb_merge(D, D.inputs, right=False)
    D.outputs = cocomb_split(D, w, j, left=False)
    return D


def Q(i, j):
    """``(x^i)^{j} sh (^jDelta)^{i}``: left co-comb per input, right comb per output."""
    if i == 0 and j == 0:
        raise CoherenceError("bidegree (0, 0) is excluded")
    D = Diagram(i)
    pieces = [cocomb_split(D, w, j, left=True) for w in list(D.inputs)]
    D.outputs = [comb_merge(D, [pieces[s][t] for s in range(i)], right=True) for t in range(j)]
    return D


# -- channel enumeration -----------------------------------------------------

class Tables:
    """Row indices and column lists of every structure block of a bitensor datum."""

    def __init__(self, bd):
        self.bd = bd
        base = bd.base
        self.field = bd.field
        self.N = base.fusion
        self.M = bd.delta
        self.unit = base.unit
        self.eps = bd.counit
        self.n = bd.n

        def idx(blocks, left, right):
            rows = {k: {r: i for i, r in enumerate(left(*k))} for k in blocks}
            cols = {k: right(*k) for k in blocks}
            return rows, cols

        self.F = (base.F, *idx(base.F, base.F_left, base.F_right))
        self.coF = (bd.coF, *idx(bd.coF, bd.coF_left, bd.coF_right))
        self.kappa = (bd.kappa, *idx(bd.kappa, bd.kappa_left, bd.kappa_right))
        if bd.biunital:
            ci = bd.counit_iso
            self.delta = (ci["delta"], *idx(ci["delta"], bd.delta_left, bd.delta_right))
            self.tau = (ci["tau"], *idx(ci["tau"], bd.tau_left, bd.tau_right))
            self.eta = (ci["eta"], {(): {r: i for i, r in enumerate(bd.eta_left())}}, {(): [()]})
            self.r = (ci["r"], *idx(ci["r"], bd.r_left, lambda a: [()]))
            self.l = (ci["l"], *idx(ci["l"], bd.l_left, lambda a: [()]))
        self.rho = {a: (base.unit_block("rho", a), {r: i for i, r in enumerate(base.rho_left(a))}) for a in range(bd.n)}
        self.lam = {a: (base.unit_block("lambda", a), {r: i for i, r in enumerate(base.lambda_left(a))}) for a in range(bd.n)}

    def apply(self, table, key, row):
        """Nonzero ``(column_channel, coefficient)`` pairs of one block row."""
        blocks, rows, cols = table
        if key not in blocks:
            raise CoherenceError(f"missing structure block {key}")
        F = self.field
        r = rows[key][row]
        return [(cols[key][c], v) for c, v in enumerate(blocks[key][r]) if not F.is_zero(v)]


def enumerate_channels(D, tables: Tables, labels):
    """All channels of ``D`` with the given input labels, in a fixed order."""
    if len(labels) != len(D.inputs):
        raise CoherenceError(f"diagram has {len(D.inputs)} inputs, got {len(labels)} labels")
    n, N, M, unit, eps = tables.n, tables.N, tables.M, tables.unit, tables.eps
    chans = [dict(zip(D.inputs, labels))]
    for oid in D.topo_order():
        kind, ins, outs, _ = D.ops[oid]
        nxt = []
        for ch in chans:
            if kind == "m":
                a, b = ch[ins[0]], ch[ins[1]]
                for c in range(n):
                    for mu in range(N[a][b][c]):
                        new = dict(ch)
                        new[outs[0]] = c
                        new[oid] = mu
                        nxt.append(new)
            elif kind == "s":
                a = ch[ins[0]]
                for b, c in itertools.product(range(n), repeat=2):
                    for mu in range(M[a][b][c]):
                        new = dict(ch)
                        new[outs[0]] = b
                        new[outs[1]] = c
                        new[oid] = mu
                        nxt.append(new)
            elif kind == "u":
                for u in range(n):
                    for i in range(unit[u]):
                        new = dict(ch)
                        new[outs[0]] = u
                        new[oid] = i
                        nxt.append(new)
            elif kind == "e":
                if eps is None:
                    raise CoherenceError("counit used on data without a counit")
                for nu in range(eps[ch[ins[0]]]):
                    new = dict(ch)
                    new[oid] = nu
                    nxt.append(new)
            else:
                raise CoherenceError(f"cannot enumerate op kind {kind!r}")
        chans = nxt
    return chans


def grading(D, ch):
    return tuple(ch[w] for w in D.outputs)


def chan_key(ch):
    return tuple(sorted(ch.items()))


# -- rewrite rules -----------------------------------------------------------
# Each finder yields (anchor_op, rule, data); each rule returns the rewritten
# diagram and a channel map ``ch -> [(ch', coef)]``.


def _find(D, rules):
    prod, cons = D.producers(), D.consumers()
    found = []
    for oid, (kind, ins, outs, _) in D.ops.items():
        if kind == "s":
            p = prod.get(ins[0])
            if "kappa" in rules and p is not None and D.ops[p][0] == "m":
                found.append((oid, "kappa", p))
            if "tau" in rules and p is not None and D.ops[p][0] == "u":
                found.append((oid, "tau", p))
            c1, c0 = cons.get(outs[1]), cons.get(outs[0])
            if "r" in rules and c1 is not None and D.ops[c1][0] == "e":
                found.append((oid, "r", c1))
            if "l" in rules and c0 is not None and D.ops[c0][0] == "e":
                found.append((oid, "l", c0))
            if "beta" in rules and c1 is not None and D.ops[c1][0] == "s":
                found.append((oid, "beta", c1))
        elif kind == "e":
            p = prod.get(ins[0])
            if "delta" in rules and p is not None and D.ops[p][0] == "m":
                found.append((oid, "delta", p))
            if "eta" in rules and p is not None and D.ops[p][0] == "u":
                found.append((oid, "eta", p))
        elif kind == "m":
            p0, p1 = prod.get(ins[0]), prod.get(ins[1])
            if "rho" in rules and p1 is not None and D.ops[p1][0] == "u":
                found.append((oid, "rho", p1))
            if "lambda" in rules and p0 is not None and D.ops[p0][0] == "u":
                found.append((oid, "lambda", p0))
            if "alpha" in rules and p0 is not None and D.ops[p0][0] == "m":
                found.append((oid, "alpha", p0))
    return found


def _rewrite(D, anchor, rule, other, T: Tables):
    D = D.copy()
    F = T.field
    if rule == "kappa":
        S, Mg = anchor, other
        _, (w,), (c1w, c2w), _ = D.ops[S]
        _, (aw, bw), _, _ = D.ops[Mg]
        del D.ops[S], D.ops[Mg]
        sa, (a1w, a2w) = D.add("s", (aw,), 2)
        sb, (b1w, b2w) = D.add("s", (bw,), 2)
        m1 = D.fresh()
        m2 = D.fresh()
        D.ops[m1] = ("m", (a1w, b1w), (c1w,), None)
        D.ops[m2] = ("m", (a2w, b2w), (c2w,), None)

        def fn(ch):
            key = (ch[aw], ch[bw], ch[c1w], ch[c2w])
            out = []
            for (a1, a2, al, b1, b2, be, g1, g2), v in T.apply(T.kappa, key, (ch[w], ch[Mg], ch[S])):
                new = {k: x for k, x in ch.items() if k not in (w, Mg, S)}
                new.update({a1w: a1, a2w: a2, sa: al, b1w: b1, b2w: b2, sb: be, m1: g1, m2: g2})
                out.append((new, v))
            return out

    elif rule == "delta":
        E, Mg = anchor, other
        _, (w,), _, _ = D.ops[E]
        _, (aw, bw), _, _ = D.ops[Mg]
        del D.ops[E], D.ops[Mg]
        ea, _ = D.add("e", (aw,), 0)
        eb, _ = D.add("e", (bw,), 0)

        def fn(ch):
            out = []
            for (x, y), v in T.apply(T.delta, (ch[aw], ch[bw]), (ch[w], ch[Mg], ch[E])):
                new = {k: z for k, z in ch.items() if k not in (w, Mg, E)}
                new.update({ea: x, eb: y})
                out.append((new, v))
            return out

    elif rule == "tau":
        S, U = anchor, other
        _, (w,), (c1w, c2w), _ = D.ops[S]
        del D.ops[S], D.ops[U]
        u1 = D.fresh()
        u2 = D.fresh()
        D.ops[u1] = ("u", (), (c1w,), None)
        D.ops[u2] = ("u", (), (c2w,), None)

        def fn(ch):
            out = []
            for (x, y), v in T.apply(T.tau, (ch[c1w], ch[c2w]), (ch[w], ch[U], ch[S])):
                new = {k: z for k, z in ch.items() if k not in (w, U, S)}
                new.update({u1: x, u2: y})
                out.append((new, v))
            return out

    elif rule == "eta":
        E, U = anchor, other
        _, (w,), _, _ = D.ops[E]
        del D.ops[E], D.ops[U]

        def fn(ch):
            out = []
            for _, v in T.apply(T.eta, (), (ch[w], ch[U], ch[E])):
                out.append(({k: z for k, z in ch.items() if k not in (w, U, E)}, v))
            return out

    elif rule in ("r", "l"):
        S, E = anchor, other
        _, (aw,), (x0, x1), _ = D.ops[S]
        keep, gone = (x0, x1) if rule == "r" else (x1, x0)
        del D.ops[S], D.ops[E]
        D.rename_wire(keep, aw)
        table = T.r if rule == "r" else T.l

        def fn(ch):
            out = []
            for _, v in T.apply(table, (ch[aw],), (ch[gone], ch[S], ch[E])):
                out.append(({k: z for k, z in ch.items() if k not in (keep, gone, S, E)}, v))
            return out

    elif rule == "beta":
        S1, S2 = anchor, other
        _, (aw,), (b1w, nw), _ = D.ops[S1]
        _, _, (b2w, b3w), _ = D.ops[S2]
        del D.ops[S1], D.ops[S2]
        mw = D.fresh()
        s1 = D.fresh()
        s2 = D.fresh()
        D.ops[s1] = ("s", (aw,), (mw, b3w), None)
        D.ops[s2] = ("s", (mw,), (b1w, b2w), None)

        def fn(ch):
            key = (ch[aw], ch[b1w], ch[b2w], ch[b3w])
            out = []
            for (m, mu, nu), v in T.apply(T.coF, key, (ch[nw], ch[S1], ch[S2])):
                new = {k: z for k, z in ch.items() if k not in (nw, S1, S2)}
                new.update({mw: m, s1: mu, s2: nu})
                out.append((new, v))
            return out

    elif rule in ("rho", "lambda"):
        Mg, U = anchor, other
        _, ins, (ow,), _ = D.ops[Mg]
        aw, uw = (ins[0], ins[1]) if rule == "rho" else (ins[1], ins[0])
        del D.ops[Mg], D.ops[U]
        D.rename_wire(ow, aw)
        table = T.rho if rule == "rho" else T.lam

        def fn(ch):
            block, rows = table[ch[aw]]
            r = rows[(ch[uw], ch[U], ch[Mg])]
            v = block[r][0]
            if F.is_zero(v):
                return []
            return [({k: z for k, z in ch.items() if k not in (ow, uw, U, Mg)}, v)]

    elif rule == "alpha":
        M2, M1 = anchor, other
        _, (w, zw), (ow,), _ = D.ops[M2]
        _, (xw, yw), _, _ = D.ops[M1]
        del D.ops[M2], D.ops[M1]
        nw = D.fresh()
        m1 = D.fresh()
        m2 = D.fresh()
        D.ops[m1] = ("m", (yw, zw), (nw,), None)
        D.ops[m2] = ("m", (xw, nw), (ow,), None)

        def fn(ch):
            key = (ch[xw], ch[yw], ch[zw], ch[ow])
            out = []
            for (n, rho, sig), v in T.apply(T.F, key, (ch[w], ch[M1], ch[M2])):
                new = {k: z for k, z in ch.items() if k not in (w, M1, M2)}
                new.update({nw: n, m1: rho, m2: sig})
                out.append((new, v))
            return out

    else:
        raise CoherenceError(f"unknown rule {rule}")
    return D, fn


PHASES = (
    ("kappa", "delta", "tau", "eta"),
    ("r", "l", "beta"),
    ("rho", "lambda", "alpha"),
)
ALL_RULES = tuple(r for ph in PHASES for r in ph)


def plan(D, T: Tables, strategy="standard"):
    """Rewrite steps to normal form.

    ``standard``: phases in order, outermost-first (lowest anchor id) within a phase.
    ``alternate``: one pool of all rules, later phases preferred, highest
    anchor id first (so products are reassociated before Delta meets them).  Coherence
    says both give the same isomorphism; comparing them validates the data.
    """
    steps = []
    cur = D
    guard = 0
    if strategy == "standard":
        for phase in PHASES:
            while True:
                found = _find(cur, phase)
                if not found:
                    break
                anchor, rule, other = min(found, key=lambda f: (f[0], phase.index(f[1])))
                cur, fn = _rewrite(cur, anchor, rule, other, T)
                steps.append(fn)
                guard += 1
                if guard > 10000:
                    raise CoherenceError("normalization does not terminate")
    elif strategy == "alternate":
        while True:
            found = _find(cur, ALL_RULES)
            if not found:
                break
            anchor, rule, other = max(found, key=lambda f: (ALL_RULES.index(f[1]), f[0]))
            cur, fn = _rewrite(cur, anchor, rule, other, T)
            steps.append(fn)
            guard += 1
            if guard > 10000:
                raise CoherenceError("normalization does not terminate")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return steps, cur


def nf_walk(D, ch=None):
    """Structural walk of a normal-form diagram: ``(shape, key)``.

    Visits each input's co-comb (preorder) and each output's comb (preorder);
    the key lists every wire label and op multiplicity met on the way.
    """
    prod, cons = D.producers(), D.consumers()
    shape, key = [], []

    def down(w):
        op = cons.get(w)
        kind = D.ops[op][0] if op is not None else None
        if kind == "s":
            shape.append("S")
            if ch is not None:
                key.append((ch[w], ch[op]))
            outs = D.ops[op][2]
            down(outs[0])
            down(outs[1])
        elif kind == "e":
            shape.append("E")
            if ch is not None:
                key.append((ch[w], ch[op]))
        else:
            shape.append("x")
            if ch is not None:
                key.append((ch[w],))

    def up(w):
        op = prod.get(w)
        kind = D.ops[op][0] if op is not None else None
        if kind == "m":
            shape.append("M")
            if ch is not None:
                key.append((ch[w], ch[op]))
            ins = D.ops[op][1]
            up(ins[0])
            up(ins[1])
        elif kind == "u":
            shape.append("U")
            if ch is not None:
                key.append((ch[w], ch[op]))
        elif kind in (None, "s"):
            shape.append("y")
            if ch is not None:
                key.append((ch[w],))
        else:
            raise CoherenceError(f"not a normal form: output fed by {kind!r}")

    for w in D.inputs:
        shape.append("|")
        down(w)
    for w in D.outputs:
        shape.append("/")
        up(w)
    return tuple(shape), tuple(key)


class Normalizer:
    """Cached normalization plans for the diagrams of one bitensor datum."""

    def __init__(self, bd):
        self.bd = bd
        self.tables = Tables(bd)
        self.field = bd.field
        self._plans = {}

    def plan(self, D, strategy="standard"):
        sig = (D.signature(), strategy)
        hit = self._plans.get(sig)
        if hit is None:
            steps, nf = plan(D, self.tables, strategy)
            hit = (steps, nf, nf_walk(nf)[0])
            self._plans[sig] = hit
        return hit

    def normalize(self, D, ch, strategy="standard"):
        """``{nf_key: coefficient}`` for one channel of ``D``."""
        F = self.field
        steps, nf, _ = self.plan(D, strategy)
        vec = {chan_key(ch): (ch, F.one())}
        for fn in steps:
            nxt = {}
            for c, v in vec.values():
                for new, w in fn(c):
                    k = chan_key(new)
                    x = F.mul(v, w)
                    if k in nxt:
                        s = F.add(nxt[k][1], x)
                        if F.is_zero(s):
                            del nxt[k]
                        else:
                            nxt[k] = (new, s)
                    elif not F.is_zero(x):
                        nxt[k] = (new, x)
            vec = nxt
        out = {}
        for c, v in vec.values():
            out[nf_walk(nf, c)[1]] = v
        return out

    def shape(self, D, strategy="standard"):
        return self.plan(D, strategy)[2]


def nf_basis(norm: Normalizer, D, labels):
    """Normal-form keys reachable from ``D`` on ``labels``, grouped by grading.

    Uses the canonical ``Q`` diagram of the same shape when ``D`` is one;
    otherwise the keys of the channels of the normal-form diagram.
    """
    _, nf, _ = norm.plan(D)
    out = {}
    for ch in enumerate_channels(nf, norm.tables, labels):
        out.setdefault(grading(nf, ch), []).append(nf_walk(nf, ch)[1])
    return out


def normalization_blocks(norm: Normalizer, D, labels, strategy="standard"):
    """Per grading: ``(channels, keys, matrix)`` with ``matrix[f][k]`` the normalization."""
    F = norm.field
    chans = enumerate_channels(D, norm.tables, labels)
    keys = nf_basis(norm, D, labels)
    groups = {}
    for ch in chans:
        groups.setdefault(grading(D, ch), []).append(ch)
    out = {}
    for g in sorted(set(groups) | set(keys)):
        chs = groups.get(g, [])
        ks = keys.get(g, [])
        if len(chs) != len(ks):
            raise CoherenceError(f"grading {g}: {len(chs)} channels but {len(ks)} normal-form channels")
        kidx = {k: i for i, k in enumerate(ks)}
        mat = []
        for ch in chs:
            row = [F.zero()] * len(ks)
            for k, v in norm.normalize(D, ch, strategy).items():
                row[kidx[k]] = v
            mat.append(row)
        out[g] = (chs, ks, mat)
    return out


def commensuration(norm: Normalizer, src: Diagram, tgt: Diagram, labels):
    """``gamma^{src,tgt}`` on simple inputs ``labels``.

    Returns ``{grading: (src_channels, tgt_channels, matrix)}`` with
    ``matrix[r][c]`` the coefficient of target channel ``c`` in the image of
    source channel ``r``.
    """
    s_shape, t_shape = norm.shape(src), norm.shape(tgt)
    if s_shape != t_shape:
        raise CoherenceError(f"not commensurable: normal forms {''.join(s_shape)} and {''.join(t_shape)}")
    F = norm.field
    A = normalization_blocks(norm, src, labels)
    B = normalization_blocks(norm, tgt, labels)
    out = {}
    for g in sorted(set(A) | set(B)):
        chs_a, ks_a, ma = A.get(g, ([], [], []))
        chs_b, ks_b, mb = B.get(g, ([], [], []))
        if not chs_a and not chs_b:
            continue
        perm = [ks_b.index(k) for k in ks_a]  # reorder target keys to source-key order
        mb_cols = [[row[p] for p in perm] for row in mb]
        inv = invert_dense(F, mb_cols) if mb_cols else []
        mat = []
        for row in ma:
            acc = [F.zero()] * len(chs_b)
            for k, v in enumerate(row):
                if F.is_zero(v):
                    continue
                for c in range(len(chs_b)):
                    w = inv[k][c]
                    if not F.is_zero(w):
                        acc[c] = F.add(acc[c], F.mul(v, w))
            mat.append(acc)
        out[g] = (chs_a, chs_b, mat)
    return out


# -- coherence validation of bitensor data -----------------------------------

def _extra_diagrams(biunital):
    out = {}
    if biunital:
        D = Diagram(2)
        a, b = D.inputs
        out["unit_triangle"] = D
        D.outputs = [D.merge(D.merge(a, D.unit()), b)]
        D = Diagram(1)
        x, y = D.split(D.inputs[0])
        n1, n2 = D.split(y)
        D.counit(n1)
        D.outputs = [x, n2]
        out["counit_triangle"] = D
        D = Diagram(1)
        D.outputs = list(D.split(D.merge(D.inputs[0], D.unit())))
        out["kappa_unit"] = D
        D = Diagram(2)
        x, y = D.split(D.merge(*D.inputs))
        D.counit(x)
        D.outputs = [y]
        out["kappa_counit"] = D
        D = Diagram(1)
        D.counit(D.merge(D.unit(), D.inputs[0]))
        out["counit_unit"] = D
    return out


def critical_diagrams(bd):
    """Diagrams on which the two normalization strategies must agree."""
    out = {
        "dual_pentagon": P(1, 4),
        "kappa_associator": P(3, 2),
        "kappa_coassociator": P(2, 3),
        "kappa_square": P(2, 2),
    }
    if bd.biunital:
        out["counit_product"] = P(3, 0)
        out["unit_coproduct"] = P(0, 3)
    out.update(_extra_diagrams(bd.biunital))
    return out


def validate_bitensor(bd, norm=None):
    """Compare the standard and alternate normalizations on the critical diagrams."""
    norm = norm or Normalizer(bd)
    checks = {}
    ok = True
    for name, D in critical_diagrams(bd).items():
        fails = []
        count = 0
        for labels in itertools.product(range(bd.n), repeat=len(D.inputs)):
            for ch in enumerate_channels(D, norm.tables, labels):
                count += 1
                if norm.normalize(D, ch, "standard") != norm.normalize(D, ch, "alternate"):
                    fails.append({"tuple": list(labels), "grading": list(grading(D, ch))})
                    break
        checks[name] = {"ok": not fails, "instances": count, "failures": fails}
        ok = ok and not fails
    return {"ok": ok, "checks": checks}
