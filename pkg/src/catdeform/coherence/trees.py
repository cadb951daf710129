"""Parenthesization trees, fusion-tree channels and generalized associators.

A tree is either a leaf (an ``int``, the leaf position) or a pair ``(L, R)``.
A *channel* of a tree over a word of simples is a basis vector of the
multiplicity space of the iterated product: a leaf channel is the simple
itself, a node channel is ``(label, mult, left_channel, right_channel)``.

Morphisms between two parenthesizations of the same word are stored as sparse
maps ``{source_channel: {target_channel: coefficient}}``; they always preserve
the total (root) label.
"""
from __future__ import annotations

from ..algebra import Field


class CoherenceError(ValueError):
    pass


# -- trees -------------------------------------------------------------------

def is_leaf(t):
    return isinstance(t, int)


def n_leaves(t):
    return 1 if is_leaf(t) else n_leaves(t[0]) + n_leaves(t[1])


def left_comb(n, start=0):
    if n < 1:
        raise CoherenceError("a tree needs at least one leaf")
    t = start
    for i in range(1, n):
        t = (t, start + i)
    return t


def right_comb(n, start=0):
    if n < 1:
        raise CoherenceError("a tree needs at least one leaf")
    t = start + n - 1
    for i in range(n - 2, -1, -1):
        t = (start + i, t)
    return t


def shift(t, k):
    if is_leaf(t):
        return t + k
    return (shift(t[0], k), shift(t[1], k))


def subtree(t, path):
    for step in path:
        t = t[step]
    return t


def replace(t, path, new):
    if not path:
        return new
    if path[0] == 0:
        return (replace(t[0], path[1:], new), t[1])
    return (t[0], replace(t[1], path[1:], new))


def leaf_path(t, i, path=()):
    if is_leaf(t):
        return path if t == i else None
    p = leaf_path(t[0], i, path + (0,))
    return p if p is not None else leaf_path(t[1], i, path + (1,))


def split_leaf(t, i):
    """Replace leaf ``i`` by the pair ``(i, i + 1)`` and renumber later leaves."""
    if is_leaf(t):
        if t == i:
            return (i, i + 1)
        return t + 1 if t > i else t
    return (split_leaf(t[0], i), split_leaf(t[1], i))


def rotate(t, path, inverse=False):
    s = subtree(t, path)
    if not inverse:
        (x, y), z = s
        return replace(t, path, (x, (y, z)))
    x, (y, z) = s
    return replace(t, path, ((x, y), z))


def rotation_moves(tree, strategy="root_first"):
    """Forward rotations taking ``tree`` to the right comb.

    ``root_first`` rotates the outermost redex first (the canonical path);
    ``deep_first`` rotates the deepest, rightmost redex first.  By Mac Lane
    coherence both must give the same associator.
    """
    moves = []
    t = tree
    while True:
        redexes = []

        def walk(s, path, depth):
            if is_leaf(s):
                return
            if not is_leaf(s[0]):
                redexes.append((depth, path))
            walk(s[0], path + (0,), depth + 1)
            walk(s[1], path + (1,), depth + 1)

        walk(t, (), 0)
        if not redexes:
            return moves
        if strategy == "root_first":
            path = redexes[0][1]
        elif strategy == "deep_first":
            path = max(redexes, key=lambda r: (r[0], r[1]))[1]
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        moves.append(path)
        t = rotate(t, path)


def left_moves(tree):
    """Inverse rotations taking ``tree`` to the left comb (outermost first)."""
    moves = []
    t = tree
    while True:
        found = None

        def walk(s, path):
            nonlocal found
            if is_leaf(s) or found is not None:
                return
            if not is_leaf(s[1]):
                found = path
                return
            walk(s[0], path + (0,))
            walk(s[1], path + (1,))

        walk(t, ())
        if found is None:
            return moves
        moves.append(found)
        t = rotate(t, found, inverse=True)


# -- channels ----------------------------------------------------------------

def total(ch):
    return ch if isinstance(ch, int) else ch[0]


def channel_leaves(ch):
    if isinstance(ch, int):
        return (ch,)
    return channel_leaves(ch[2]) + channel_leaves(ch[3])


def channel_at(ch, path):
    for step in path:
        ch = ch[2 + step]
    return ch


def channel_replace(ch, path, new):
    if not path:
        return new
    l, mu, a, b = ch
    if path[0] == 0:
        return (l, mu, channel_replace(a, path[1:], new), b)
    return (l, mu, a, channel_replace(b, path[1:], new))


def apply_at(ch, path, fn):
    """Apply ``fn`` (channel -> list of (channel, coef)) to the subchannel at ``path``."""
    sub = channel_at(ch, path)
    return [(channel_replace(ch, path, new), c) for new, c in fn(sub)]


def add_into(ring, acc, key, val):
    if key in acc:
        v = ring.add(acc[key], val)
        if ring.is_zero(v):
            del acc[key]
        else:
            acc[key] = v
    elif not ring.is_zero(val):
        acc[key] = val


def compose_maps(ring, first, second):
    """``second`` after ``first``; both sparse maps."""
    out = {}
    for src, vec in first.items():
        acc = {}
        for mid, c in vec.items():
            for tgt, d in second.get(mid, {}).items():
                add_into(ring, acc, tgt, ring.mul(c, d))
        out[src] = acc
    return out


class TreeEngine:
    """Channel bases and coherence morphisms for one :class:`FusionDatum`."""

    def __init__(self, datum, ring=None):
        self.datum = datum
        self.field: Field = datum.field
        self.ring = ring or datum.field
        self._chan_cache = {}
        self._assoc_cache = {}
        self._left_idx = {k: {ch: i for i, ch in enumerate(datum.F_left(*k))} for k in datum.F}
        self._right_idx = {k: {ch: i for i, ch in enumerate(datum.F_right(*k))} for k in datum.F}
        self._left_list = {k: datum.F_left(*k) for k in datum.F}
        self._right_list = {k: datum.F_right(*k) for k in datum.F}

    # enumeration

    def _enum(self, tree, word):
        if is_leaf(tree):
            return [word[tree]]
        N = self.datum.fusion
        out = []
        lefts = self._enum(tree[0], word)
        rights = self._enum(tree[1], word)
        for cl in lefts:
            a = total(cl)
            for cr in rights:
                b = total(cr)
                row = N[a][b]
                for c in range(self.datum.n):
                    for mu in range(row[c]):
                        out.append((c, mu, cl, cr))
        return out

    def channels(self, tree, word):
        """``{total: [channels...]}`` plus an index ``{channel: (total, pos)}``."""
        key = (tree, tuple(word))
        hit = self._chan_cache.get(key)
        if hit is None:
            if n_leaves(tree) != len(word):
                raise CoherenceError(f"tree has {n_leaves(tree)} leaves but word has {len(word)} letters")
            grouped = {}
            for ch in self._enum(tree, word):
                grouped.setdefault(total(ch), []).append(ch)
            grouped = dict(sorted(grouped.items()))
            index = {ch: (k, i) for k, chs in grouped.items() for i, ch in enumerate(chs)}
            hit = (grouped, index)
            self._chan_cache[key] = hit
        return hit

    def multiplicities(self, tree, word):
        grouped, _ = self.channels(tree, word)
        return {k: len(v) for k, v in grouped.items()}

    # elementary moves

    def _rot(self, ch, block_src=None):
        l, nu, left, cz = ch
        m, mu, cx, cy = left
        key = (total(cx), total(cy), total(cz), l)
        r = self._left_idx[key][(m, mu, nu)]
        row = self.datum.F[key][r]
        out = []
        for c, coef in enumerate(row):
            if not self.field.is_zero(coef):
                n, rho, sig = self._right_list[key][c]
                out.append(((l, sig, cx, (n, rho, cy, cz)), coef))
        return out

    def _rot_inv(self, ch):
        l, sig, cx, right = ch
        n, rho, cy, cz = right
        key = (total(cx), total(cy), total(cz), l)
        c = self._right_idx[key][(n, rho, sig)]
        row = self.datum.Finv[key][c]
        out = []
        for r, coef in enumerate(row):
            if not self.field.is_zero(coef):
                m, mu, nu = self._left_list[key][r]
                out.append(((l, nu, (m, mu, cx, cy), cz), coef))
        return out

    def apply_moves(self, vec, moves, inverse=False):
        """Push a sparse vector through rotations at the given paths (field coefficients)."""
        F = self.field
        fn = self._rot_inv if inverse else self._rot
        for path in moves:
            nxt = {}
            for ch, c in vec.items():
                for new, d in apply_at(ch, path, fn):
                    add_into(F, nxt, new, F.mul(c, d))
            vec = nxt
        return vec

    def associator(self, src, tgt, word, via="right", strategy="root_first"):
        """Sparse map of the generalized associator ``src -> tgt`` over ``word``."""
        word = tuple(word)
        key = (src, tgt, word, via, strategy)
        hit = self._assoc_cache.get(key)
        if hit is not None:
            return hit
        if n_leaves(src) != n_leaves(tgt):
            raise CoherenceError("source and target trees have different leaf counts")
        grouped, _ = self.channels(src, word)
        out = {}
        if via == "right":
            down = rotation_moves(src, strategy)
            up = list(reversed(rotation_moves(tgt, strategy)))
            for chs in grouped.values():
                for ch in chs:
                    v = self.apply_moves({ch: self.field.one()}, down)
                    out[ch] = self.apply_moves(v, up, inverse=True)
        elif via == "left":
            down = left_moves(src)
            up = list(reversed(left_moves(tgt)))
            for chs in grouped.values():
                for ch in chs:
                    v = self.apply_moves({ch: self.field.one()}, down, inverse=True)
                    out[ch] = self.apply_moves(v, up)
        else:
            raise ValueError(f"unknown route {via!r}")
        self._assoc_cache[key] = out
        return out

    def identity_map(self, tree, word):
        grouped, _ = self.channels(tree, word)
        one = self.ring.one()
        return {ch: {ch: one} for chs in grouped.values() for ch in chs}

    def lift_field_map(self, m):
        """Re-express a field-valued map over ``self.ring`` (for truncated-poly runs)."""
        if self.ring is self.field:
            return m
        return {s: {t: self.ring.lift(c) for t, c in v.items()} for s, v in m.items()}

    def to_matrices(self, m, src, tgt, word):
        """Dense per-total blocks (rows: target channels, cols: source channels)."""
        gs, _ = self.channels(src, word)
        gt, it = self.channels(tgt, word)
        R = self.ring
        out = {}
        for k, chs in gs.items():
            rows = len(gt.get(k, []))
            block = [[R.zero()] * len(chs) for _ in range(rows)]
            for j, ch in enumerate(chs):
                for t, c in m.get(ch, {}).items():
                    kk, i = it[t]
                    block[i][j] = c
            out[k] = block
        return out


# -- placements of cochain components inside bigger trees ----------------------

class Placement:
    """Where a cochain component sits inside a bigger tree.

    The component maps ``inner_src -> inner_tgt`` (trees on ``n`` leaves).  It
    is applied at ``path`` of ``big_src``; if ``merge_leaf`` is set, that leaf
    of the inner trees stands for a fused pair ``A_i (x) A_{i+1}`` and the
    fusion vertex is carried along by naturality.
    """

    def __init__(self, big_src, big_tgt, path, inner_src, inner_tgt, merge_leaf=None):
        self.big_src = big_src
        self.big_tgt = big_tgt
        self.path = tuple(path)
        self.inner_src = inner_src
        self.inner_tgt = inner_tgt
        self.merge_leaf = merge_leaf
        if merge_leaf is not None:
            self._src_leaf_path = leaf_path(inner_src, merge_leaf)
            self._tgt_leaf_path = leaf_path(inner_tgt, merge_leaf)

    def expand(self, engine: TreeEngine, ch):
        """Yield ``(inner_word, total, x_index, rebuild)`` for a big source channel.

        ``rebuild(y)`` turns an inner target channel into the big target channel.
        """
        sub = channel_at(ch, self.path)
        fused = None
        if self.merge_leaf is not None:
            fused = channel_at(sub, self._src_leaf_path)
            sub = channel_replace(sub, self._src_leaf_path, total(fused))
        word = channel_leaves(sub)
        _, index = engine.channels(self.inner_src, word)
        k, x = index[sub]

        def rebuild(y):
            if fused is not None:
                y = channel_replace(y, self._tgt_leaf_path, fused)
            return channel_replace(ch, self.path, y)

        return word, k, x, rebuild


def tensor_placements(n):
    """The ``n + 2`` placements of a degree-``n`` cochain in the coboundary.

    Returned in coboundary order: ``1 (x) phi``, the merges at ``i = 0..n-1``,
    then ``phi (x) 1``.
    """
    L, R = left_comb(n), right_comb(n)
    out = []
    if n == 0:
        raise CoherenceError("degree must be >= 1")
    out.append(Placement((0, shift(L, 1)), (0, shift(R, 1)), (1,), L, R))
    for i in range(n):
        out.append(Placement(split_leaf(L, i), split_leaf(R, i), (), L, R, merge_leaf=i))
    out.append(Placement((L, n), (R, n), (0,), L, R))
    return out
