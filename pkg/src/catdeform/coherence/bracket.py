"""Morphism blocks between parenthesized products, bracket composition and prolongation."""
from __future__ import annotations

from .trees import (
    CoherenceError,
    Placement,
    TreeEngine,
    add_into,
    compose_maps,
    left_comb,
    n_leaves,
    right_comb,
)


class MorphismBlock:
    """A morphism ``src_tree(word) -> tgt_tree(word)`` as a sparse channel map."""

    def __init__(self, engine: TreeEngine, src, tgt, word, mapping):
        self.engine = engine
        self.src = src
        self.tgt = tgt
        self.word = tuple(word)
        self.map = mapping

    def matrices(self):
        return self.engine.to_matrices(self.map, self.src, self.tgt, self.word)

    def then(self, other):
        if other.src != self.tgt or other.word != self.word:
            raise CoherenceError("blocks are not composable")
        return MorphismBlock(self.engine, self.src, other.tgt, self.word, compose_maps(self.engine.ring, self.map, other.map))

    def __eq__(self, other):
        if not isinstance(other, MorphismBlock):
            return NotImplemented
        if (self.src, self.tgt, self.word) != (other.src, other.tgt, other.word):
            return False
        keys = set(self.map) | set(other.map)
        return all(self.map.get(k, {}) == other.map.get(k, {}) for k in keys)

    def to_json(self):
        R = self.engine.ring
        fmt = R.format if hasattr(R, "format") else (lambda v: v.format())
        return {
            "source": _tree_json(self.src),
            "target": _tree_json(self.tgt),
            "word": [self.engine.datum.simples[x] for x in self.word],
            "blocks": [
                {"total": self.engine.datum.simples[k], "matrix": [[fmt(v) for v in row] for row in m]}
                for k, m in self.matrices().items()
            ],
        }


def _tree_json(t):
    return t if isinstance(t, int) else [_tree_json(t[0]), _tree_json(t[1])]


def hom_basis(engine: TreeEngine, src, tgt, word):
    """Basis labels ``(total, target_channel_index, source_channel_index)`` and the dimension."""
    if n_leaves(src) != n_leaves(tgt):
        raise CoherenceError("source and target trees have different leaf counts")
    gs, _ = engine.channels(src, word)
    gt, _ = engine.channels(tgt, word)
    labels = [(k, r, c) for k in gs for r in range(len(gt.get(k, []))) for c in range(len(gs[k]))]
    return labels, len(labels)


def generalized_associator(engine: TreeEngine, src, tgt, word, via="right", strategy="root_first"):
    m = engine.lift_field_map(engine.associator(src, tgt, word, via=via, strategy=strategy))
    return MorphismBlock(engine, src, tgt, word, m)


def bracket_compose(engine: TreeEngine, parts, word, src=None, tgt=None):
    """``a_k f_k ... a_1 f_1 a_0`` from the left comb (or ``src``) to the right comb (or ``tgt``).

    ``parts`` are listed in the order they are applied.
    """
    word = tuple(word)
    n = len(word)
    src = left_comb(n) if src is None else src
    tgt = right_comb(n) if tgt is None else tgt
    cur_tree = src
    cur = engine.identity_map(src, word)
    for p in parts:
        if p.word != word:
            raise CoherenceError(f"part over word {p.word} does not match {word}")
        a = engine.lift_field_map(engine.associator(cur_tree, p.src, word))
        cur = compose_maps(engine.ring, compose_maps(engine.ring, cur, a), p.map)
        cur_tree = p.tgt
    a = engine.lift_field_map(engine.associator(cur_tree, tgt, word))
    cur = compose_maps(engine.ring, cur, a)
    return MorphismBlock(engine, src, tgt, word, cur)


def prolong(engine: TreeEngine, component, placement: Placement, word):
    """Lift a cochain to a morphism block on the bigger trees of ``placement``.

    ``component(inner_word, total, y, x)`` returns the coefficient of the
    inner target channel ``y`` in the image of inner source channel ``x``.
    """
    R = engine.ring
    word = tuple(word)
    gs, _ = engine.channels(placement.big_src, word)
    out = {}
    for chs in gs.values():
        for ch in chs:
            iw, k, x, rebuild = placement.expand(engine, ch)
            gt, _ = engine.channels(placement.inner_tgt, iw)
            acc = {}
            for y, ych in enumerate(gt.get(k, [])):
                c = component(iw, k, y, x)
                if not R.is_zero(c):
                    add_into(R, acc, rebuild(ych), c)
            out[ch] = acc
    return MorphismBlock(engine, placement.big_src, placement.big_tgt, word, out)


def linear_combination(engine, blocks_with_coefs):
    """``sum c_i B_i`` for blocks sharing source, target and word."""
    R = engine.ring
    first = blocks_with_coefs[0][0]
    out = {}
    for b, c in blocks_with_coefs:
        if (b.src, b.tgt, b.word) != (first.src, first.tgt, first.word):
            raise CoherenceError("blocks differ in shape")
        for s, vec in b.map.items():
            acc = out.setdefault(s, {})
            for t, v in vec.items():
                add_into(R, acc, t, R.mul(c, v))
    return MorphismBlock(engine, first.src, first.tgt, first.word, out)
