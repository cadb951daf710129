"""Cochain spaces X^n = Nat[left comb, right comb] and their elements."""
from __future__ import annotations

import itertools
import json
from pathlib import Path

from ..coherence.trees import CoherenceError, TreeEngine, left_comb, right_comb

MAX_DEGREE = 5


class CochainSpace:
    """Ordered basis of ``X^n``: labels ``(word, total, row, col)``.

    ``row`` indexes right-comb channels and ``col`` left-comb channels of the
    given total; words run in ``itertools.product`` order.
    """

    def __init__(self, engine: TreeEngine, n: int, max_degree=MAX_DEGREE + 1):
        if not 1 <= n <= max_degree:
            raise CoherenceError(f"degree {n} outside 1..{max_degree}")
        self.engine = engine
        self.n = n
        self.L = left_comb(n)
        self.R = right_comb(n)
        self.labels = []
        self.blocks = {}  # word -> {total: (offset, rows, cols)}
        for word in itertools.product(range(engine.datum.n), repeat=n):
            gl, _ = engine.channels(self.L, word)
            gr, _ = engine.channels(self.R, word)
            entry = {}
            for k, lch in gl.items():
                rows, cols = len(gr[k]), len(lch)
                entry[k] = (len(self.labels), rows, cols)
                for r in range(rows):
                    for c in range(cols):
                        self.labels.append((word, k, r, c))
            if entry:
                self.blocks[word] = entry
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self):
        return len(self.labels)

    def label_index(self, word, k, r, c):
        off, rows, cols = self.blocks[tuple(word)][k]
        return off + r * cols + c


class Cochain:
    """An element of ``X^n`` stored as a dense coefficient vector."""

    def __init__(self, space: CochainSpace, vec=None):
        self.space = space
        F = space.engine.field
        self.field = F
        self.vec = list(vec) if vec is not None else [F.zero()] * space.dim
        if len(self.vec) != space.dim:
            raise ValueError(f"vector length {len(self.vec)} != dim X^{space.n} = {space.dim}")

    @property
    def degree(self):
        return self.space.n

    def get(self, word, k, r, c):
        blk = self.space.blocks.get(tuple(word))
        if blk is None or k not in blk:
            return self.field.zero()
        off, rows, cols = blk[k]
        return self.vec[off + r * cols + c]

    def component(self, word):
        """``{total: dense matrix}`` (rows right-comb channels, cols left-comb channels)."""
        out = {}
        for k, (off, rows, cols) in self.space.blocks.get(tuple(word), {}).items():
            out[k] = [self.vec[off + r * cols: off + (r + 1) * cols] for r in range(rows)]
        return out

    def is_zero(self):
        return all(self.field.is_zero(v) for v in self.vec)

    def __add__(self, other):
        F = self.field
        return Cochain(self.space, [F.add(a, b) for a, b in zip(self.vec, other.vec)])

    def __sub__(self, other):
        F = self.field
        return Cochain(self.space, [F.sub(a, b) for a, b in zip(self.vec, other.vec)])

    def scale(self, s):
        F = self.field
        return Cochain(self.space, [F.mul(s, a) for a in self.vec])

    def __eq__(self, other):
        return isinstance(other, Cochain) and other.space is self.space and other.vec == self.vec

    @classmethod
    def from_function(cls, space, fn):
        """Scalar cochain on a pointed category: ``fn(*word)`` on the unique channel."""
        F = space.engine.field
        vec = [F.zero()] * space.dim
        for i, (word, k, r, c) in enumerate(space.labels):
            vec[i] = fn(*word)
        return cls(space, vec)

    @classmethod
    def random(cls, space, rng):
        F = space.engine.field
        return cls(space, [F.random(rng) for _ in range(space.dim)])

    # -- file format -------------------------------------------------------

    def to_json(self):
        F = self.field
        comps = []
        for word in self.space.blocks:
            comp = self.component(word)
            if all(F.is_zero(v) for m in comp.values() for row in m for v in row):
                continue
            for k, m in comp.items():
                comps.append({
                    "tuple": list(word),
                    "total": k,
                    "matrix": [[F.format(v) for v in row] for row in m],
                })
        return {"degree": self.degree, "components": comps}


def cochain_from_json(space: CochainSpace, data, where="cochain"):
    from ..category.io import ParseError

    F = space.engine.field
    if not isinstance(data, dict) or "components" not in data:
        raise ParseError(f"{where}: expected an object with 'components'")
    if data.get("degree") != space.n:
        raise ParseError(f"{where}: degree {data.get('degree')!r} does not match {space.n}")
    vec = [F.zero()] * space.dim
    for ci, comp in enumerate(data["components"]):
        here = f"{where}.components[{ci}]"
        try:
            word = tuple(int(x) for x in comp["tuple"])
            matrix = comp["matrix"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{here}: needs integer 'tuple' and 'matrix'") from None
        blk = space.blocks.get(word)
        if blk is None:
            raise ParseError(f"{here}: tuple {list(word)} has no component")
        if "total" in comp:
            k = int(comp["total"])
        elif len(blk) == 1:
            k = next(iter(blk))
        else:
            raise ParseError(f"{here}: tuple has several totals; give 'total'")
        if k not in blk:
            raise ParseError(f"{here}: total {k} impossible for tuple {list(word)}")
        off, rows, cols = blk[k]
        if len(matrix) != rows or any(len(r) != cols for r in matrix):
            raise ParseError(f"{here}: expected a {rows}x{cols} matrix")
        for r, row in enumerate(matrix):
            for c, v in enumerate(row):
                try:
                    vec[off + r * cols + c] = F.parse(v)
                except (ValueError, ArithmeticError) as e:
                    raise ParseError(f"{here}.matrix[{r}][{c}]: {e}") from None
    return Cochain(space, vec)


def load_cochain(space, path):
    from ..category.io import ParseError

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    return cochain_from_json(space, data, where=str(path))


def save_cochain(cochain, path):
    Path(path).write_text(json.dumps(cochain.to_json(), indent=1) + "\n", encoding="utf-8")
