"""The coboundary of the tensor complex, cohomology and cobounding."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from ..algebra import EchelonBasis, ExactMatrix, rank_kernel, solve_linear
from ..coherence.trees import add_into, tensor_placements
from .cochains import Cochain, CochainSpace


class TensorComplex:
    """Cochain spaces and coboundary matrices of one fusion datum, built lazily."""

    def __init__(self, engine, threads=1):
        self.engine = engine
        self.field = engine.field
        self.threads = max(1, int(threads or 1))
        self._spaces = {}
        self._deltas = {}

    def space(self, n) -> CochainSpace:
        if n not in self._spaces:
            self._spaces[n] = CochainSpace(self.engine, n)
        return self._spaces[n]

    def delta(self, n) -> ExactMatrix:
        """Matrix of ``delta: X^n -> X^{n+1}`` (rows ``X^{n+1}``, cols ``X^n``)."""
        if n not in self._deltas:
            self._deltas[n] = coboundary_matrix(self.engine, self.space(n), self.space(n + 1), self.threads)
        return self._deltas[n]

    def coboundary(self, c: Cochain) -> Cochain:
        return Cochain(self.space(c.degree + 1), self.delta(c.degree).matvec(c.vec))


def _word_rows(engine, src_space, tgt_space, placements, word):
    """Entries of all rows of ``delta`` belonging to target tuple ``word``."""
    F = engine.field
    n = src_space.n
    L, R = tgt_space.L, tgt_space.R
    gl, _ = engine.channels(L, word)
    gr, ir = engine.channels(R, word)
    entries = {}
    signs = [F.one()] + [F.one() if (i + 1) % 2 == 0 else F.neg(F.one()) for i in range(n)]
    signs.append(F.one() if (n + 1) % 2 == 0 else F.neg(F.one()))
    for k, lchs in gl.items():
        for x_idx, xch in enumerate(lchs):
            acc = {}  # (col label index, out channel) -> coef
            for sign, pl in zip(signs, placements):
                pre = engine.associator(L, pl.big_src, word)[xch]
                for bch, c1 in pre.items():
                    iw, kk, xi, rebuild = pl.expand(engine, bch)
                    git, _ = engine.channels(pl.inner_tgt, iw)
                    blk = src_space.blocks[iw][kk]
                    off, rows, cols = blk
                    for y, ych in enumerate(git[kk]):
                        big_t = rebuild(ych)
                        col = off + y * cols + xi
                        post = engine.associator(pl.big_tgt, R, word)[big_t]
                        c = F.mul(sign, c1)
                        for zch, c2 in post.items():
                            add_into(F, acc, (col, zch), F.mul(c, c2))
            for (col, zch), v in acc.items():
                _, z_idx = ir[zch]
                row = tgt_space.label_index(word, k, z_idx, x_idx)
                entries[(row, col)] = v
    return entries


def coboundary_matrix(engine, src_space: CochainSpace, tgt_space: CochainSpace, threads=1) -> ExactMatrix:
    """Assemble delta(phi) = [1 (x) phi] + sum_i (-1)^{i+1} [phi(.., A_i A_{i+1}, ..)] + (-1)^{n+1} [phi (x) 1]."""
    placements = tensor_placements(src_space.n)
    words = list(tgt_space.blocks)

    def work(chunk):
        out = {}
        for w in chunk:
            out.update(_word_rows(engine, src_space, tgt_space, placements, w))
        return out

    entries = {}
    if threads > 1 and len(words) > 1:
        # warm shared caches first so workers only read them
        for pl in placements:
            engine.channels(pl.inner_src, words[0][: src_space.n])
        size = max(1, len(words) // (4 * threads))
        chunks = [words[i:i + size] for i in range(0, len(words), size)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for part in ex.map(work, chunks):  # map preserves chunk order
                entries.update(part)
    else:
        entries = work(words)
    return ExactMatrix(engine.field, tgt_space.dim, src_space.dim, entries)


def _image_basis(field, M: ExactMatrix, ncols):
    """Row-echelon basis of the column space of ``M``."""
    eb = EchelonBasis(field, ncols)
    for col in M.col_dicts():
        if col:
            eb.add(col)
    return eb


def cohomology(cx: TensorComplex, max_degree=3, representatives=True):
    """Per-degree dims, ranks and representative cocycles (degrees 1..max_degree)."""
    F = cx.field
    out = []
    prev_rank = 0
    prev = None
    for n in range(1, max_degree + 1):
        d = cx.delta(n)
        r, ker = rank_kernel(d)
        dim = cx.space(n).dim
        entry = {
            "degree": n,
            "dim_X": dim,
            "rank_delta": r,
            "dim_ker": dim - r,
            "rank_delta_prev": prev_rank,
            "dim_H": dim - r - prev_rank,
        }
        if representatives:
            image = _image_basis(F, prev, dim) if prev is not None else EchelonBasis(F, dim)
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
                    reps.append(Cochain(cx.space(n), vec))
            entry["representatives"] = reps
        out.append(entry)
        prev_rank = r
        prev = d
    return out


def is_closed(cx: TensorComplex, c: Cochain) -> bool:
    return cx.coboundary(c).is_zero()


def cobound(cx: TensorComplex, a: Cochain, b: Cochain):
    """``phi`` with ``delta(phi) = b - a``, or ``None`` if the classes differ.

    Raises ``ValueError`` if an input is not closed.
    """
    if a.degree != b.degree:
        raise ValueError("cochains have different degrees")
    for name, c in (("a", a), ("b", b)):
        if not is_closed(cx, c):
            raise ValueError(f"{name} is not a cocycle")
    n = a.degree
    diff = (b - a).vec
    if n == 1:
        return None if any(not cx.field.is_zero(v) for v in diff) else Cochain(cx.space(1))  # X^0 = 0
    x = solve_linear(cx.delta(n - 1), diff)
    return None if x is None else Cochain(cx.space(n - 1), x)
