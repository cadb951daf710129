"""Sparse exact matrices and Gauss-Jordan elimination over any :class:`Field`."""
from __future__ import annotations

from .fields import Field


class ExactMatrix:
    """A ``rows x cols`` matrix stored as ``{(r, c): nonzero value}``."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                if not field.is_zero(v):
                    self.entries[(r, c)] = v

    @classmethod
    def from_dense(cls, field, data, cols=None):
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ents = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for c, v in enumerate(row):
                if not field.is_zero(v):
                    ents[(r, c)] = v
        return cls(field, rows, cols, ents)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {(i, i): field.one() for i in range(n)})

    def to_dense(self):
        z = self.field.zero()
        out = [[z] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def get(self, r, c):
        return self.entries.get((r, c), self.field.zero())

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def transpose(self):
        return ExactMatrix(self.field, self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def matvec(self, x):
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        F = self.field
        out = [F.zero()] * self.rows
        for (r, c), v in self.entries.items():
            xc = x[c]
            if not F.is_zero(xc):
                out[r] = F.add(out[r], F.mul(v, xc))
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        F = self.field
        right = other.row_dicts()
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in right[k].items():
                key = (r, c)
                acc[key] = F.add(acc[key], F.mul(v, w)) if key in acc else F.mul(v, w)
        return ExactMatrix(F, self.rows, other.cols, acc)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        F = self.field
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = F.add(acc[k], v) if k in acc else v
        return ExactMatrix(F, self.rows, self.cols, acc)

    def scale(self, s):
        F = self.field
        return ExactMatrix(F, self.rows, self.cols, {k: F.mul(s, v) for k, v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, {self.field.spec()})"


class EchelonBasis:
    """Incrementally maintained reduced row echelon form of a row space.

    Rows are sparse dicts ``{col: value}``.  The pivot of each stored row is its
    smallest column index and is normalized to one; every other stored row is
    zero in that column, so the stored rows are the canonical RREF.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivot_rows = {}  # pivot col -> row dict
        self._col_index = {}  # col -> set of pivot cols whose row has it

    def __len__(self):
        return len(self.pivot_rows)

    def reduce(self, row: dict) -> dict:
        F = self.field
        row = {c: v for c, v in row.items() if not F.is_zero(v)}
        for p in sorted(c for c in row if c in self.pivot_rows):
            v = row.get(p)
            if v is None:
                continue
            for c, w in self.pivot_rows[p].items():
                nv = F.sub(row[c], F.mul(v, w)) if c in row else F.neg(F.mul(v, w))
                if F.is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row: dict):
        """Insert ``row``; returns the new pivot column, or ``None`` if dependent."""
        F = self.field
        row = self.reduce(row)
        if not row:
            return None
        p = min(row)
        inv = F.inv(row[p])
        row = {c: F.mul(v, inv) for c, v in row.items()}
        # clear column p from existing rows
        for q in list(self._col_index.get(p, ())):
            other = self.pivot_rows[q]
            v = other[p]
            for c, w in row.items():
                nv = F.sub(other[c], F.mul(v, w)) if c in other else F.neg(F.mul(v, w))
                if F.is_zero(nv):
                    if c in other:
                        del other[c]
                        self._col_index[c].discard(q)
                else:
                    if c not in other:
                        self._col_index.setdefault(c, set()).add(q)
                    other[c] = nv
        self.pivot_rows[p] = row
        for c in row:
            self._col_index.setdefault(c, set()).add(p)
        return p

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows_in_order(self):
        return [self.pivot_rows[p] for p in sorted(self.pivot_rows)]


def rref(M: ExactMatrix) -> EchelonBasis:
    eb = EchelonBasis(M.field, M.cols)
    for row in M.row_dicts():
        if row:
            eb.add(row)
    return eb


def rank(M: ExactMatrix) -> int:
    return len(rref(M))


def rank_kernel(M: ExactMatrix):
    """Return ``(rank, kernel_basis)``; kernel vectors are dense lists.

    The kernel basis is the one read off the RREF: one vector per free column
    ``f`` with a 1 in position ``f``, listed by increasing ``f``.
    """
    F = M.field
    eb = rref(M)
    pivots = eb.pivot_rows
    kernel = []
    for f in range(M.cols):
        if f in pivots:
            continue
        v = [F.zero()] * M.cols
        v[f] = F.one()
        for p in eb._col_index.get(f, ()):
            v[p] = F.neg(pivots[p][f])
        kernel.append(v)
    return len(pivots), kernel


def solve_linear(M: ExactMatrix, b):
    """Some ``x`` with ``M x = b`` (free variables zero), or ``None``."""
    if len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {M.rows} rows")
    F = M.field
    aug = M.cols
    eb = EchelonBasis(F, M.cols + 1)
    rows = M.row_dicts()
    for r, row in enumerate(rows):
        if not F.is_zero(b[r]):
            row = dict(row)
            row[aug] = b[r]
        if row:
            eb.add(row)
    if aug in eb.pivot_rows:
        return None
    x = [F.zero()] * M.cols
    for p, row in eb.pivot_rows.items():
        if aug in row:
            x[p] = row[aug]
    return x


def invert_dense(F: Field, A):
    """Inverse of a square dense matrix (list of lists); raises if singular."""
    n = len(A)
    rows = []
    for i in range(n):
        if len(A[i]) != n:
            raise ValueError("matrix is not square")
        row = {c: v for c, v in enumerate(A[i]) if not F.is_zero(v)}
        row[n + i] = F.one()
        rows.append(row)
    eb = EchelonBasis(F, 2 * n)
    for row in rows:
        eb.add(row)
    if any(p not in eb.pivot_rows for p in range(n)):
        raise ZeroDivisionError("matrix is singular")
    inv = [[F.zero()] * n for _ in range(n)]
    for p in range(n):
        for c, v in eb.pivot_rows[p].items():
            if c >= n:
                inv[p][c - n] = v
    return inv


def dense_matmul(F: Field, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [F.zero()] * cols
        for k in range(inner):
            a = row[k]
            if F.is_zero(a):
                continue
            for j, bv in enumerate(B[k]):
                if not F.is_zero(bv):
                    acc[j] = F.add(acc[j], F.mul(a, bv))
        out.append(acc)
    return out
