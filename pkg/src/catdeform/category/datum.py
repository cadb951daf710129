"""Skeletal data for semisimple tensor and bitensor categories.

Block conventions (frozen for file interchange).  Every structure block is a
matrix whose rows index the *source* channels and whose columns index the
*target* channels; the structure map sends source basis vector ``r`` to
``sum_c block[r][c] * target_c``.

* ``F[i,j,k,l]``: source ``((i j)m, (m k)l)`` as ``(m, mu, nu)``; target
  ``((j k)n, (i n)l)`` as ``(n, rho, sigma)``.
* ``coF[a,b1,b2,b3]``: source ``a -> b1 (x) n, n -> b2 (x) b3`` (right
  co-comb) as ``(n, rho, sigma)``; target ``a -> m (x) b3, m -> b1 (x) b2``
  (left co-comb) as ``(m, mu, nu)``.  Like ``F`` it points from the
  expression the complex uses as source to the one it uses as target.
* ``kappa[a,b,c1,c2]``: source ``a b -> m -> c1 (x) c2`` as ``(m, mu, nu)``;
  target ``(a1,a2,alpha,b1,b2,beta,g1,g2)``: ``a -> a1 (x) a2``,
  ``b -> b1 (x) b2``, ``a1 b1 -> c1``, ``a2 b2 -> c2``.

All lists are lexicographic in the tuple order shown; ``*_left`` methods list
the row (source) channels and ``*_right`` methods the column channels.
"""
from __future__ import annotations

import itertools

from ..algebra import Field, invert_dense


class DatumError(ValueError):
    """An invariant of a category datum fails."""


def _identity(F, n):
    return [[F.one() if r == c else F.zero() for c in range(n)] for r in range(n)]


class FusionDatum:
    def __init__(self, field: Field, simples, unit, fusion, F=None, unit_iso=None, name=None):
        self.field = field
        self.simples = list(simples)
        self.n = len(self.simples)
        if self.n < 1:
            raise DatumError("a category needs at least one simple object")
        self.fusion = tuple(tuple(tuple(int(x) for x in row) for row in plane) for plane in fusion)
        if isinstance(unit, int):
            if not 0 <= unit < self.n:
                raise DatumError(f"unit index {unit} out of range")
            self.unit = tuple(1 if i == unit else 0 for i in range(self.n))
            self.unit_index = unit
        else:
            self.unit = tuple(int(x) for x in unit)
            nz = [i for i, x in enumerate(self.unit) if x]
            self.unit_index = nz[0] if len(nz) == 1 and self.unit[nz[0]] == 1 else None
        self.name = name
        self._check_fusion()
        self.F = {}
        given = dict(F or {})
        for key in self.F_keys():
            rows = len(self.F_left(*key))
            cols = len(self.F_right(*key))
            if rows != cols:
                raise DatumError(f"F{key}: block is {rows}x{cols}; fusion ring is not associative there")
            if key in given:
                block = given.pop(key)
                if len(block) != rows or any(len(r) != cols for r in block):
                    raise DatumError(f"F{key}: expected a {rows}x{cols} matrix")
                self.F[key] = [list(r) for r in block]
            else:
                self.F[key] = _identity(field, rows)
        if given:
            raise DatumError(f"F block given for impossible channel {sorted(given)[0]}")
        self.Finv = {}
        for key, block in self.F.items():
            try:
                self.Finv[key] = invert_dense(field, block)
            except ZeroDivisionError:
                raise DatumError(f"F{key} is not invertible") from None
        self.unit_iso = unit_iso  # {"rho": {a: block}, "lambda": {a: block}} or None
        self._check_unit_iso()

    # -- fusion ring -------------------------------------------------------

    def N(self, a, b, c):
        return self.fusion[a][b][c]

    def _check_fusion(self):
        n = self.n
        if len(self.fusion) != n or any(len(p) != n or any(len(r) != n for r in p) for p in self.fusion):
            raise DatumError(f"fusion table must be {n}x{n}x{n}")
        if any(x < 0 for p in self.fusion for r in p for x in r):
            raise DatumError("fusion multiplicities must be nonnegative")
        if len(self.unit) != n:
            raise DatumError("unit multiplicity vector has wrong length")
        for a, b in itertools.product(range(n), repeat=2):
            want = 1 if a == b else 0
            left = sum(self.unit[u] * self.fusion[u][a][b] for u in range(n))
            right = sum(self.unit[u] * self.fusion[a][u][b] for u in range(n))
            if left != want or right != want:
                raise DatumError(f"unit axiom fails at ({self.simples[a]}, {self.simples[b]})")
        for i, j, k, l in itertools.product(range(n), repeat=4):
            lhs = sum(self.fusion[i][j][m] * self.fusion[m][k][l] for m in range(n))
            rhs = sum(self.fusion[j][k][m] * self.fusion[i][m][l] for m in range(n))
            if lhs != rhs:
                raise DatumError(f"fusion ring not associative at ({i}, {j}, {k}; {l})")

    def products(self, a, b):
        row = self.fusion[a][b]
        return [(c, row[c]) for c in range(self.n) if row[c]]

    def product_multiplicities(self, word):
        """Multiplicity of each simple in the iterated product of ``word``."""
        if not word:
            return {u: m for u, m in enumerate(self.unit) if m}
        cur = {word[0]: 1}
        for x in word[1:]:
            nxt = {}
            for a, ma in cur.items():
                for c, m in self.products(a, x):
                    nxt[c] = nxt.get(c, 0) + ma * m
            cur = nxt
        return cur

    # -- F blocks ----------------------------------------------------------

    def F_keys(self):
        n = self.n
        for i, j, k, l in itertools.product(range(n), repeat=4):
            if any(self.fusion[i][j][m] and self.fusion[m][k][l] for m in range(n)):
                yield (i, j, k, l)

    def F_left(self, i, j, k, l):
        N = self.fusion
        return [(m, mu, nu) for m in range(self.n) for mu in range(N[i][j][m]) for nu in range(N[m][k][l])]

    def F_right(self, i, j, k, l):
        N = self.fusion
        return [(m, rho, sig) for m in range(self.n) for rho in range(N[j][k][m]) for sig in range(N[i][m][l])]

    def is_pointed(self):
        return self.unit_index is not None and all(
            len(self.products(a, b)) == 1 and self.products(a, b)[0][1] == 1
            for a in range(self.n) for b in range(self.n)
        )

    # -- unit isomorphisms -------------------------------------------------

    def rho_left(self, a):
        return [(u, i, mu) for u in range(self.n) for i in range(self.unit[u]) for mu in range(self.fusion[a][u][a])]

    def lambda_left(self, a):
        return [(u, i, mu) for u in range(self.n) for i in range(self.unit[u]) for mu in range(self.fusion[u][a][a])]

    def unit_block(self, name, a):
        if self.unit_iso and a in self.unit_iso.get(name, {}):
            return self.unit_iso[name][a]
        # the unit axiom makes this a 1x1 block
        return _identity(self.field, 1)

    def _check_unit_iso(self):
        if not self.unit_iso:
            return
        for name in ("rho", "lambda"):
            for a, block in self.unit_iso.get(name, {}).items():
                rows = len(self.rho_left(a) if name == "rho" else self.lambda_left(a))
                if len(block) != rows or any(len(r) != 1 for r in block):
                    raise DatumError(f"{name}[{a}] must be a {rows}x1 matrix")
                if all(self.field.is_zero(r[0]) for r in block):
                    raise DatumError(f"{name}[{a}] is not invertible")

    def with_F(self, F):
        return FusionDatum(self.field, self.simples, self._unit_spec(), self.fusion, F, self.unit_iso, self.name)

    def _unit_spec(self):
        return self.unit_index if self.unit_index is not None else list(self.unit)

    def __repr__(self):
        return f"FusionDatum({self.name or ''} simples={self.simples}, field={self.field.spec()})"


class BitensorDatum:
    """A fusion datum with coproduct, co-associator, coherer and (co)unit data."""

    def __init__(self, base: FusionDatum, delta, coF=None, kappa=None, counit=None, counit_iso=None, name=None):
        self.base = base
        self.field = base.field
        self.n = base.n
        self.name = name or base.name
        n = self.n
        self.delta = tuple(tuple(tuple(int(x) for x in row) for row in plane) for plane in delta)
        if len(self.delta) != n or any(len(p) != n or any(len(r) != n for r in p) for p in self.delta):
            raise DatumError(f"delta table must be {n}x{n}x{n}")
        if any(x < 0 for p in self.delta for r in p for x in r):
            raise DatumError("comultiplicities must be nonnegative")
        self.counit = tuple(int(x) for x in counit) if counit is not None else None
        if self.counit is not None and (len(self.counit) != n or any(x < 0 for x in self.counit)):
            raise DatumError("counit must be a nonnegative vector with one entry per simple")
        self._check_rings()
        self.coF = self._fill("coF", self.coF_keys(), self.coF_left, self.coF_right, coF)
        self.kappa = self._fill("kappa", self.kappa_keys(), self.kappa_left, self.kappa_right, kappa)
        self.coFinv = {k: invert_dense(self.field, b) for k, b in self.coF.items()}
        self.kappainv = {k: invert_dense(self.field, b) for k, b in self.kappa.items()}
        self.counit_iso = {}
        if self.biunital:
            specs = {
                "delta": (self.delta_keys(), self.delta_left, self.delta_right),
                "tau": (self.tau_keys(), self.tau_left, self.tau_right),
                "eta": ([()], lambda: self.eta_left(), lambda: [()]),
                "r": ([(a,) for a in range(n)], self.r_left, lambda a: [()]),
                "l": ([(a,) for a in range(n)], self.l_left, lambda a: [()]),
            }
            given = counit_iso or {}
            for name, (keys, left, right) in specs.items():
                self.counit_iso[name] = self._fill(f"counit_iso.{name}", keys, left, right, given.get(name))

    @property
    def biunital(self):
        return self.counit is not None

    @property
    def unit(self):
        return self.base.unit

    def M(self, k, i, j):
        return self.delta[k][i][j]

    def coproducts(self, k):
        return [(i, j, self.delta[k][i][j]) for i in range(self.n) for j in range(self.n) if self.delta[k][i][j]]

    def _fill(self, label, keys, left, right, given):
        F = self.field
        out = {}
        given = dict(given or {})
        for key in keys:
            rows, cols = len(left(*key)), len(right(*key))
            if rows != cols:
                raise DatumError(f"{label}{key}: channel counts differ ({rows} vs {cols})")
            if key in given:
                block = given.pop(key)
                if len(block) != rows or any(len(r) != cols for r in block):
                    raise DatumError(f"{label}{key}: expected a {rows}x{cols} matrix")
                block = [list(r) for r in block]
            else:
                block = _identity(F, rows)
            try:
                invert_dense(F, block)
            except ZeroDivisionError:
                raise DatumError(f"{label}{key} is not invertible") from None
            out[key] = block
        if given:
            raise DatumError(f"{label} block given for impossible channel {sorted(given)[0]}")
        return out

    def _check_rings(self):
        n, N, Mt = self.n, self.base.fusion, self.delta
        r = range(n)
        for a, b1, b2, b3 in itertools.product(r, repeat=4):
            lhs = sum(Mt[a][m][b3] * Mt[m][b1][b2] for m in r)
            rhs = sum(Mt[a][b1][m] * Mt[m][b2][b3] for m in r)
            if lhs != rhs:
                raise DatumError(f"coproduct not coassociative at ({a}; {b1}, {b2}, {b3})")
        for a, b, c1, c2 in itertools.product(r, repeat=4):
            lhs = sum(N[a][b][m] * Mt[m][c1][c2] for m in r)
            rhs = sum(
                Mt[a][a1][a2] * Mt[b][b1][b2] * N[a1][b1][c1] * N[a2][b2][c2]
                for a1, a2, b1, b2 in itertools.product(r, repeat=4)
            )
            if lhs != rhs:
                raise DatumError(f"coproduct is not multiplicative at ({a}, {b}; {c1}, {c2})")
        if self.counit is None:
            return
        eps, unit = self.counit, self.base.unit
        for a, b in itertools.product(r, repeat=2):
            if sum(N[a][b][m] * eps[m] for m in r) != eps[a] * eps[b]:
                raise DatumError(f"counit is not multiplicative at ({a}, {b})")
        for a, c in itertools.product(r, repeat=2):
            want = 1 if a == c else 0
            if sum(Mt[a][b][c] * eps[b] for b in r) != want or sum(Mt[a][c][b] * eps[b] for b in r) != want:
                raise DatumError(f"counit axiom fails at ({a}, {c})")
        for c1, c2 in itertools.product(r, repeat=2):
            if sum(unit[u] * Mt[u][c1][c2] for u in r) != unit[c1] * unit[c2]:
                raise DatumError(f"coproduct does not preserve the unit at ({c1}, {c2})")
        if sum(unit[u] * eps[u] for u in r) != 1:
            raise DatumError("counit of the unit object is not one-dimensional")

    # -- block channel enumerations ----------------------------------------

    def coF_keys(self):
        n, Mt = self.n, self.delta
        for a, b1, b2, b3 in itertools.product(range(n), repeat=4):
            if any(Mt[a][m][b3] and Mt[m][b1][b2] for m in range(n)):
                yield (a, b1, b2, b3)

    def coF_left(self, a, b1, b2, b3):
        Mt = self.delta
        return [(n, rho, sig) for n in range(self.n) for rho in range(Mt[a][b1][n]) for sig in range(Mt[n][b2][b3])]

    def coF_right(self, a, b1, b2, b3):
        Mt = self.delta
        return [(m, mu, nu) for m in range(self.n) for mu in range(Mt[a][m][b3]) for nu in range(Mt[m][b1][b2])]

    def kappa_keys(self):
        n = self.n
        for a, b, c1, c2 in itertools.product(range(n), repeat=4):
            if self.kappa_left(a, b, c1, c2):
                yield (a, b, c1, c2)

    def kappa_left(self, a, b, c1, c2):
        N, Mt = self.base.fusion, self.delta
        return [(m, mu, nu) for m in range(self.n) for mu in range(N[a][b][m]) for nu in range(Mt[m][c1][c2])]

    def kappa_right(self, a, b, c1, c2):
        N, Mt, r = self.base.fusion, self.delta, range(self.n)
        out = []
        for a1, a2 in itertools.product(r, repeat=2):
            for al in range(Mt[a][a1][a2]):
                for b1, b2 in itertools.product(r, repeat=2):
                    for be in range(Mt[b][b1][b2]):
                        for g1 in range(N[a1][b1][c1]):
                            for g2 in range(N[a2][b2][c2]):
                                out.append((a1, a2, al, b1, b2, be, g1, g2))
        return out

    def delta_keys(self):
        return [(a, b) for a in range(self.n) for b in range(self.n) if self.delta_left(a, b)]

    def delta_left(self, a, b):
        N, eps = self.base.fusion, self.counit
        return [(m, mu, nu) for m in range(self.n) for mu in range(N[a][b][m]) for nu in range(eps[m])]

    def delta_right(self, a, b):
        eps = self.counit
        return [(x, y) for x in range(eps[a]) for y in range(eps[b])]

    def tau_keys(self):
        return [(c1, c2) for c1 in range(self.n) for c2 in range(self.n) if self.tau_left(c1, c2)]

    def tau_left(self, c1, c2):
        unit, Mt = self.base.unit, self.delta
        return [(u, i, mu) for u in range(self.n) for i in range(unit[u]) for mu in range(Mt[u][c1][c2])]

    def tau_right(self, c1, c2):
        unit = self.base.unit
        return [(x, y) for x in range(unit[c1]) for y in range(unit[c2])]

    def eta_left(self):
        unit, eps = self.base.unit, self.counit
        return [(u, i, nu) for u in range(self.n) for i in range(unit[u]) for nu in range(eps[u])]

    def l_left(self, a):
        # (eps (x) 1) Delta(a) -> a
        Mt, eps = self.delta, self.counit
        return [(b, mu, nu) for b in range(self.n) for mu in range(Mt[a][b][a]) for nu in range(eps[b])]

    def r_left(self, a):
        # (1 (x) eps) Delta(a) -> a
        Mt, eps = self.delta, self.counit
        return [(b, mu, nu) for b in range(self.n) for mu in range(Mt[a][a][b]) for nu in range(eps[b])]

    def __repr__(self):
        return f"BitensorDatum({self.name or ''} simples={self.base.simples}, field={self.field.spec()})"
