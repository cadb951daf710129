"""Truncated polynomials ``c0 + c1 e + ... + c_{N-1} e^{N-1}`` modulo ``e^N``."""
from __future__ import annotations

import re

from .fields import Field, FieldError


class TruncatedPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) < 1:
            raise ValueError("truncation order must be >= 1")
        self.field = field
        self.coeffs = coeffs

    @property
    def order(self):
        return len(self.coeffs)

    @classmethod
    def constant(cls, field, value, order):
        return cls(field, (value,) + (field.zero(),) * (order - 1))

    @classmethod
    def epsilon(cls, field, order):
        if order < 2:
            return cls(field, (field.zero(),))
        return cls(field, (field.zero(), field.one()) + (field.zero(),) * (order - 2))

    def _check(self, other):
        if not isinstance(other, TruncatedPoly):
            raise TypeError(f"cannot combine TruncatedPoly with {type(other).__name__}")
        if other.field != self.field:
            raise FieldError("field mismatch")
        if other.order != self.order:
            raise ValueError(f"truncation order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        return TruncatedPoly(F, (F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        F = self.field
        return TruncatedPoly(F, (F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        F = self.field
        return TruncatedPoly(F, (F.neg(a) for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        F = self.field
        n = self.order
        out = [F.zero()] * n
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not F.is_zero(b):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return TruncatedPoly(F, out)

    def scale(self, s):
        F = self.field
        return TruncatedPoly(F, (F.mul(s, a) for a in self.coeffs))

    def inverse(self):
        F = self.field
        c0 = self.coeffs[0]
        if F.is_zero(c0):
            raise ZeroDivisionError("truncated polynomial with zero constant term is not invertible")
        inv0 = F.inv(c0)
        out = [inv0]
        for k in range(1, self.order):
            acc = F.zero()
            for j in range(1, k + 1):
                acc = F.add(acc, F.mul(self.coeffs[j], out[k - j]))
            out.append(F.neg(F.mul(inv0, acc)))
        return TruncatedPoly(F, out)

    def is_zero(self):
        return all(self.field.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def format(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            s = self.field.format(c)
            if k == 0:
                parts.append(s)
            elif k == 1:
                parts.append(f"{s}*e")
            else:
                parts.append(f"{s}*e^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncatedPoly({self.format()})"


_TERM_RE = re.compile(r"^(.*?)(?:\*e(?:\^(\d+))?)?$")


def parse_truncated(field: Field, text: str, order: int) -> TruncatedPoly:
    """Parse the ``"c0 + c1*e + c2*e^2"`` encoding used in deformation files."""
    coeffs = [field.zero()] * order
    # split on '+' outside brackets
    depth, start, terms = 0, 0, []
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "+" and depth == 0 and i > start and text[start:i].strip():
            terms.append(text[start:i])
            start = i + 1
    terms.append(text[start:])
    for t in terms:
        t = t.strip()
        m = _TERM_RE.match(t)
        body, power = m.group(1).strip(), m.group(2)
        k = 0
        if t.endswith("*e") or power is not None:
            k = int(power) if power is not None else 1
        if k >= order:
            raise FieldError(f"term {t!r} exceeds truncation order {order}")
        coeffs[k] = field.add(coeffs[k], field.parse(body))
    return TruncatedPoly(field, coeffs)


class PolyRing:
    """Field-like adapter so sparse-map code can run over truncated polynomials."""

    def __init__(self, field: Field, order: int):
        self.field = field
        self.order = order
        self._zero = TruncatedPoly.constant(field, field.zero(), order)
        self._one = TruncatedPoly.constant(field, field.one(), order)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def lift(self, value):
        return TruncatedPoly.constant(self.field, value, self.order)


def poly_arith(a: TruncatedPoly, b: TruncatedPoly | None, op: str) -> TruncatedPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")
