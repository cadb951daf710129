"""Exact scalar fields: rationals, prime fields and cyclotomic fields.

Field elements are plain Python values so that the elimination loops stay
cheap: ``Fraction`` for Q, ``int`` in ``[0, p)`` for F_p, and a tuple of
``Fraction`` of length phi(n) for Q(zeta_n).  The :class:`Scalar` wrapper
carries the field along for user-facing arithmetic.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (coefficient lists, low degree first)

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        c = r[-1] / lead
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] -= c * y
        r = _poly_trim(r)
    return _poly_trim(q), r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise FieldError(f"cyclotomic order must be >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not r
            num = q
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def cyclotomic_reduce(coeffs, n: int) -> tuple:
    """Reduce a polynomial in zeta modulo Phi_n; returns phi(n) rational coefficients."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    r = [Fraction(c) for c in coeffs]
    # Phi_n is monic: peel off the top coefficient repeatedly.
    for top in range(len(r) - 1, deg - 1, -1):
        c = r[top]
        if c == 0:
            continue
        k = top - deg
        for i in range(deg + 1):
            r[k + i] -= c * phi[i]
    r = r[:deg] + [Fraction(0)] * (deg - len(r))
    return tuple(r)


_FRAC_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_fraction(text) -> Fraction:
    if isinstance(text, bool):
        raise FieldError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    m = _FRAC_RE.match(str(text))
    if not m:
        raise FieldError(f"cannot parse rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise FieldError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Field:
    """Base class; subclasses implement the arithmetic on raw values."""

    kind = "abstract"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def is_one(self, a) -> bool:
        return a == self.one()

    def characteristic(self) -> int:
        return 0

    def from_rational(self, q: Fraction):
        q = Fraction(q)
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def random(self, rng: random.Random):
        return self.from_int(rng.randint(-3, 3))

    def parse(self, text):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec() == other.spec()

    def __hash__(self):
        return hash(tuple(sorted(self.spec().items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()})"

    def __str__(self):
        """The name accepted by ``field_from_name``."""
        s = self.spec()
        if s["kind"] == "prime":
            return f"F{s['p']}"
        if s["kind"] == "cyclotomic":
            return f"Q(zeta{s['n']})"
        return "Q"


class RationalField(Field):
    kind = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return Fraction(rng.randint(-5, 5), rng.randint(1, 3))

    def parse(self, text):
        return parse_fraction(text)

    def format(self, a):
        return format_fraction(Fraction(a))

    def spec(self):
        return {"kind": "rational"}


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"prime field needs a prime modulus, got {p!r}")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def characteristic(self):
        return self.p

    def from_rational(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise FieldError(f"{q} has no image in F_{self.p}")
        return (q.numerator * self.inv(q.denominator % self.p)) % self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def parse(self, text):
        if isinstance(text, bool):
            raise FieldError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return text % self.p
        s = str(text).strip()
        if "/" in s:
            return self.from_rational(parse_fraction(s))
        try:
            return int(s) % self.p
        except ValueError:
            raise FieldError(f"cannot parse F_{self.p} residue {text!r}") from None

    def format(self, a):
        return str(a)

    def spec(self):
        return {"kind": "prime", "p": self.p}


class CyclotomicField(Field):
    """Q(zeta_n) with elements stored in the power basis 1, zeta, ..., zeta^(phi-1)."""

    kind = "cyclotomic"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise FieldError(f"cyclotomic order must be an integer >= 1, got {n!r}")
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.deg = len(self.phi) - 1
        self._zero = tuple(Fraction(0) for _ in range(self.deg))
        self._one = cyclotomic_reduce([1], n)
        # zeta^k reduced, for k < 2*deg - 1
        self._powers = [cyclotomic_reduce([0] * k + [1], n) for k in range(2 * self.deg - 1)]

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def zeta(self, k: int = 1):
        return cyclotomic_reduce([0] * (k % self.n) + [1], self.n)

    def from_int(self, k):
        return cyclotomic_reduce([k], self.n)

    def from_rational(self, q):
        return cyclotomic_reduce([Fraction(q)], self.n)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.deg
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                pk = self._powers[k]
                for i in range(d):
                    out[i] += c * pk[i]
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"division by zero in Q(zeta_{self.n})")
        # extended Euclid: find u with u*a = 1 mod Phi_n
        r0, r1 = list(self.phi), _poly_trim(list(a))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1)
            n = max(len(s0), len(qs))
            s0, s1 = s1, _poly_trim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)])
        c = Fraction(r1[0])
        return cyclotomic_reduce([x / c for x in s1], self.n)

    def is_zero(self, a):
        return not any(a)

    def random(self, rng):
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(self.deg))

    def parse(self, text):
        if isinstance(text, (list, tuple)):
            items = list(text)
        elif isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            items = [text]
        else:
            s = str(text).strip()
            if s.startswith("["):
                if not s.endswith("]"):
                    raise FieldError(f"unterminated cyclotomic literal {text!r}")
                body = s[1:-1].strip()
                items = [t for t in body.split(",")] if body else []
            else:
                items = [s]
        coeffs = [parse_fraction(t) for t in items]
        return cyclotomic_reduce(coeffs, self.n)

    def format(self, a):
        return "[" + ",".join(format_fraction(x) for x in a) + "]"

    def spec(self):
        return {"kind": "cyclotomic", "n": self.n}


QQ = RationalField()


def field_from_spec(spec) -> Field:
    """Build a field from its JSON description ``{"kind": ...}``."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        return field_from_name(spec)
    kind = spec.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(spec.get("p"))
    if kind == "cyclotomic":
        return CyclotomicField(spec.get("n"))
    raise FieldError(f"unknown field kind {kind!r}")


def field_from_name(name: str) -> Field:
    """Parse CLI shorthand: ``Q``, ``F2``/``GF3``, ``Q(zeta5)``/``cyclo5``."""
    s = name.strip()
    if s.lower() in ("q", "qq", "rational"):
        return QQ
    m = re.match(r"^(?:F|GF|Fp)?_?(\d+)$", s, re.IGNORECASE)
    if m and s[0] in "FfGg":
        return PrimeField(int(m.group(1)))
    m = re.match(r"^(?:Q\(zeta_?(\d+)\)|cyclo(\d+))$", s, re.IGNORECASE)
    if m:
        return CyclotomicField(int(m.group(1) or m.group(2)))
    raise FieldError(f"unknown field name {name!r}")


class Scalar:
    """A field element bundled with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    @classmethod
    def parse(cls, field, text):
        return cls(field, field.parse(text))

    def _check(self, other):
        if not isinstance(other, Scalar):
            return Scalar(self.field, self.field.from_int(other)) if isinstance(other, int) else NotImplemented
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    def __sub__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __mul__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    def __truediv__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.div(self.value, o.value))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return isinstance(other, Scalar) and other.field == self.field and other.value == self.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field.format(self.value)!r} in {self.field.spec()})"


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
