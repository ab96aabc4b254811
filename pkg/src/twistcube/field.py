"""Exact base fields: the rationals and prime fields F_p with p >= 5.

Rational elements are plain :class:`fractions.Fraction` values; prime-field
elements are :class:`Fp`.  A field object coerces, samples, classifies squares
and (de)serializes its elements.  Quadratic extensions F(sqrt d) live in
:class:`QuadExt`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import NotInvertibleError, ValidationError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer: 18 -> 2, -12 -> -3."""
    if n == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    r = math.isqrt(n)
    if r * r == n:
        return sign
    # small factors by trial division, the rest via sympy
    out = 1
    for q in (2, 3, 5, 7, 11, 13):
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if e % 2:
            out *= q
    if n > 1:
        r = math.isqrt(n)
        if r * r != n:
            from sympy import factorint

            for q, e in factorint(n).items():
                if e % 2:
                    out *= q
    return sign * out


class Fp:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if other.__class__ is Fp and other.p == self.p:
            return other.v
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValidationError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise NotInvertibleError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        if other.__class__ is Fp and other.p == self.p:
            return Fp(self.v + other.v, self.p)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        if other.__class__ is Fp and other.p == self.p:
            return Fp(self.v - other.v, self.p)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        if other.__class__ is Fp and other.p == self.p:
            return Fp(self.v * other.v, self.p)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> Fp:
        if self.v == 0:
            raise NotInvertibleError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise NotInvertibleError(f"division by 0 in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class SquareClass:
    """Element of F^x / F^x2 (or the zero class).

    ``rep`` is canonical: a squarefree integer over Q; 1 or the smallest
    nonresidue over F_p; 0 for the zero class.
    """

    field: Field
    rep: int

    @property
    def is_zero(self) -> bool:
        return self.rep == 0

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1

    @property
    def representative(self):
        return self.field(self.rep)

    def __mul__(self, other: SquareClass) -> SquareClass:
        return self.field.square_class(self.field(self.rep) * self.field(other.rep))

    def __str__(self):
        return str(self.rep)


class Field:
    """Common interface; see :class:`Rationals` and :class:`PrimeField`."""

    characteristic: int

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    def square_class(self, x) -> SquareClass:
        raise NotImplementedError

    def is_square(self, x) -> bool:
        x = self(x)
        return x == 0 or self.square_class(x).rep == 1


class Rationals(Field):
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise ValidationError("F_p element used over Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def square_class(self, x) -> SquareClass:
        x = self(x)
        if x == 0:
            return SquareClass(self, 0)
        return SquareClass(self, squarefree_part(x.numerator * x.denominator))

    def sqrt(self, x):
        x = self(x)
        if x < 0:
            return None
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
        return None

    def random(self, rng, height: int = 10, nonzero: bool = False) -> Fraction:
        while True:
            x = Fraction(rng.randint(-height, height), rng.randint(1, height))
            if x or not nonzero:
                return x

    def is_scalar(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def encode(self, x) -> str:
        x = self(x)
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)

    def decode(self, s) -> Fraction:
        if isinstance(s, bool) or not isinstance(s, (str, int)):
            raise ValidationError(f"bad rational literal {s!r}")
        try:
            return self(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational literal {s!r}") from exc

    def to_json(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p) or p in (2, 3):
            raise ValidationError(f"need a prime p >= 5, got {p}")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValidationError(f"F_{x.p} element used over F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NotInvertibleError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"

    @cached_property
    def nonresidue(self) -> int:
        return next(n for n in range(2, self.p) if pow(n, (self.p - 1) // 2, self.p) != 1)

    def square_class(self, x) -> SquareClass:
        x = self(x)
        if x.v == 0:
            return SquareClass(self, 0)
        if pow(x.v, (self.p - 1) // 2, self.p) == 1:
            return SquareClass(self, 1)
        return SquareClass(self, self.nonresidue)

    def sqrt(self, x):
        x = self(x)
        for r in range(self.p // 2 + 1):
            if (r * r - x.v) % self.p == 0:
                return Fp(r, self.p)
        return None

    def elements(self):
        return [Fp(i, self.p) for i in range(self.p)]

    def random(self, rng, height: int = 0, nonzero: bool = False) -> Fp:
        lo = 1 if nonzero else 0
        return Fp(rng.randint(lo, self.p - 1), self.p)

    def is_scalar(self, x) -> bool:
        return isinstance(x, (int, Fp)) and not isinstance(x, bool)

    def encode(self, x) -> int:
        return self(x).v

    def decode(self, s) -> Fp:
        if isinstance(s, bool):
            raise ValidationError(f"bad F_{self.p} literal {s!r}")
        if isinstance(s, int):
            return Fp(s, self.p)
        if isinstance(s, str):
            try:
                return self(s)
            except ValueError as exc:
                raise ValidationError(f"bad F_{self.p} literal {s!r}") from exc
        raise ValidationError(f"bad F_{self.p} literal {s!r}")

    def to_json(self):
        return {"Fp": self.p}


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Field:
    """Parse ``"Q"``, ``"Fp:7"``, ``{"Fp": 7}`` into a field."""
    if isinstance(spec, Field):
        return spec
    if spec in ("Q", "QQ", "q"):
        return QQ
    if isinstance(spec, str) and spec.lower().startswith("fp:"):
        try:
            return PrimeField(int(spec[3:]))
        except ValueError as exc:
            raise ValidationError(f"bad field spec {spec!r}") from exc
    if isinstance(spec, dict) and set(spec) == {"Fp"} and isinstance(spec["Fp"], int):
        return PrimeField(spec["Fp"])
    raise ValidationError(f"bad field spec {spec!r}")


class QuadExt:
    """The quadratic algebra F(sqrt d) = F[t]/(t^2 - d), d != 0.

    When d is a square this is the split algebra F x F and some nonzero
    elements are zero divisors; :meth:`QuadElem.inverse` refuses them.
    """

    def __init__(self, field: Field, d):
        d = field(d)
        if d == 0:
            raise ValidationError("F(sqrt 0) is not etale")
        self.field = field
        self.d = d

    def __call__(self, x, y=0) -> QuadElem:
        if isinstance(x, QuadElem):
            if x.K != self:
                raise ValidationError("elements of different quadratic algebras")
            return x
        return QuadElem(self.field(x), self.field(y), self)

    @property
    def sqrt_d(self) -> QuadElem:
        return self(0, 1)

    @property
    def is_split(self) -> bool:
        return self.field.is_square(self.d)

    def __eq__(self, other):
        return isinstance(other, QuadExt) and other.field == self.field and other.d == self.d

    def __hash__(self):
        return hash((self.field, self.d))

    def __repr__(self):
        return f"{self.field!r}(sqrt {self.d})"

    def random(self, rng, height: int = 10) -> QuadElem:
        return self(self.field.random(rng, height), self.field.random(rng, height))


class QuadElem:
    """x + y*sqrt(d)."""

    __slots__ = ("x", "y", "K")

    def __init__(self, x, y, K: QuadExt):
        self.x = x
        self.y = y
        self.K = K

    def _lift(self, other):
        if isinstance(other, QuadElem):
            if other.K != self.K:
                raise ValidationError("operands live in different quadratic algebras")
            return other
        if self.K.field.is_scalar(other):
            return QuadElem(self.K.field(other), self.K.field.zero, self.K)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x + o.x, self.y + o.y, self.K)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x - o.x, self.y - o.y, self.K)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x * o.x + self.K.d * self.y * o.y, self.x * o.y + self.y * o.x, self.K)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.K)

    def conj(self) -> QuadElem:
        return QuadElem(self.x, -self.y, self.K)

    def norm(self):
        return self.x * self.x - self.K.d * self.y * self.y

    def trace(self):
        return 2 * self.x

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise NotInvertibleError(f"{self} has norm 0 in {self.K!r}")
        return QuadElem(self.x / n, -self.y / n, self.K)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.K(1)
        for _ in range(n):
            out = out * self
        return out

    def is_scalar(self) -> bool:
        return self.y == 0

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, QuadElem) else other
        if o is NotImplemented:
            return NotImplemented
        return o.K == self.K and self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y, self.K.d))

    def __repr__(self):
        return f"({self.x} + {self.y}*sqrt({self.K.d}))"
