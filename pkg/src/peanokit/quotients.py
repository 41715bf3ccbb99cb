"""Integers and rationals as equivalence classes with canonical representatives.

Integers are classes of pairs of naturals under ``(a, b) ~ (c, d) iff
a + d = b + c``; the canonical pair has ``min(a, b) = 0``.  Rationals are
classes of (integer, nonzero integer) pairs under ``(p, q) ~ (r, s) iff
p*s = r*q``; the canonical pair is in lowest terms with positive denominator.
The relations and the formulas on representatives are the standard ones.

Because every class is stored as its canonical pair, class equality is plain
field equality.  The ``pair_*`` and ``frac_*`` functions work on arbitrary
representatives and exist so that well-definedness can be tested.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "IntClass", "RatClass", "int_make", "int_add", "int_mul", "int_neg", "int_sub", "int_cmp",
    "rat_make", "rat_add", "rat_mul", "rat_neg", "rat_inv", "rat_sub", "rat_cmp",
    "pair_add", "pair_mul", "pair_neg", "frac_add", "frac_mul", "frac_neg",
    "integer", "rational", "parse_rat", "format_rat",
]


def _natural(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"expected a natural number, got {x!r}")
    return x


@dataclass(frozen=True)
class IntClass:
    """The class of ``(a, b)``, standing for ``a - b``; always canonical."""

    a: int
    b: int

    def __post_init__(self):
        _natural(self.a)
        _natural(self.b)
        if self.a and self.b:
            raise ValueError(f"({self.a}, {self.b}) is not canonical; use int_make")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def to_int(self) -> int:
        return self.a - self.b

    def sign(self) -> int:
        return (self.a > 0) - (self.b > 0)

    def magnitude(self) -> int:
        return self.a or self.b

    def __neg__(self):
        return int_neg(self)

    def __add__(self, other):
        return int_add(self, other) if isinstance(other, IntClass) else NotImplemented

    def __sub__(self, other):
        return int_sub(self, other) if isinstance(other, IntClass) else NotImplemented

    def __mul__(self, other):
        return int_mul(self, other) if isinstance(other, IntClass) else NotImplemented

    def __lt__(self, other):
        return int_cmp(self, other) < 0

    def __le__(self, other):
        return int_cmp(self, other) <= 0

    def __gt__(self, other):
        return int_cmp(self, other) > 0

    def __ge__(self, other):
        return int_cmp(self, other) >= 0

    def __str__(self):
        return f"-{self.b}" if self.b else str(self.a)


def int_make(a: int, b: int) -> IntClass:
    """Canonical representative of the class of ``(a, b)``."""
    _natural(a)
    _natural(b)
    m = min(a, b)
    return IntClass(a - m, b - m)


def integer(n: int) -> IntClass:
    return IntClass(n, 0) if n >= 0 else IntClass(0, -n)


def pair_add(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    (a, b), (c, d) = x, y
    return (a + c, b + d)


def pair_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    (a, b), (c, d) = x, y
    return (a * c + b * d, a * d + b * c)


def pair_neg(x: tuple[int, int]) -> tuple[int, int]:
    return (x[1], x[0])


def int_add(x: IntClass, y: IntClass) -> IntClass:
    return int_make(*pair_add(x.pair, y.pair))


def int_mul(x: IntClass, y: IntClass) -> IntClass:
    return int_make(*pair_mul(x.pair, y.pair))


def int_neg(x: IntClass) -> IntClass:
    return int_make(*pair_neg(x.pair))


def int_sub(x: IntClass, y: IntClass) -> IntClass:
    return int_add(x, int_neg(y))


def int_cmp(x: IntClass, y: IntClass) -> int:
    # a - b < c - d  iff  a + d < c + b
    left, right = x.a + y.b, y.a + x.b
    return (left > right) - (left < right)


_ZERO = IntClass(0, 0)
_ONE = IntClass(1, 0)


@dataclass(frozen=True)
class RatClass:
    """The class of ``num / den`` in lowest terms, ``den >= 1``; always canonical."""

    num: IntClass
    den: int

    def __post_init__(self):
        if not isinstance(self.num, IntClass):
            raise TypeError("numerator must be an IntClass")
        _natural(self.den)
        if self.den < 1 or gcd(self.num.magnitude(), self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not canonical; use rat_make")

    def to_fraction(self) -> Fraction:
        return Fraction(self.num.to_int(), self.den)

    def __float__(self):
        return float(self.to_fraction())

    def sign(self) -> int:
        return self.num.sign()

    def is_zero(self) -> bool:
        return self.num == _ZERO

    def __neg__(self):
        return rat_neg(self)

    def __add__(self, other):
        return rat_add(self, _coerce(other)) if _coercible(other) else NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return rat_sub(self, _coerce(other)) if _coercible(other) else NotImplemented

    def __rsub__(self, other):
        return rat_sub(_coerce(other), self) if _coercible(other) else NotImplemented

    def __mul__(self, other):
        return rat_mul(self, _coerce(other)) if _coercible(other) else NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rat_mul(self, rat_inv(_coerce(other))) if _coercible(other) else NotImplemented

    def __lt__(self, other):
        return rat_cmp(self, _coerce(other)) < 0

    def __le__(self, other):
        return rat_cmp(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return rat_cmp(self, _coerce(other)) > 0

    def __ge__(self, other):
        return rat_cmp(self, _coerce(other)) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __str__(self):
        return format_rat(self)


def _coercible(x) -> bool:
    return isinstance(x, (RatClass, IntClass)) or (isinstance(x, int) and not isinstance(x, bool))


def _coerce(x) -> RatClass:
    if isinstance(x, RatClass):
        return x
    if isinstance(x, IntClass):
        return RatClass(x, 1)
    return RatClass(integer(x), 1)


def rat_make(p: IntClass, q: IntClass) -> RatClass:
    """Canonical representative of the class of ``p / q``; ``q`` must be nonzero."""
    if q == _ZERO:
        raise ZeroDivisionError("zero denominator")
    if q.sign() < 0:
        p, q = int_neg(p), int_neg(q)
    d = q.a
    g = gcd(p.magnitude(), d)
    return RatClass(IntClass(p.a // g, p.b // g), d // g)


def rational(n: int, d: int = 1) -> RatClass:
    """``n / d`` from Python ints."""
    return rat_make(integer(n), integer(d))


def frac_add(x: tuple[IntClass, IntClass], y: tuple[IntClass, IntClass]):
    (p, q), (r, s) = x, y
    return (int_add(int_mul(p, s), int_mul(r, q)), int_mul(q, s))


def frac_mul(x: tuple[IntClass, IntClass], y: tuple[IntClass, IntClass]):
    (p, q), (r, s) = x, y
    return (int_mul(p, r), int_mul(q, s))


def frac_neg(x: tuple[IntClass, IntClass]):
    return (int_neg(x[0]), x[1])


def _rep(x: RatClass) -> tuple[IntClass, IntClass]:
    return (x.num, IntClass(x.den, 0))


def rat_add(x: RatClass, y: RatClass) -> RatClass:
    return rat_make(*frac_add(_rep(x), _rep(y)))


def rat_mul(x: RatClass, y: RatClass) -> RatClass:
    return rat_make(*frac_mul(_rep(x), _rep(y)))


def rat_neg(x: RatClass) -> RatClass:
    return RatClass(int_neg(x.num), x.den)


def rat_sub(x: RatClass, y: RatClass) -> RatClass:
    return rat_add(x, rat_neg(y))


def rat_inv(x: RatClass) -> RatClass:
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero")
    return rat_make(IntClass(x.den, 0), x.num)


def rat_cmp(x: RatClass, y: RatClass) -> int:
    """-1, 0 or 1; cross-multiplication with positive denominators."""
    return int_cmp(int_mul(x.num, IntClass(y.den, 0)), int_mul(y.num, IntClass(x.den, 0)))


_RAT_TEXT = re.compile(r"\s*([-−]?)(\d+)(?:/(\d+))?\s*\Z")


def parse_rat(text: str) -> RatClass:
    """Parse ``-2``, ``-1/2`` (ASCII or U+2212 minus) and decimals like ``0.001`` or ``1e-6``."""
    m = _RAT_TEXT.match(text)
    if m:
        sign, n, d = m.groups()
        num = int(n) if not sign else -int(n)
        den = int(d) if d is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return rational(num, den)
    try:
        f = Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
    return rational(f.numerator, f.denominator)


def format_rat(x: RatClass) -> str:
    return str(x.num) if x.den == 1 else f"{x.num}/{x.den}"
