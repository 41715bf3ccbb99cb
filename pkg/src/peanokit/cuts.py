"""Dedekind cuts as refinable lower sets of rationals.

A cut is an open lower set of rationals, given by a membership predicate
plus a bracket ``lo < hi`` with ``lo`` inside and ``hi`` outside.  Base cuts
(:func:`cut_from_rational`, :func:`cut_sqrt`) are refined by bisecting that
bracket with the predicate.  Arithmetic cuts never call their own predicate
to refine: their brackets come from interval arithmetic on refined operand
brackets, and their predicate is a semi-decision on top of that.  Membership
is undecidable exactly at the boundary of an irrational result.
:class:`UndecidedMembership` is raised there, once the bracket is narrower
than ``2**-MAX_HALVINGS`` times its starting width.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable

from .quotients import RatClass, format_rat, rational

__all__ = [
    "Cut", "CutError", "CutInvariantError", "UndecidedMembership",
    "cut_from_rational", "cut_sqrt", "cut_add", "cut_neg", "cut_mul",
    "refine", "approx", "render_decimal", "format_eps",
]

MAX_HALVINGS = 96

_HALF = rational(1, 2)
_ONE = rational(1)


class CutError(ArithmeticError):
    pass


class CutInvariantError(CutError):
    """The predicate contradicts the bracket (lo outside or hi inside)."""


class UndecidedMembership(CutError):
    pass


@dataclass(frozen=True)
class Cut:
    member: Callable[[RatClass], bool] = field(compare=False)
    lo: RatClass
    hi: RatClass
    refiner: Callable[[RatClass], tuple[RatClass, RatClass]] | None = field(
        default=None, compare=False, repr=False)
    exact: RatClass | None = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise CutInvariantError(f"bracket ({self.lo}, {self.hi}) is empty")

    def __contains__(self, x: RatClass) -> bool:
        return self.member(x)


def _check_eps(eps: RatClass) -> RatClass:
    if not isinstance(eps, RatClass):
        eps = rational(eps)
    if eps.sign() <= 0:
        raise ValueError("eps must be positive")
    return eps


def _bisect(c: Cut, eps: RatClass) -> tuple[RatClass, RatClass]:
    lo, hi = c.lo, c.hi
    if not c.member(lo):
        raise CutInvariantError(f"lower bracket end {lo} is not in the cut")
    if c.member(hi):
        raise CutInvariantError(f"upper bracket end {hi} is in the cut")
    while hi - lo > eps:
        mid = (lo + hi) * _HALF
        if c.member(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def refine(c: Cut, eps) -> tuple[RatClass, RatClass]:
    """A bracket ``(lo, hi)`` of the cut with ``lo`` inside, ``hi`` outside, ``hi - lo <= eps``."""
    eps = _check_eps(eps)
    if c.refiner is None:
        return _bisect(c, eps)
    lo, hi = c.refiner(eps)
    if not (lo < hi and hi - lo <= eps):
        raise CutInvariantError(f"refinement ({lo}, {hi}) violates the width bound {eps}")
    return lo, hi


def approx(c: Cut, eps) -> RatClass:
    """A rational ``r`` inside the cut with ``r + eps`` outside it."""
    return refine(c, eps)[0]


def _semi_decide(refiner, start: RatClass):
    def member(x: RatClass) -> bool:
        w = start
        for _ in range(MAX_HALVINGS):
            lo, hi = refiner(w)
            if x < lo:
                return True
            if x >= hi:
                return False
            w = w * _HALF
        raise UndecidedMembership(f"cannot separate {x} from the cut boundary")
    return member


def cut_from_rational(q: RatClass) -> Cut:
    """The rationals strictly below ``q``."""
    return Cut(lambda x: x < q, q - 1, q + 1, exact=q)


def cut_sqrt(n: int) -> Cut:
    """The rationals ``x`` with ``x < 0`` or ``x*x < n``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a natural number, got {n!r}")
    root = isqrt(n)
    exact = rational(root) if root * root == n else None
    if n == 0:
        return Cut(lambda x: x.sign() < 0, rational(-1), rational(1), exact=exact)
    nn = rational(n)
    return Cut(lambda x: x.sign() < 0 or x * x < nn, rational(0), rational(n + 1), exact=exact)


def _derived(lo, hi, refiner, exact) -> Cut:
    if exact is not None:
        member = lambda x: x < exact  # noqa: E731
    else:
        member = _semi_decide(refiner, hi - lo)
    return Cut(member, lo, hi, refiner=refiner, exact=exact)


def cut_add(a: Cut, b: Cut) -> Cut:
    def refiner(eps):
        half = eps * _HALF
        la, ha = refine(a, half)
        lb, hb = refine(b, half)
        return la + lb, ha + hb

    exact = a.exact + b.exact if a.exact is not None and b.exact is not None else None
    return _derived(a.lo + b.lo, a.hi + b.hi, refiner, exact)


def cut_neg(a: Cut) -> Cut:
    # -a lies in [-ha, -la); shifting the lower end keeps it strictly inside
    def refiner(eps):
        half = eps * _HALF
        la, ha = refine(a, half)
        return -ha - half, -la

    exact = -a.exact if a.exact is not None else None
    return _derived(-a.hi - 1, -a.lo, refiner, exact)


def _box(la, ha, lb, hb):
    products = (la * lb, la * hb, ha * lb, ha * hb)
    return min(products), max(products)


def cut_mul(a: Cut, b: Cut) -> Cut:
    """Product by min/max of corner products over refined operand brackets."""
    def refiner(eps):
        half = eps * _HALF
        w = eps
        while True:
            la, ha = refine(a, w)
            lb, hb = refine(b, w)
            lo, hi = _box(la, ha, lb, hb)
            if hi - lo <= half:
                return lo - half, hi
            w = w * _HALF

    lo, hi = _box(a.lo, a.hi, b.lo, b.hi)
    exact = a.exact * b.exact if a.exact is not None and b.exact is not None else None
    return _derived(lo - 1, hi, refiner, exact)


def format_eps(eps: RatClass) -> str:
    if eps.num.a == 1 and eps.num.b == 0:
        d, k = eps.den, 0
        while d % 10 == 0:
            d //= 10
            k += 1
        if d == 1 and k > 0:
            return f"1e-{k}"
    return format_rat(eps)


def _decimal_places(eps: RatClass) -> int:
    k, unit = 0, _ONE
    while unit > eps:
        k += 1
        unit = rational(1, 10 ** k)
    return k


def render_decimal(c: Cut, eps) -> tuple[str, str]:
    """``(digits, bound)`` such that the cut's real lies within ``eps`` of ``digits``.

    Digits are truncated toward minus infinity, so ``cut_sqrt(2)`` at ``1e-6``
    renders as ``1.414213``.
    """
    eps = _check_eps(eps)
    k = _decimal_places(eps)
    lo, hi = refine(c, eps * rational(1, 1000))
    scale = 10 ** k
    scaled = hi * scale
    m = scaled.num.to_int() // scaled.den
    sign = "-" if m < 0 else ""
    digits = str(abs(m)).rjust(k + 1, "0")
    text = digits if k == 0 else f"{digits[:-k]}.{digits[-k:]}"
    return sign + text, format_eps(eps)
