"""Closed intervals with rational endpoints, for values defined by infinite products."""
from __future__ import annotations

import decimal
from fractions import Fraction
from typing import Union


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def _lift(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other) -> bool:
        o = self._lift(other)
        return self.lo <= o.hi and o.lo <= self.hi

    def __add__(self, other) -> "Interval":
        o = self._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Interval":
        return self._lift(other) - self

    def __mul__(self, other) -> "Interval":
        o = self._lift(other)
        ends = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ends), max(ends))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        o = self._lift(other) if isinstance(other, (Interval, int, Fraction)) else None
        return o is not None and self.lo == o.lo and self.hi == o.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo}, {self.hi})"

    def to_json(self, digits: int = 20) -> dict:
        return {
            "lo": decimal_string(self.lo, digits, decimal.ROUND_FLOOR),
            "hi": decimal_string(self.hi, digits, decimal.ROUND_CEILING),
            "width": decimal_string(self.width, 6, decimal.ROUND_CEILING),
        }


Value = Union[Fraction, Interval]


def decimal_string(q: Fraction, digits: int, rounding=decimal.ROUND_HALF_EVEN) -> str:
    """Decimal rendering of a rational with directed rounding."""
    ctx = decimal.Context(prec=digits, rounding=rounding)
    return str(ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator)))


def is_exact(x) -> bool:
    return not isinstance(x, Interval)


def lower(x) -> Fraction:
    return x.lo if isinstance(x, Interval) else Fraction(x)


def upper(x) -> Fraction:
    return x.hi if isinstance(x, Interval) else Fraction(x)


def value_to_json(x):
    if isinstance(x, Interval):
        return x.to_json()
    return str(Fraction(x))
