"""Uncertainty areas: real intervals with open or closed endpoints.

All limits are exact :class:`fractions.Fraction` values; nothing here ever
rounds.  Only the operations needed by the algorithms are provided (limits,
membership, narrowing to a point), not general interval arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import EmptyArea, InconsistentReveal, MalformedArea

WeightLike = Union[int, str, Fraction]


def as_weight(value: WeightLike) -> Fraction:
    """Convert an int, decimal/ratio string or Fraction to an exact weight.

    Floats are refused on purpose: ``0.1`` is not the number the user meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedArea(f"not a number: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact weight")


def format_weight(w: Fraction) -> str:
    """Shortest exact text for ``w``: a decimal when it terminates, else ``p/q``."""
    w = Fraction(w)
    if w.denominator == 1:
        return str(w.numerator)
    d = w.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{w.numerator}/{w.denominator}"
    digits = max(twos, fives)
    scaled = w * 10**digits
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


@dataclass(frozen=True)
class Area:
    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", as_weight(self.lo))
        object.__setattr__(self, "hi", as_weight(self.hi))
        if self.lo > self.hi:
            raise MalformedArea(f"lower limit {self.lo} exceeds upper limit {self.hi}")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise EmptyArea(f"degenerate area at {self.lo} with an open endpoint is empty")

    @classmethod
    def point(cls, w: WeightLike) -> "Area":
        w = as_weight(w)
        return cls(w, w)

    @classmethod
    def open(cls, lo: WeightLike, hi: WeightLike) -> "Area":
        return cls(as_weight(lo), as_weight(hi), True, True)

    @classmethod
    def closed(cls, lo: WeightLike, hi: WeightLike) -> "Area":
        return cls(as_weight(lo), as_weight(hi), False, False)

    @property
    def inf(self) -> Fraction:
        return self.lo

    @property
    def sup(self) -> Fraction:
        return self.hi

    @property
    def is_trivial(self) -> bool:
        return self.lo == self.hi

    @property
    def is_open(self) -> bool:
        return self.lo_open and self.hi_open and self.lo < self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, w) -> bool:
        w = as_weight(w)
        if w < self.lo or (w == self.lo and self.lo_open):
            return False
        if w > self.hi or (w == self.hi and self.hi_open):
            return False
        return True

    def issubset(self, other: "Area") -> bool:
        if self.is_trivial:
            return self.lo in other
        lo_ok = self.lo > other.lo or (self.lo == other.lo and (self.lo_open or not other.lo_open))
        hi_ok = self.hi < other.hi or (self.hi == other.hi and (self.hi_open or not other.hi_open))
        return lo_ok and hi_ok

    def narrow(self, w: WeightLike) -> "Area":
        w = as_weight(w)
        if w not in self:
            raise InconsistentReveal(f"value {format_weight(w)} lies outside {self}")
        return Area(w, w)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self) -> str:
        if self.is_trivial:
            return "{" + format_weight(self.lo) + "}"
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{format_weight(self.lo)},{format_weight(self.hi)}{right}"

    def to_json(self):
        if self.is_trivial:
            return format_weight(self.lo)
        return {
            "lo": format_weight(self.lo),
            "hi": format_weight(self.hi),
            "lo_open": self.lo_open,
            "hi_open": self.hi_open,
        }

    @classmethod
    def from_json(cls, data) -> "Area":
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls.point(data)
        if isinstance(data, float):
            # JSON has no exact decimals; go through repr so 3.3 means 33/10
            return cls.point(repr(data))
        if not isinstance(data, dict):
            raise MalformedArea(f"cannot read an area from {data!r}")
        try:
            lo, hi = data["lo"], data["hi"]
        except KeyError as exc:
            raise MalformedArea(f"area is missing {exc.args[0]!r}") from exc
        lo = repr(lo) if isinstance(lo, float) else lo
        hi = repr(hi) if isinstance(hi, float) else hi
        return cls(
            as_weight(lo),
            as_weight(hi),
            bool(data.get("lo_open", False)),
            bool(data.get("hi_open", False)),
        )


def area_make(lo: WeightLike, hi: WeightLike, lo_open: bool = False, hi_open: bool = False) -> Area:
    return Area(as_weight(lo), as_weight(hi), lo_open, hi_open)


def area_contains(a: Area, w: WeightLike) -> bool:
    return w in a


def area_inf(a: Area) -> Fraction:
    return a.lo


def area_sup(a: Area) -> Fraction:
    return a.hi


def area_narrow(a: Area, w: WeightLike) -> Area:
    return a.narrow(w)
