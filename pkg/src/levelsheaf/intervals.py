"""Intervals of the real line, bars, and their behaviour under convolution.

Brackets follow the French convention used throughout the package:
``[a,b[`` contains ``a`` but not ``b``.  A bar is an interval sitting in a
cohomological degree; it stands for the sheaf ``k_I[-degree]``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .exact import INF, NEG_INF, ExtReal, ext, fmt, gap, is_finite, rational


class IntervalClass(str, enum.Enum):
    """How an interval moves under convolution.

    ``R`` intervals drift left, ``L`` intervals drift right; closed bounded
    ones grow, open bounded ones shrink and eventually flip to a closed bar
    one degree up.  The full line never moves.
    """

    C_CLOSED = "C-closed"
    C_OPEN = "C-open"
    L = "L"
    R = "R"
    FULL = "FullLine"

    @property
    def compact_family(self) -> bool:
        return self in (IntervalClass.C_CLOSED, IntervalClass.C_OPEN)


@dataclass(frozen=True, order=False)
class Interval:
    lo: ExtReal
    hi: ExtReal
    lo_open: bool
    hi_open: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", ext(self.lo))
        object.__setattr__(self, "hi", ext(self.hi))
        lo, hi = self.lo, self.hi
        if lo == INF or hi == NEG_INF:
            raise PreconditionError(f"interval endpoints out of order: {fmt(lo)}, {fmt(hi)}")
        if (not is_finite(lo) and not self.lo_open) or (not is_finite(hi) and not self.hi_open):
            raise PreconditionError("an infinite endpoint must be open")
        if lo < hi:
            return
        if lo == hi and not self.lo_open and not self.hi_open:
            return
        raise PreconditionError(f"empty interval {self.notation()}")

    @classmethod
    def closed(cls, lo: object, hi: object) -> Interval:
        return cls(ext(lo), ext(hi), False, False)

    @classmethod
    def open(cls, lo: object, hi: object) -> Interval:
        return cls(ext(lo), ext(hi), True, True)

    @classmethod
    def parse(cls, text: str) -> Interval:
        """Read ``"[0,2["``, ``"]-inf,1/2]"`` and the like."""
        m = re.fullmatch(r"\s*([\[\]])\s*([^,\s]+)\s*,\s*([^,\s\[\]]+)\s*([\[\]])\s*", text)
        if not m:
            raise PreconditionError(f"cannot parse interval {text!r}")
        left, lo, hi, right = m.groups()
        return cls(ext(lo), ext(hi), left == "]", right == "[")

    @property
    def bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    @property
    def length(self) -> ExtReal:
        if self.bounded:
            return self.hi - self.lo
        return INF

    def contains(self, t: object) -> bool:
        x = ext(t)
        above = x > self.lo or (x == self.lo and not self.lo_open)
        below = x < self.hi or (x == self.hi and not self.hi_open)
        return above and below

    def notation(self) -> str:
        left = "]" if self.lo_open else "["
        right = "[" if self.hi_open else "]"
        return f"{left}{fmt(self.lo)},{fmt(self.hi)}{right}"

    def sort_key(self) -> tuple:
        return (self.lo, self.lo_open, self.hi, self.hi_open)

    def __str__(self) -> str:
        return self.notation()


@dataclass(frozen=True)
class Bar:
    interval: Interval
    degree: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.degree, bool) or not isinstance(self.degree, int):
            raise PreconditionError(f"degree must be an integer, got {self.degree!r}")

    @classmethod
    def parse(cls, text: str, degree: int = 0) -> Bar:
        return cls(Interval.parse(text), degree)

    @property
    def lo(self) -> ExtReal:
        return self.interval.lo

    @property
    def hi(self) -> ExtReal:
        return self.interval.hi

    def sort_key(self) -> tuple:
        return (self.degree,) + self.interval.sort_key()

    def __str__(self) -> str:
        return f"({self.interval.notation()}, {self.degree})"


def classify(interval: Interval) -> IntervalClass:
    lo_infinite = not is_finite(interval.lo)
    hi_infinite = not is_finite(interval.hi)
    if lo_infinite and hi_infinite:
        return IntervalClass.FULL
    if interval.bounded:
        if not interval.lo_open and not interval.hi_open:
            return IntervalClass.C_CLOSED
        if interval.lo_open and interval.hi_open:
            return IntervalClass.C_OPEN
    # an infinite endpoint behaves like a closed one on its own side, so both
    # [a,inf[ and ]-inf,b[ drift left while ]a,inf[ and ]-inf,b] drift right
    left_anchored = lo_infinite or not interval.lo_open
    right_anchored = hi_infinite or not interval.hi_open
    if left_anchored and interval.hi_open:
        return IntervalClass.R
    if interval.lo_open and right_anchored:
        return IntervalClass.L
    raise AssertionError(f"unclassified interval {interval}")  # pragma: no cover


def _eps(eps: object) -> Fraction:
    e = rational(eps)
    if e < 0:
        raise PreconditionError(f"eps must be nonnegative, got {e}")
    return e


def convolve_bar(bar: Bar, eps: object) -> Bar:
    """The bar of ``k_I[-j]`` convolved with the kernel ``K_eps``."""
    e = _eps(eps)
    iv = bar.interval
    if e == 0:
        return bar
    if classify(iv) is IntervalClass.C_OPEN and 2 * e >= iv.hi - iv.lo:
        return Bar(Interval.closed(iv.hi - e, iv.lo + e), bar.degree + 1)

    def moved(x: ExtReal, is_open: bool, outward: int) -> ExtReal:
        if not is_finite(x):
            return x
        return x - outward * e if not is_open else x + outward * e

    lo = moved(iv.lo, iv.lo_open, +1)
    hi = moved(iv.hi, iv.hi_open, -1)
    return Bar(Interval(lo, hi, iv.lo_open, iv.hi_open), bar.degree)


def bar_dies(bar: Bar, eps: object) -> bool:
    """Whether ``k_I[-j]`` is eps-interleaved with the zero sheaf."""
    e = _eps(eps)
    iv = bar.interval
    if classify(iv) not in (IntervalClass.L, IntervalClass.R) or not iv.bounded:
        return False
    return iv.hi - iv.lo <= 2 * e


def bars_eps_interleaved(first: Bar, second: Bar, eps: object) -> bool:
    """Whether the two single-bar sheaves are eps-interleaved.

    Two bars that both die are interleaved through the zero maps whatever
    their classes.  Otherwise only bars of one class can be interleaved, and
    the conditions are comparisons of endpoints, except for an open bar
    against a closed bar one degree up, which needs the closed interval to
    fit inside the collapsed image ``[hi - eps, lo + eps]`` of the open one.
    """
    e = _eps(eps)
    if bar_dies(first, e) and bar_dies(second, e):
        return True
    c1, c2 = classify(first.interval), classify(second.interval)
    if c1 is IntervalClass.C_CLOSED and c2 is IntervalClass.C_OPEN:
        first, second, c1, c2 = second, first, c2, c1
    i1, i2 = first.interval, second.interval
    endpoints_close = gap(i1.lo, i2.lo) <= e and gap(i1.hi, i2.hi) <= e
    if c1 is IntervalClass.C_OPEN and c2 is IntervalClass.C_CLOSED:
        if second.degree != first.degree + 1:
            return False
        return i1.hi - e <= i2.lo and i2.hi <= i1.lo + e
    if c1 is not c2 or first.degree != second.degree:
        return False
    if c1 is IntervalClass.FULL:
        return True
    return endpoints_close
