"""Exact extended reals.

Finite values are ``fractions.Fraction``; the two infinities are the float
sentinels ``math.inf`` and ``-math.inf``.  Python orders a Fraction against
a float infinity correctly and ``inf + Fraction`` stays infinite, so the
standard operators already implement the extended order and the
``±inf ± finite = ±inf`` rule.  Nothing else is ever a float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ExtReal = Union[Fraction, float]

INF: float = math.inf
NEG_INF: float = -math.inf

_INF_TOKENS = {"inf": INF, "+inf": INF, "-inf": NEG_INF, "−inf": NEG_INF}


def ext(value: object) -> ExtReal:
    """Coerce ``value`` to an exact extended real.

    Accepts Fractions, ints, the strings ``"p/q"``, ``"p"``, ``"inf"``,
    ``"-inf"``, and the float infinities.  Finite floats are refused so that
    rounding never enters silently.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value):
            return value
        raise TypeError(f"finite float {value!r} is not exact; pass a Fraction or 'p/q' string")
    if isinstance(value, str):
        token = value.strip()
        if token.lower() in _INF_TOKENS:
            return _INF_TOKENS[token.lower()]
        try:
            return Fraction(token.replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot read {type(value).__name__} as an extended real")


def rational(value: object) -> Fraction:
    """Coerce to a finite Fraction, refusing the infinities."""
    x = ext(value)
    if not isinstance(x, Fraction):
        raise ValueError(f"expected a finite rational, got {value!r}")
    return x


def is_finite(x: ExtReal) -> bool:
    return isinstance(x, Fraction)


def fmt(x: ExtReal) -> str:
    """Lossless text form: ``"inf"``, ``"-inf"``, ``"3"``, ``"-1/2"``."""
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return str(x)


def gap(a: ExtReal, b: ExtReal) -> ExtReal:
    """|a - b| with equal infinities at distance 0 and mixed ones at inf."""
    if is_finite(a) and is_finite(b):
        return abs(a - b)
    if a == b:
        return Fraction(0)
    return INF
