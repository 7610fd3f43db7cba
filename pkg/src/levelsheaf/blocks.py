"""Blocks of the half-plane above the anti-diagonal and their modules.

A block is stored by the coordinates where its two boundary lines meet the
anti-diagonal ``{(-t, t)}``, read through the projection ``(-t, t) -> t``.
Each of the two stored numbers ``lo <= hi`` (or ``lo > hi`` for a birth
quadrant that misses the anti-diagonal) belongs to exactly one boundary
line, and the matching flag says whether that line is part of the block:

========  =====================================  =====================
kind      region of the plane                    corner
========  =====================================  =====================
``bb``    ``y >= lo`` and ``x >= -hi``           infimum ``(-hi, lo)``
``db``    ``x <= -lo`` and ``y <= hi``           supremum ``(-lo, hi)``
``hb``    ``lo <= y <= hi``                      none
``vb``    ``-hi <= x <= -lo``                    none
========  =====================================  =====================

(inequalities strict where the flag is false).  With this convention the
flags coincide with the closedness of the anti-diagonal trace whenever the
trace is nonempty, and translation acts on the pair ``(lo, hi)`` by plain
addition.  ``lo`` may be ``-inf`` and ``hi`` may be ``+inf``; the flag of an
infinite coordinate is always false.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple

from .errors import PreconditionError
from .exact import INF, NEG_INF, ExtReal, ext, fmt, is_finite, rational
from .intervals import Interval

KINDS = ("bb", "db", "hb", "vb")
KIND_ALIASES = {"bquad": "bb", "dquad": "db", "hquad": "hb", "vquad": "vb"}

Point = Tuple[Fraction, Fraction]


def _kind(kind: str) -> str:
    k = KIND_ALIASES.get(kind, kind)
    if k not in KINDS:
        raise PreconditionError(f"unknown block kind {kind!r}")
    return k


@dataclass(frozen=True)
class Block:
    kind: str
    lo: ExtReal
    hi: ExtReal
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", _kind(self.kind))
        lo, hi = ext(self.lo), ext(self.hi)
        if lo == INF or hi == NEG_INF:
            raise PreconditionError(f"block coordinates out of range: {fmt(lo)}, {fmt(hi)}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not is_finite(lo):
            object.__setattr__(self, "lo_closed", False)
        if not is_finite(hi):
            object.__setattr__(self, "hi_closed", False)
        if self.kind in ("hb", "vb") and not lo < hi:
            raise PreconditionError(f"band {self.notation()} has no width")

    # -- descriptive properties -------------------------------------------------

    @property
    def corner(self) -> Optional[Tuple[ExtReal, ExtReal]]:
        """Infimum of a bb block, supremum of a db block, None for bands."""
        if self.kind == "bb":
            return (-self.hi, self.lo)
        if self.kind == "db":
            return (-self.lo, self.hi)
        return None

    @property
    def sign(self) -> Optional[str]:
        """'+' when the corner lies strictly above the anti-diagonal."""
        if self.kind == "bb":
            return "+" if self.lo > self.hi else "-"
        if self.kind == "db":
            return "+" if self.lo < self.hi else "-"
        return None

    @property
    def subtype(self) -> str:
        return self.kind + (self.sign or "")

    @property
    def is_zero(self) -> bool:
        """A db block below the anti-diagonal has the zero module."""
        return self.kind == "db" and self.sign == "-"

    def notation(self) -> str:
        left = "[" if self.lo_closed else "]"
        right = "]" if self.hi_closed else "["
        return f"{self.kind}{left}{fmt(self.lo)},{fmt(self.hi)}{right}"

    def __str__(self) -> str:
        return self.notation()

    def sort_key(self) -> tuple:
        return (KINDS.index(self.kind), self.lo, not self.lo_closed, self.hi, not self.hi_closed)

    # -- geometry ---------------------------------------------------------------

    def contains(self, point: Tuple[object, object]) -> bool:
        """Set membership in the plane, ignoring the half-plane restriction."""
        x, y = ext(point[0]), ext(point[1])

        def at_least(v: ExtReal, bound: ExtReal, closed: bool) -> bool:
            return v > bound or (closed and v == bound)

        def at_most(v: ExtReal, bound: ExtReal, closed: bool) -> bool:
            return v < bound or (closed and v == bound)

        if self.kind == "bb":
            return at_least(y, self.lo, self.lo_closed) and at_least(x, -self.hi, self.hi_closed)
        if self.kind == "db":
            return at_most(x, -self.lo, self.lo_closed) and at_most(y, self.hi, self.hi_closed)
        if self.kind == "hb":
            return at_least(y, self.lo, self.lo_closed) and at_most(y, self.hi, self.hi_closed)
        return at_least(x, -self.hi, self.hi_closed) and at_most(x, -self.lo, self.lo_closed)

    def canonical(self) -> Block:
        """Rewrite quadrants with one infinite coordinate as the band they equal.

        For instance ``bb`` with ``hi = +inf`` is the region ``y >= lo``,
        which is the horizontal band ``hb[lo, +inf[``.  The whole plane is
        kept as ``bb]-inf,+inf[``.
        """
        lo_inf, hi_inf = not is_finite(self.lo), not is_finite(self.hi)
        if self.kind in ("hb", "vb") or lo_inf == hi_inf:
            if self.kind == "db" and lo_inf and hi_inf:
                return Block("bb", NEG_INF, INF, False, False)
            return self
        if self.kind == "bb":
            if lo_inf:
                return Block("vb", NEG_INF, self.hi, False, self.hi_closed)
            return Block("hb", self.lo, INF, self.lo_closed, False)
        if lo_inf:
            return Block("hb", NEG_INF, self.hi, False, self.hi_closed)
        return Block("vb", self.lo, INF, self.lo_closed, False)


def block_from_trace(kind: str, trace: Interval) -> Block:
    """The block of the given kind whose anti-diagonal trace is ``trace``."""
    k = _kind(kind)
    if trace is None:
        raise PreconditionError("cannot build a block from an empty trace")
    if k == "db" and not trace.lo < trace.hi:
        raise PreconditionError(f"db trace {trace} is a point; that block is the zero module")
    return Block(k, trace.lo, trace.hi, not trace.lo_open, not trace.hi_open)


def block_trace(block: Block) -> Optional[Interval]:
    """The projection of the block's intersection with the anti-diagonal.

    Returns None when that intersection is empty, as for ``bb+`` and ``db-``
    blocks and for a ``bb`` block whose corner sits on the anti-diagonal with
    a boundary line removed.
    """
    lo, hi = block.lo, block.hi
    if block.kind == "db" and not lo < hi:
        return None
    if lo > hi or (lo == hi and not (block.lo_closed and block.hi_closed)):
        return None
    return Interval(lo, hi, not block.lo_closed, not block.hi_closed)


def formal_trace(block: Block) -> Tuple[ExtReal, ExtReal, bool, bool]:
    """``(lo, hi, lo_open, hi_open)`` as stored, even when the set trace is empty."""
    return (block.lo, block.hi, not block.lo_closed, not block.hi_closed)


def dual_block(block: Block) -> Block:
    """Swap birth and death quadrants around the same corner, negating flags."""
    if block.kind not in ("bb", "db"):
        raise PreconditionError(f"duality is defined for bb and db blocks, not {block.kind}")
    if not (is_finite(block.lo) and is_finite(block.hi)):
        raise PreconditionError(f"dual of {block} needs a finite corner")
    other = "bb" if block.kind == "db" else "db"
    # the corner is shared, so the roles of the two coordinates swap
    return Block(other, block.hi, block.lo, not block.hi_closed, not block.lo_closed)


def shift_block(block: Block, shift: Tuple[object, object]) -> Block:
    """The block ``B - s``, so that ``k^B[s]`` is the module of the result."""
    sx, sy = rational(shift[0]), rational(shift[1])
    if sx < 0 or sy < 0:
        raise PreconditionError("shift vector must be nonnegative")
    if block.kind == "bb":
        return replace(block, lo=block.lo - sy, hi=block.hi + sx)
    if block.kind == "db":
        return replace(block, lo=block.lo + sx, hi=block.hi - sy)
    if block.kind == "hb":
        return replace(block, lo=block.lo - sy, hi=block.hi - sy)
    return replace(block, lo=block.lo + sx, hi=block.hi + sx)


def in_upper_half(point: Tuple[object, object]) -> bool:
    return ext(point[0]) + ext(point[1]) > 0


def block_dim_at(block: Block, point: Tuple[object, object]) -> int:
    """Dimension of the block module at a point above the anti-diagonal."""
    if not in_upper_half(point):
        raise PreconditionError(f"point {point} is not above the anti-diagonal")
    return 1 if block.contains(point) else 0
