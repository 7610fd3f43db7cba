"""Translations between blocks and intervals.

``xi`` sends a block to the interval sheaf of its sheafification, reading
only the kind and the two coordinates.  ``psi`` goes back and picks the
representative whose boundary inclusions are the opposite of the interval's
endpoint closedness, which is the block that the cohomology of a sheaf on
``]-x, y[`` actually produces.
"""

from __future__ import annotations

from .barcodes import GradedBarcode
from .blocks import Block
from .exact import is_finite
from .intervals import Bar, Interval, IntervalClass, classify
from .mvsystems import GradedBlock, MVSystem

# (lo_open, hi_open) of the image interval, before infinite endpoints are forced open
_XI_OPENNESS = {"bb": (False, False), "hb": (False, True), "vb": (True, False), "db": (True, True)}

_PSI_KIND = {
    IntervalClass.C_OPEN: "db",
    IntervalClass.C_CLOSED: "bb",
    IntervalClass.R: "hb",
    IntervalClass.L: "vb",
    IntervalClass.FULL: "bb",
}


def xi_block(gb: GradedBlock) -> GradedBarcode:
    block = gb.block.canonical()
    if block.is_zero:
        return GradedBarcode()
    lo_open, hi_open = _XI_OPENNESS[block.kind]
    lo_open = lo_open or not is_finite(block.lo)
    hi_open = hi_open or not is_finite(block.hi)
    return GradedBarcode([Bar(Interval(block.lo, block.hi, lo_open, hi_open), gb.degree)])


def xi_system(system: MVSystem) -> GradedBarcode:
    bars = []
    for gb in system:
        bars.extend(xi_block(gb).bars)
    return GradedBarcode(bars)


def psi_bar(bar: Bar) -> MVSystem:
    iv = bar.interval
    kind = _PSI_KIND[classify(iv)]
    # a closed endpoint becomes an excluded boundary line and vice versa
    block = Block(kind, iv.lo, iv.hi, iv.lo_open, iv.hi_open)
    return MVSystem([GradedBlock(block, bar.degree)])


def psi_barcode(barcode: GradedBarcode) -> MVSystem:
    blocks = []
    for bar in barcode:
        blocks.extend(psi_bar(bar).blocks)
    return MVSystem(blocks)
