"""Seeded random instances for the property suites and ``selftest``."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from .barcodes import GradedBarcode
from .blocks import Block
from .exact import INF, NEG_INF
from .intervals import Bar, Interval
from .mvsystems import GradedBlock, MVSystem
from .zigzag import ZigzagModule

# boundary flags of the blocks that Psi produces, per kind
NORMAL_FLAGS = {"bb": (False, False), "db": (True, True), "hb": (False, True), "vb": (True, False)}


def random_interval(rng: random.Random, lo: int = -4, hi: int = 4, denom: int = 1, p_inf: float = 0.15) -> Interval:
    points = [Fraction(k, denom) for k in range(lo * denom, hi * denom + 1)]
    while True:
        a, b = sorted(rng.choice(points) for _ in range(2))
        lo_open, hi_open = rng.random() < 0.5, rng.random() < 0.5
        if rng.random() < p_inf:
            a, lo_open = NEG_INF, True
        if rng.random() < p_inf:
            b, hi_open = INF, True
        if a == b and (lo_open or hi_open):
            continue
        return Interval(a, b, lo_open, hi_open)


def random_bar(rng: random.Random, degrees: Sequence[int] = (0, 1), **kw) -> Bar:
    return Bar(random_interval(rng, **kw), rng.choice(list(degrees)))


def random_barcode(rng: random.Random, max_bars: int = 4, **kw) -> GradedBarcode:
    return GradedBarcode(random_bar(rng, **kw) for _ in range(rng.randint(0, max_bars)))


def random_block(rng: random.Random, normal: bool = True, lo: int = -4, hi: int = 4, degrees=(0, 1)) -> GradedBlock:
    """A graded block of one of the canonical subtypes with endpoints in ``lo..hi``.

    ``normal`` selects the boundary flags that Psi would produce; otherwise
    flags are drawn uniformly.
    """
    kind = rng.choice(("bb", "db", "hb", "vb"))
    if kind == "bb":
        a, b = sorted(rng.randint(lo, hi) for _ in range(2))
    else:
        a, b = sorted(rng.sample(range(lo, hi + 1), 2))
    a, b = Fraction(a), Fraction(b)
    if kind in ("hb", "vb") and rng.random() < 0.15:
        if rng.random() < 0.5:
            a = NEG_INF
        else:
            b = INF
    flags = NORMAL_FLAGS[kind] if normal else (rng.random() < 0.5, rng.random() < 0.5)
    return GradedBlock(Block(kind, a, b, *flags), rng.choice(list(degrees)))


def random_mv_system(rng: random.Random, max_blocks: int = 4, normal: bool = True, **kw) -> MVSystem:
    return MVSystem(random_block(rng, normal, **kw) for _ in range(rng.randint(0, max_blocks)))


def random_zigzag(rng: random.Random, max_nodes: int = 7, max_dim: int = 3) -> ZigzagModule:
    n = rng.randint(1, max_nodes)
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    directions = [rng.choice("fb") for _ in range(n - 1)]
    maps = []
    for i, d in enumerate(directions):
        src, tgt = (i, i + 1) if d == "f" else (i + 1, i)
        bits = [rng.randint(0, 1) for _ in range(dims[tgt] * dims[src])]
        maps.append(np.array(bits, dtype=np.uint8).reshape(dims[tgt], dims[src]))
    return ZigzagModule(dims, directions, maps)


def random_values(rng: random.Random, vertices: Sequence, lo: int = -3, hi: int = 3, denom: int = 2) -> dict:
    return {v: Fraction(rng.randint(lo * denom, hi * denom), denom) for v in vertices}


def perturbed_values(rng: random.Random, values: dict, radius: int = 2, denom: int = 2) -> dict:
    return {v: x + Fraction(rng.randint(-radius, radius), denom) for v, x in values.items()}
