"""Level-set persistence of piecewise-linear functions.

The pipeline subdivides the complex once at every representative level (one
per open stratum between critical values).  Every slab ``{u <= f <= v}`` with
representative bounds is then a full subcomplex of that single cut complex,
so inclusions of slabs are literal inclusions of simplicial complexes.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .barcodes import GradedBarcode
from .errors import PreconditionError
from .exact import INF, NEG_INF, fmt, rational
from .functors import psi_barcode
from .homology import MAX_DIM, SimplicialComplex, homology, induced_map
from .intervals import Bar, Interval
from .mvsystems import MVSystem, mv_dim_at
from .zigzag import ZigzagModule, zigzag_decompose


@dataclass
class PLFunction:
    complex: SimplicialComplex
    values: dict
    _cut: SimplicialComplex | None = field(default=None, init=False, repr=False, compare=False)
    _cut_values: dict | None = field(default=None, init=False, repr=False, compare=False)

    def __init__(self, complex: SimplicialComplex, values: Mapping[Hashable, object]) -> None:
        self.complex = complex
        missing = [v for v in complex.vertices if v not in values]
        if missing:
            raise PreconditionError(f"vertex {missing[0]!r} has no value")
        self.values = {v: rational(values[v]) for v in complex.vertices}
        self._cut = None
        self._cut_values = None

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[Hashable]], values: Mapping[Hashable, object]) -> PLFunction:
        return cls(SimplicialComplex(simplices, vertices=values.keys()), values)


def critical_values(f: PLFunction) -> list[Fraction]:
    if not f.values:
        raise PreconditionError("critical values of an empty complex are undefined")
    return sorted(set(f.values.values()))


def representatives(critical: Sequence[Fraction]) -> list[Fraction]:
    """One level inside each open stratum: below, between and above the critical values."""
    if not critical:
        return []
    mids = [(a + b) / 2 for a, b in zip(critical, critical[1:])]
    return [critical[0] - 1] + mids + [critical[-1] + 1]


def _cut_complex(f: PLFunction) -> tuple[SimplicialComplex, dict]:
    if f._cut is not None:
        return f._cut, f._cut_values
    levels = representatives(critical_values(f))
    values: dict = {("v", v): val for v, val in f.values.items()}

    def edge_points(a, b) -> list:
        """Vertices along the edge from a to b, in that order."""
        fa, fb = f.values[a], f.values[b]
        lo, hi = sorted((fa, fb))
        i, j = bisect.bisect_right(levels, lo), bisect.bisect_left(levels, hi)
        inner = levels[i:j]
        if fa > fb:
            inner = inner[::-1]
        key = tuple(sorted((a, b), key=repr))
        pts = []
        for r in inner:
            vid = ("c", key, r)
            values[vid] = r
            pts.append(vid)
        return [("v", a)] + pts + [("v", b)]

    bounds = [NEG_INF] + levels + [INF]
    out: list[tuple] = []
    for v in f.complex.simplices(0):
        out.append(tuple(("v", x) for x in v))
    for e in f.complex.simplices(1):
        a, b = sorted(e, key=repr)
        pts = edge_points(a, b)
        out.extend(zip(pts, pts[1:]))
    for t in f.complex.simplices(2):
        a, b, c = sorted(t, key=repr)
        ring = edge_points(a, b)[:-1] + edge_points(b, c)[:-1] + edge_points(c, a)[:-1]
        for lo, hi in zip(bounds, bounds[1:]):
            poly = [p for p in ring if lo <= values[p] <= hi]
            if len(poly) < 3:
                continue
            for k in range(1, len(poly) - 1):
                out.append((poly[0], poly[k], poly[k + 1]))
    f._cut = SimplicialComplex(out)
    f._cut_values = values
    return f._cut, values


def _stratum_representative(f: PLFunction, t: object) -> Fraction:
    t = rational(t)
    crit = critical_values(f)
    k = bisect.bisect_left(crit, t)
    if k < len(crit) and crit[k] == t:
        raise PreconditionError(f"level {fmt(t)} is a critical value")
    return representatives(crit)[k]


def preimage_complex(f: PLFunction, u: object, v: object) -> SimplicialComplex:
    """The slab over ``[u, v]``, with u and v moved to the representatives of their strata.

    For ``u = v`` this is the level set at that representative.
    """
    u, v = rational(u), rational(v)
    if u > v:
        raise PreconditionError(f"slab bounds out of order: {fmt(u)} > {fmt(v)}")
    if not f.values:
        return SimplicialComplex()
    ru, rv = _stratum_representative(f, u), _stratum_representative(f, v)
    cut, values = _cut_complex(f)
    return cut.induced_subcomplex(p for p, val in values.items() if ru <= val <= rv)


def stalk_zigzags(f: PLFunction) -> tuple[list[Fraction], list[ZigzagModule]]:
    """Critical values and, per degree, the cohomology zigzag U0 <- P1 -> U1 <- ... -> Uk."""
    crit = critical_values(f)
    reps = representatives(crit)
    levels = [preimage_complex(f, r, r) for r in reps]
    slabs = [preimage_complex(f, reps[j - 1], reps[j]) for j in range(1, len(reps))]
    zigzags = []
    for i in range(MAX_DIM + 1):
        dims, directions, maps = [homology(levels[0], i).dim], [], []
        for j, slab in enumerate(slabs, start=1):
            dims += [homology(slab, i).dim, homology(levels[j], i).dim]
            # cohomology arrows are transposes of homology inclusions, pointing out of P_j
            directions += ["b", "f"]
            maps += [induced_map(levels[j - 1], slab, i).T, induced_map(levels[j], slab, i).T]
        zigzags.append(ZigzagModule(dims, directions, maps))
    return crit, zigzags


def node_interval_to_interval(p: int, q: int, crit: Sequence[Fraction]) -> Interval:
    """Nodes are U0, P1, U1, ..., Pk, Uk; P_j sits at crit[j-1], U_j between crit[j-1] and crit[j]."""
    last = 2 * len(crit)
    if p == 0:
        lo, lo_open = NEG_INF, True
    elif p % 2:
        lo, lo_open = crit[(p - 1) // 2], False
    else:
        lo, lo_open = crit[p // 2 - 1], True
    if q == last:
        hi, hi_open = INF, True
    elif q % 2:
        hi, hi_open = crit[(q - 1) // 2], False
    else:
        hi, hi_open = crit[q // 2], True
    return Interval(lo, hi, lo_open, hi_open)


def pushforward_barcode(f: PLFunction) -> GradedBarcode:
    if not f.values:
        return GradedBarcode()
    crit, zigzags = stalk_zigzags(f)
    bars = []
    for degree, z in enumerate(zigzags):
        for (p, q), mult in zigzag_decompose(z).items():
            bars += [Bar(node_interval_to_interval(p, q, crit), degree)] * mult
    return GradedBarcode(bars)


def levelset_mv(f: PLFunction) -> MVSystem:
    return psi_barcode(pushforward_barcode(f))


@dataclass(frozen=True)
class Mismatch:
    point: tuple
    degree: int
    homology_dim: int
    system_dim: int


def default_grid(f: PLFunction, n: int) -> list[tuple[Fraction, Fraction]]:
    """Points ``(-u, v)`` for ``n`` non-critical levels u < v spread over the strata.

    The level list always contains two values per open stratum when ``n``
    allows, so both level sets and slabs are exercised.
    """
    if n < 2:
        raise PreconditionError("grid size must be at least 2")
    crit = critical_values(f)
    lows = [crit[0] - 2] + list(crit)
    highs = list(crit) + [crit[-1] + 2]
    stratum_points = [[(2 * a + b) / 3, (a + 2 * b) / 3] for a, b in zip(lows, highs)]
    order = [p[0] for p in stratum_points] + [p[1] for p in stratum_points]
    chosen = sorted(order[:n]) if n <= len(order) else sorted(order)
    if n > len(order):
        # split the widest gaps until n levels exist
        while len(chosen) < n:
            gaps = [(b - a, a, b) for a, b in zip(chosen, chosen[1:])]
            _, a, b = max(gaps)
            mid = (a + b) / 2
            if mid in crit:
                mid = (a + 3 * b) / 4
            bisect.insort(chosen, mid)
    return [(-u, v) for u in chosen for v in chosen if u < v]


def verify_pointwise_dims(
    f: PLFunction, system: MVSystem, grid: Iterable[tuple[object, object]]
) -> list[Mismatch]:
    crit = set(critical_values(f)) if f.values else set()
    report = []
    for x, y in grid:
        x, y = rational(x), rational(y)
        u, v = -x, y
        if u in crit or v in crit:
            raise PreconditionError(f"grid point ({fmt(x)}, {fmt(y)}) lies on a critical coordinate")
        if u >= v:
            raise PreconditionError(f"grid point ({fmt(x)}, {fmt(y)}) is not above the anti-diagonal")
        space = preimage_complex(f, u, v)
        for i in range(MAX_DIM + 1):
            h = homology(space, i).dim
            m = mv_dim_at(system, i, (x, y))
            if h != m:
                report.append(Mismatch((x, y), i, h, m))
    return report
