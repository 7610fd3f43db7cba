"""Brute-force decision of eps-interleavings between block-decomposed systems.

The search works on a finite sample of the half-plane.  Every block module,
and every shift of one by ``eps`` or ``2 eps``, is constant on the cells cut
out by a common set of axis coordinates, so one sample per cell suffices.
Each cell is sampled at a point three quarters and seven eighths of the way
along each axis, which keeps a representative above the anti-diagonal even
for cells that the anti-diagonal cuts through their corners, and leaves room
for a strictly larger second point in the same cell.

Over that sample:

* each pair of summands gets one GF(2) unknown when a nonzero module map
  between them exists (Hom between two block modules is 0 or 1 dimensional);
* commuting with the connecting maps gives linear equations on the unknowns;
* the two triangle identities give bilinear equations.

Unknowns split into independent components.  In each component the side
with the smaller solution space of its linear equations is enumerated and
the other side is solved by elimination.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .blocks import Block, dual_block, shift_block
from .errors import OracleBudgetExceeded, PreconditionError
from .exact import INF, NEG_INF, is_finite, rational
from .mvsystems import MVSystem

DEFAULT_BUDGET = 1 << 16
MAX_BLOCKS = 8


@dataclass(frozen=True)
class _Summand:
    region: Block
    degree: int
    partner: Optional[int]  # index of the other half of a db pair
    birth: bool  # True for the implicit dual half of a db pair


def _summands(system: MVSystem) -> list[_Summand]:
    out: list[_Summand] = []
    for gb in system:
        if gb.block.kind == "db":
            i = len(out)
            out.append(_Summand(gb.block, gb.degree, i + 1, False))
            out.append(_Summand(dual_block(gb.block), gb.degree + 1, i, True))
        else:
            out.append(_Summand(gb.block, gb.degree, None, False))
    return out


def _axis_ranges(block: Block):
    """Per-axis ``(lo, lo_in, hi, hi_in)`` describing the block as a product."""
    everything = (NEG_INF, False, INF, False)
    if block.kind == "bb":
        return (-block.hi, block.hi_closed, INF, False), (block.lo, block.lo_closed, INF, False)
    if block.kind == "db":
        return (NEG_INF, False, -block.lo, block.lo_closed), (NEG_INF, False, block.hi, block.hi_closed)
    if block.kind == "hb":
        return everything, (block.lo, block.lo_closed, block.hi, block.hi_closed)
    return (-block.hi, block.hi_closed, -block.lo, block.lo_closed), everything


class _Grid:
    def __init__(self, regions: Sequence[Block], eps: Fraction) -> None:
        base = set()
        for r in regions:
            for v in (r.lo, r.hi):
                if is_finite(v):
                    base.add(v)
                    base.add(-v)
        breaks = set()
        for v in base or {Fraction(0)}:
            for k in (0, 1, 2):
                breaks.add(v - k * eps)
                breaks.add(-(v - k * eps))
        s = sorted(breaks)
        samples = [s[0] - 2, s[0] - 1]
        for a, b in zip(s, s[1:]):
            samples.extend([a, a + (b - a) * Fraction(3, 4), a + (b - a) * Fraction(7, 8)])
        samples.extend([s[-1], s[-1] + 3, s[-1] + 4])
        self.samples = samples
        n = len(samples)
        upper = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(samples):
            upper[i, bisect_right(samples, -x):] = True
        self.upper = upper

    def _axis_mask(self, lo, lo_in, hi, hi_in) -> np.ndarray:
        s = self.samples
        start = bisect_left(s, lo) if lo_in else bisect_right(s, lo)
        end = bisect_right(s, hi) if hi_in else bisect_left(s, hi)
        mask = np.zeros(len(s), dtype=bool)
        mask[start:end] = True
        return mask

    def region(self, block: Block) -> np.ndarray:
        xr, yr = _axis_ranges(block)
        return np.outer(self._axis_mask(*xr), self._axis_mask(*yr)) & self.upper


def _strictly_above_any(q: np.ndarray) -> np.ndarray:
    """``out[i, j]`` is whether ``q`` holds somewhere at ``i' > i, j' > j``."""
    acc = np.logical_or.accumulate(np.logical_or.accumulate(q[::-1, ::-1], axis=0), axis=1)[::-1, ::-1]
    out = np.zeros_like(q)
    out[:-1, :-1] = acc[1:, 1:]
    return out


def _exists_pair(p: np.ndarray, q: np.ndarray) -> bool:
    if not p.any() or not q.any():
        return False
    return bool((p & _strictly_above_any(q)).any())


def _hom_nonzero(u: np.ndarray, v: np.ndarray) -> bool:
    """A nonzero map ``k^U -> k^V`` exists iff ``U & V`` is nonempty, closed
    downward inside ``U`` and closed upward inside ``V``.  On a product grid
    it is enough to look at neighbouring samples."""
    both = u & v
    if not both.any():
        return False
    u_only = u & ~v
    v_only = v & ~u
    for a, b in ((u_only, both), (both, v_only)):
        if (a[:-1, :] & b[1:, :]).any() or (a[:, :-1] & b[:, 1:]).any():
            return False
    return True


class _GF2System:
    """Incremental row reduction over GF(2) with equations as int bitmasks."""

    __slots__ = ("pivots", "ok")

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}
        self.ok = True

    def copy(self) -> _GF2System:
        c = _GF2System()
        c.pivots = dict(self.pivots)
        c.ok = self.ok
        return c

    def add(self, mask: int, rhs: int) -> bool:
        while mask:
            top = mask.bit_length() - 1
            row = self.pivots.get(top)
            if row is None:
                self.pivots[top] = (mask, rhs)
                return True
            mask ^= row[0]
            rhs ^= row[1]
        if rhs:
            self.ok = False
        return self.ok

    def nullspace(self, nvars: int) -> list[int]:
        """Basis of the solutions of the homogeneous equations added so far."""
        reduced = {top: row[0] for top, row in self.pivots.items()}
        tops = sorted(reduced)
        for t in tops:  # ascending, so row t is already clear of smaller pivots
            for t2 in tops:
                if t2 != t and (reduced[t2] >> t) & 1:
                    reduced[t2] ^= reduced[t]
        basis = []
        for free in range(nvars):
            if free in reduced:
                continue
            vec = 1 << free
            for top, mask in reduced.items():
                if (mask >> free) & 1:
                    vec |= 1 << top
            basis.append(vec)
        return basis


class _MorphismSpace:
    """Unknown scalars of a map from one summand list into a shifted one."""

    def __init__(self, src: list[_Summand], dst: list[_Summand], src_regions, dst_regions):
        self.src, self.dst = src, dst
        self.pairs: dict[tuple[int, int], int] = {}
        for a, sa in enumerate(src):
            for c, sc in enumerate(dst):
                if sa.degree == sc.degree and _hom_nonzero(src_regions[a], dst_regions[c]):
                    self.pairs[(a, c)] = len(self.pairs)
        self.linear: list[int] = []  # homogeneous equations, as masks over local indices
        self._connecting_equations(src_regions, dst_regions)

    def _connecting_equations(self, rs, rd) -> None:
        empty = np.zeros_like(rs[0]) if rs else None
        for a, sa in enumerate(self.src):
            for c, sc in enumerate(self.dst):
                if sa.degree != sc.degree + 1:
                    continue
                x = None
                if sa.birth and (sa.partner, c) in self.pairs:
                    x = self.pairs[(sa.partner, c)]
                y = None
                if not sc.birth and sc.partner is not None and (a, sc.partner) in self.pairs:
                    y = self.pairs[(a, sc.partner)]
                if x is None and y is None:
                    continue
                # the square at (p, q = p + s) reads  alpha * x = beta * y  with
                # alpha = [p in D & target c][q in a]  and  beta = [q in a & E dual][p in E]
                x1 = rs[sa.partner] & rd[c] if x is not None else empty
                y1 = rs[a]
                x2 = rd[c] if y is not None else empty
                y2 = rs[a] & rd[sc.partner] if y is not None else empty
                only_alpha = _exists_pair(x1 & ~x2, y1) or _exists_pair(x1, y1 & ~y2)
                only_beta = _exists_pair(x2 & ~x1, y2) or _exists_pair(x2, y2 & ~y1)
                both = _exists_pair(x1 & x2, y1 & y2)
                if only_alpha and x is not None:
                    self.linear.append(1 << x)
                if only_beta and y is not None:
                    self.linear.append(1 << y)
                if both and x is not None and y is not None:
                    self.linear.append((1 << x) | (1 << y))


def _triangle_equations(left_regions, mid_regions_shifted, far_regions, left, f_pairs, g_pairs):
    """Equations  sum_m f(k,m) g(m,l) = [k = l]  at every sample point.

    ``left_regions[k]`` is where the source module lives, ``far_regions[l]``
    is the target of the composite (shifted by 2 eps), and
    ``mid_regions_shifted[m]`` is the intermediate module seen from p.
    Returns a list of ``(k, l, [m...], rhs)`` or None when some identity is
    impossible outright.
    """
    by_k: dict[int, list[int]] = {}
    by_l: dict[int, list[int]] = {}
    for (k, m) in f_pairs:
        by_k.setdefault(k, []).append(m)
    for (m, l) in g_pairs:
        by_l.setdefault(l, []).append(m)
    eqs = []
    for k, sk in enumerate(left):
        for l, sl in enumerate(left):
            if sk.degree != sl.degree:
                continue
            where = left_regions[k] & far_regions[l]
            if not where.any():
                continue
            mids = sorted(set(by_k.get(k, ())) & set(by_l.get(l, ())))
            rhs = 1 if k == l else 0
            if not mids:
                if rhs:
                    return None
                continue
            sig = np.stack([mid_regions_shifted[m][where] for m in mids], axis=1)
            for row in np.unique(sig, axis=0):
                chosen = [m for m, bit in zip(mids, row) if bit]
                if chosen:
                    eqs.append((k, l, chosen, rhs))
                elif rhs:
                    return None
    return eqs


def mv_eps_interleaved_oracle(a: MVSystem, b: MVSystem, eps: object, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide by exhaustive search whether ``a`` and ``b`` are eps-interleaved."""
    e = rational(eps)
    if e < 0:
        raise PreconditionError(f"eps must be nonnegative, got {e}")
    if len(a) > MAX_BLOCKS or len(b) > MAX_BLOCKS:
        raise OracleBudgetExceeded(f"oracle handles at most {MAX_BLOCKS} blocks per system")
    sa, sb = _summands(a), _summands(b)
    if not sa and not sb:
        return True

    def shifted(summands, k):
        return [shift_block(s.region, (k * e, k * e)) for s in summands]

    regions_a = [shifted(sa, k) for k in (0, 1, 2)]
    regions_b = [shifted(sb, k) for k in (0, 1, 2)]
    grid = _Grid(regions_a[0] + regions_b[0], e)
    ma = [[grid.region(r) for r in rs] for rs in regions_a]
    mb = [[grid.region(r) for r in rs] for rs in regions_b]

    f_space = _MorphismSpace(sa, sb, ma[0], mb[1])
    g_space = _MorphismSpace(sb, sa, mb[0], ma[1])

    tri_a = _triangle_equations(ma[0], mb[1], ma[2], sa, f_space.pairs, g_space.pairs)
    if tri_a is None:
        return False
    tri_b = _triangle_equations(mb[0], ma[1], mb[2], sb, g_space.pairs, f_space.pairs)
    if tri_b is None:
        return False

    # global variable numbering: f unknowns first, then g unknowns
    nf = len(f_space.pairs)
    bilinear = []  # (list of (fvar, gvar) products, rhs)
    for k, l, mids, rhs in tri_a:
        bilinear.append(([(f_space.pairs[(k, m)], nf + g_space.pairs[(m, l)]) for m in mids], rhs))
    for k, l, mids, rhs in tri_b:
        bilinear.append(([(f_space.pairs[(m, l)], nf + g_space.pairs[(k, m)]) for m in mids], rhs))
    linear = list(f_space.linear) + [mask << nf for mask in g_space.linear]
    return _solve(nf + len(g_space.pairs), nf, linear, bilinear, budget)


def _components(nvars: int, linear: list[int], bilinear) -> list[set[int]]:
    parent = list(range(nvars))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        parent[find(i)] = find(j)

    for mask in linear:
        bits = [i for i in range(nvars) if (mask >> i) & 1]
        for i in bits[1:]:
            union(bits[0], i)
    for terms, _ in bilinear:
        flat = [v for t in terms for v in t]
        for v in flat[1:]:
            union(flat[0], v)
    groups: dict[int, set[int]] = {}
    for i in range(nvars):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def _solve(nvars: int, nf: int, linear: list[int], bilinear, budget: int) -> bool:
    for comp in _components(nvars, linear, bilinear):
        if not _solve_component(comp, nf, linear, bilinear, budget):
            return False
    return True


def _solve_component(comp: set[int], nf: int, linear, bilinear, budget: int) -> bool:
    fvars = sorted(v for v in comp if v < nf)
    gvars = sorted(v for v in comp if v >= nf)
    lin = [m for m in linear if m and (m.bit_length() - 1) in comp]
    bil = [(t, r) for t, r in bilinear if t and t[0][0] in comp]
    if not bil:
        return True  # the zero assignment satisfies the homogeneous equations

    def local(mask: int, names: list[int]) -> int:
        out = 0
        for i, v in enumerate(names):
            if (mask >> v) & 1:
                out |= 1 << i
        return out

    def space(names: list[int]) -> list[int]:
        sys = _GF2System()
        pos = set(names)
        for m in lin:
            if (m.bit_length() - 1) in pos:
                sys.add(local(m, names), 0)
        return sys.nullspace(len(names)), sys

    f_basis, _ = space(fvars)
    g_basis, _ = space(gvars)
    enumerate_f = len(f_basis) <= len(g_basis)
    basis, names, other = (f_basis, fvars, gvars) if enumerate_f else (g_basis, gvars, fvars)
    if len(basis) > 62 or (1 << len(basis)) > budget:
        raise OracleBudgetExceeded(f"component needs 2^{len(basis)} assignments, budget is {budget}")
    _, other_lin = space(other)
    index_known = {v: i for i, v in enumerate(names)}
    index_other = {v: i for i, v in enumerate(other)}

    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        assignment = 0
        for c, vec in zip(coeffs, basis):
            if c:
                assignment ^= vec
        sys = other_lin.copy()
        ok = True
        for terms, rhs in bil:
            mask = 0
            for fv, gv in terms:
                known, unknown = (fv, gv) if enumerate_f else (gv, fv)
                if (assignment >> index_known[known]) & 1:
                    mask ^= 1 << index_other[unknown]
            if not sys.add(mask, rhs):
                ok = False
                break
        if ok:
            return True
    return False
