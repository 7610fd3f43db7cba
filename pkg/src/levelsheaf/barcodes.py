"""Graded barcodes of constructible sheaves on the line and their distance."""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import PreconditionError
from .exact import INF, is_finite
from .intervals import Bar, IntervalClass, _eps, bar_dies, bars_eps_interleaved, classify, convolve_bar


class GradedBarcode:
    """Immutable sorted multiset of bars."""

    __slots__ = ("_bars",)

    def __init__(self, bars: Iterable[Bar] = ()) -> None:
        bars = list(bars)
        for bar in bars:
            if not isinstance(bar, Bar):
                raise PreconditionError(f"expected Bar, got {type(bar).__name__}")
        self._bars: Tuple[Bar, ...] = tuple(sorted(bars, key=Bar.sort_key))

    @classmethod
    def parse(cls, *items: Tuple[str, int]) -> GradedBarcode:
        """``GradedBarcode.parse(("[0,1]", 0), ("]0,2[", 1))``."""
        return cls(Bar.parse(text, degree) for text, degree in items)

    @property
    def bars(self) -> Tuple[Bar, ...]:
        return self._bars

    def __iter__(self) -> Iterator[Bar]:
        return iter(self._bars)

    def __len__(self) -> int:
        return len(self._bars)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedBarcode) and self._bars == other._bars

    def __hash__(self) -> int:
        return hash(self._bars)

    def __add__(self, other: GradedBarcode) -> GradedBarcode:
        return GradedBarcode(self._bars + other._bars)

    def __repr__(self) -> str:
        return "GradedBarcode([" + ", ".join(str(b) for b in self._bars) + "])"

    def multiset(self) -> Counter:
        return Counter(self._bars)


class CLRSplit(NamedTuple):
    compact: GradedBarcode
    left: GradedBarcode
    right: GradedBarcode
    full: GradedBarcode


def clr_split(barcode: GradedBarcode) -> CLRSplit:
    groups: dict[str, list[Bar]] = {"C": [], "L": [], "R": [], "F": []}
    for bar in barcode:
        c = classify(bar.interval)
        key = "C" if c.compact_family else ("F" if c is IntervalClass.FULL else c.value)
        groups[key].append(bar)
    return CLRSplit(*(GradedBarcode(groups[k]) for k in ("C", "L", "R", "F")))


def barcode_convolve(barcode: GradedBarcode, eps: object) -> GradedBarcode:
    _eps(eps)  # validate even when there are no bars
    return GradedBarcode(convolve_bar(bar, eps) for bar in barcode)


def candidate_epsilons(a: GradedBarcode, b: GradedBarcode) -> list[Fraction]:
    """Every value at which some matching predicate can change truth value."""
    ends = sorted({e for bar in list(a) + list(b) for e in (bar.lo, bar.hi) if is_finite(e)})
    out = {Fraction(0)}
    for i, e in enumerate(ends):
        for f in ends[i + 1:]:
            out.add(f - e)
            out.add((f - e) / 2)
    return sorted(out)


def _has_perfect_matching(n_left: int, n_right: int, edges: Sequence[Tuple[int, int]]) -> bool:
    if n_left != n_right:
        return False
    if n_left == 0:
        return True
    if not edges:
        return False
    rows, cols = zip(*edges)
    graph = csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(n_left, n_right))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def _partial_matching_exists(
    left: Sequence[Bar], right: Sequence[Bar], linked: Callable[[Bar, Bar], bool], dies: Callable[[Bar], bool]
) -> bool:
    """Matching where unmatched bars must die.

    Standard reduction: add a private "diagonal" partner for every bar, so
    the question becomes a perfect matching on ``n + m`` vertices per side.
    """
    n, m = len(left), len(right)
    edges = []
    for i, p in enumerate(left):
        for j, q in enumerate(right):
            if linked(p, q):
                edges.append((i, j))
        if dies(p):
            edges.append((i, m + i))
    for j, q in enumerate(right):
        if dies(q):
            edges.append((n + j, j))
        for i in range(n):
            edges.append((n + j, m + i))
    return _has_perfect_matching(n + m, n + m, edges)


def eps_matching_exists(a: GradedBarcode, b: GradedBarcode, eps: object) -> bool:
    sa, sb = clr_split(a), clr_split(b)
    interleaved = lambda p, q: bars_eps_interleaved(p, q, eps)  # noqa: E731
    dies = lambda p: bar_dies(p, eps)  # noqa: E731

    ca, cb = sa.compact.bars, sb.compact.bars
    c_edges = [(i, j) for i, p in enumerate(ca) for j, q in enumerate(cb) if interleaved(p, q)]
    if not _has_perfect_matching(len(ca), len(cb), c_edges):
        return False

    for side_a, side_b in ((sa.left, sb.left), (sa.right, sb.right)):
        by_degree: dict[int, tuple[list[Bar], list[Bar]]] = defaultdict(lambda: ([], []))
        for bar in side_a:
            by_degree[bar.degree][0].append(bar)
        for bar in side_b:
            by_degree[bar.degree][1].append(bar)
        for left, right in by_degree.values():
            if not _partial_matching_exists(left, right, interleaved, dies):
                return False

    full_a = Counter(bar.degree for bar in sa.full)
    full_b = Counter(bar.degree for bar in sb.full)
    return full_a == full_b


def bottleneck_distance(a: GradedBarcode, b: GradedBarcode) -> Fraction | float:
    """Smallest candidate eps admitting an eps-matching, or ``inf``."""
    candidates = candidate_epsilons(a, b)
    if not eps_matching_exists(a, b, candidates[-1]):
        return INF
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if eps_matching_exists(a, b, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]
