"""Simplicial homology over GF(2) for complexes of dimension at most two.

Chains are Python ints used as bit vectors over the simplices of one
dimension, in the order of ``SimplicialComplex.simplices(d)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import PreconditionError

MAX_DIM = 2


def _key(v: Hashable) -> tuple:
    # only a deterministic order is needed, so mixed id types are fine
    return (type(v).__name__, repr(v))


class SimplicialComplex:
    """A finite abstract simplicial complex, closed under taking faces."""

    def __init__(self, simplices: Iterable[Iterable[Hashable]] = (), vertices: Iterable[Hashable] = ()) -> None:
        cells: set[frozenset] = set()
        for v in vertices:
            cells.add(frozenset([v]))
        for s in simplices:
            s = frozenset(s)
            if not s:
                continue
            if len(s) > MAX_DIM + 1:
                raise PreconditionError(f"simplex {sorted(s, key=_key)} has dimension above {MAX_DIM}")
            for r in range(1, len(s) + 1):
                for face in combinations(sorted(s, key=_key), r):
                    cells.add(frozenset(face))
        self._by_dim: list[list[frozenset]] = [[] for _ in range(MAX_DIM + 1)]
        for c in cells:
            self._by_dim[len(c) - 1].append(c)
        for d in range(MAX_DIM + 1):
            self._by_dim[d].sort(key=lambda c: sorted(map(_key, c)))
        self._index = [{c: i for i, c in enumerate(cs)} for cs in self._by_dim]
        self._homology: dict[int, Homology] = {}

    def simplices(self, d: int) -> Sequence[frozenset]:
        return self._by_dim[d] if 0 <= d <= MAX_DIM else ()

    def index(self, d: int, simplex: frozenset) -> int:
        return self._index[d][simplex]

    def __contains__(self, simplex: Iterable[Hashable]) -> bool:
        s = frozenset(simplex)
        return 1 <= len(s) <= MAX_DIM + 1 and s in self._index[len(s) - 1]

    @property
    def vertices(self) -> list:
        return [next(iter(c)) for c in self._by_dim[0]]

    @property
    def dimension(self) -> int:
        for d in range(MAX_DIM, -1, -1):
            if self._by_dim[d]:
                return d
        return -1

    def __len__(self) -> int:
        return sum(len(cs) for cs in self._by_dim)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self._by_dim == other._by_dim

    __hash__ = None  # type: ignore[assignment]

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return all(c in other._index[d] for d in range(MAX_DIM + 1) for c in self._by_dim[d])

    def boundary(self, d: int) -> list[int]:
        """Columns of the boundary map from d-chains to (d-1)-chains."""
        if d <= 0:
            return [0] * len(self.simplices(d))
        lower = self._index[d - 1]
        cols = []
        for s in self._by_dim[d]:
            mask = 0
            for v in s:
                mask |= 1 << lower[s - {v}]
            cols.append(mask)
        return cols

    def induced_subcomplex(self, keep: Iterable[Hashable]) -> SimplicialComplex:
        """All simplices whose vertices lie in ``keep``."""
        keep = set(keep)
        top = [c for d in range(MAX_DIM + 1) for c in self._by_dim[d] if c <= keep]
        return SimplicialComplex(top)


@dataclass
class Homology:
    """Homology in one degree together with what is needed to read off coordinates."""

    degree: int
    dim: int
    representatives: list[int]
    _rows: dict[int, tuple[int, int]] = field(repr=False, default_factory=dict)

    def coordinates(self, cycle: int) -> int:
        """Bit vector over ``representatives`` of the class of ``cycle``."""
        tag = 0
        while cycle:
            top = cycle.bit_length() - 1
            row = self._rows.get(top)
            if row is None:
                raise PreconditionError("chain is not a cycle of this complex")
            cycle ^= row[0]
            tag ^= row[1]
        return tag


def _reduce_columns(cols: Sequence[int]) -> tuple[dict[int, int], list[int]]:
    """Column reduction.  Returns pivot rows of the image and the kernel basis."""
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(cols):
        combo = 1 << j
        while col:
            top = col.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            col ^= hit[0]
            combo ^= hit[1]
        if col:
            pivots[col.bit_length() - 1] = (col, combo)
        else:
            kernel.append(combo)
    return {top: col for top, (col, _) in pivots.items()}, kernel


def homology(complex: SimplicialComplex, i: int) -> Homology:
    if not 0 <= i <= MAX_DIM:
        raise PreconditionError(f"homology degree must be 0..{MAX_DIM}, got {i}")
    cached = complex._homology.get(i)
    if cached is not None:
        return cached
    image_pivots, _ = _reduce_columns(complex.boundary(i + 1)) if i < MAX_DIM else ({}, [])
    _, cycles = _reduce_columns(complex.boundary(i))
    rows: dict[int, tuple[int, int]] = {top: (col, 0) for top, col in image_pivots.items()}
    reps: list[int] = []
    for z in cycles:
        col, tag = z, 0
        while col:
            top = col.bit_length() - 1
            hit = rows.get(top)
            if hit is None:
                break
            col ^= hit[0]
            tag ^= hit[1]
        if col:
            rows[col.bit_length() - 1] = (col, tag ^ (1 << len(reps)))
            reps.append(z)
    h = Homology(i, len(reps), reps, rows)
    complex._homology[i] = h
    return h


def betti(complex: SimplicialComplex) -> list[int]:
    return [homology(complex, i).dim for i in range(MAX_DIM + 1)]


def induced_map(sub: SimplicialComplex, sup: SimplicialComplex, i: int) -> np.ndarray:
    """Matrix of ``H_i(sub) -> H_i(sup)`` in the retained bases (rows index sup)."""
    if not sub.is_subcomplex_of(sup):
        raise PreconditionError("first complex is not a subcomplex of the second")
    hs, ht = homology(sub, i), homology(sup, i)
    matrix = np.zeros((ht.dim, hs.dim), dtype=np.uint8)
    cells = sub.simplices(i)
    for col, rep in enumerate(hs.representatives):
        chain = 0
        bits = rep
        while bits:
            low = bits & -bits
            chain |= 1 << sup.index(i, cells[low.bit_length() - 1])
            bits ^= low
        coords = ht.coordinates(chain)
        for row in range(ht.dim):
            matrix[row, col] = (coords >> row) & 1
    return matrix
