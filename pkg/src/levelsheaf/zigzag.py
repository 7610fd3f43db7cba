"""Finite zigzag modules over GF(2) and their interval decomposition.

Arrow ``i`` joins node ``i`` and node ``i + 1``.  Its direction is ``"f"``
(node i -> node i+1) or ``"b"`` (node i+1 -> node i); the matrix always has
shape ``(dim target, dim source)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import OracleBudgetExceeded, PreconditionError

NodeInterval = Tuple[int, int]

ISO_MAX_NODES = 7
ISO_MAX_DIM = 3


def _as_matrix(m: object, rows: int, cols: int) -> np.ndarray:
    arr = np.asarray(m, dtype=np.int64).reshape(rows, cols) if rows * cols else np.zeros((rows, cols), np.int64)
    return (arr % 2).astype(np.uint8)


@dataclass(frozen=True)
class ZigzagModule:
    dims: Tuple[int, ...]
    directions: Tuple[str, ...]
    maps: Tuple[np.ndarray, ...]

    def __init__(self, dims: Sequence[int], directions: Sequence[str], maps: Sequence[object]) -> None:
        dims = tuple(int(d) for d in dims)
        directions = tuple(directions)
        if any(d < 0 for d in dims):
            raise PreconditionError("node dimensions must be nonnegative")
        if len(directions) != max(len(dims) - 1, 0) or len(maps) != len(directions):
            raise PreconditionError("need one direction and one matrix per pair of consecutive nodes")
        fixed = []
        for i, (d, m) in enumerate(zip(directions, maps)):
            if d not in ("f", "b"):
                raise PreconditionError(f"arrow direction must be 'f' or 'b', got {d!r}")
            src, tgt = (i, i + 1) if d == "f" else (i + 1, i)
            arr = np.asarray(m)
            if arr.size and arr.shape != (dims[tgt], dims[src]):
                raise PreconditionError(f"arrow {i} has shape {arr.shape}, expected {(dims[tgt], dims[src])}")
            fixed.append(_as_matrix(arr, dims[tgt], dims[src]))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "maps", tuple(fixed))

    def __len__(self) -> int:
        return len(self.dims)

    def arrow(self, i: int) -> tuple[int, int, np.ndarray]:
        """(source node, target node, matrix) of arrow ``i``."""
        src, tgt = (i, i + 1) if self.directions[i] == "f" else (i + 1, i)
        return src, tgt, self.maps[i]


def interval_module(n: int, directions: Sequence[str], intervals: Iterable[NodeInterval]) -> ZigzagModule:
    """Direct sum of interval representations, identity maps inside each summand."""
    intervals = sorted(intervals)
    slots: list[list[int]] = [[] for _ in range(n)]
    for k, (p, q) in enumerate(intervals):
        if not 0 <= p <= q < n:
            raise PreconditionError(f"node interval {(p, q)} outside 0..{n - 1}")
        for node in range(p, q + 1):
            slots[node].append(k)
    dims = [len(s) for s in slots]
    maps = []
    for i, d in enumerate(directions):
        src, tgt = (i, i + 1) if d == "f" else (i + 1, i)
        m = np.zeros((dims[tgt], dims[src]), dtype=np.uint8)
        for c, k in enumerate(slots[src]):
            if k in slots[tgt]:
                m[slots[tgt].index(k), c] = 1
        maps.append(m)
    return ZigzagModule(dims, directions, maps)


# --- GF(2) linear algebra on int bit rows ---------------------------------


def _rows_to_ints(m: np.ndarray) -> list[int]:
    return [int(sum(int(b) << j for j, b in enumerate(row))) for row in m]


def gf2_rank(m: np.ndarray) -> int:
    return _rank_of_rows(_rows_to_ints(np.asarray(m)))


def _rank_of_rows(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def gf2_nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the right kernel of ``m``."""
    m = np.asarray(m, dtype=np.uint8) % 2
    rows, cols = m.shape
    a = m.copy()
    pivot_cols = []
    r = 0
    for c in range(cols):
        hit = next((i for i in range(r, rows) if a[i, c]), None)
        if hit is None:
            continue
        a[[r, hit]] = a[[hit, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.uint8)
        v[f] = 1
        for i, pc in enumerate(pivot_cols):
            v[pc] = a[i, f]
        basis.append(v)
    return basis


# --- decomposition ---------------------------------------------------------


def _offsets(dims: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return out


def _lim_to_colim_rank(z: ZigzagModule, p: int, q: int) -> int:
    """Rank of the canonical map from the limit to the colimit of ``z`` on nodes p..q."""
    dims = z.dims[p:q + 1]
    offs = _offsets(dims)
    total = sum(dims)
    if total == 0:
        return 0
    constraints = []
    relations = []
    for i in range(p, q):
        src, tgt, m = z.arrow(i)
        so, to = offs[src - p], offs[tgt - p]
        # limit: v_tgt = M v_src
        for r in range(z.dims[tgt]):
            row = np.zeros(total, dtype=np.uint8)
            row[to + r] = 1
            row[so:so + z.dims[src]] ^= m[r]
            constraints.append(row)
        # colimit: e_src ~ M e_src
        for c in range(z.dims[src]):
            rel = np.zeros(total, dtype=np.uint8)
            rel[so + c] = 1
            rel[to:to + z.dims[tgt]] ^= m[:, c]
            relations.append(rel)
    cmat = np.array(constraints, dtype=np.uint8).reshape(len(constraints), total)
    lim = gf2_nullspace(cmat)
    if not lim:
        return 0
    # every element of the limit maps to the same class from any node; use node p
    d0 = dims[0]
    images = []
    for v in lim:
        img = np.zeros(total, dtype=np.uint8)
        img[:d0] = v[:d0]
        images.append(img)
    rel_rows = _rows_to_ints(np.array(relations, dtype=np.uint8).reshape(len(relations), total))
    img_rows = _rows_to_ints(np.array(images, dtype=np.uint8))
    return _rank_of_rows(rel_rows + img_rows) - _rank_of_rows(rel_rows)


def zigzag_decompose(z: ZigzagModule) -> Counter:
    """Multiset of node intervals ``(p, q)`` of the indecomposable summands.

    Uses the fact that the rank of limit -> colimit over nodes p..q counts the
    summands whose support contains p..q, then inverts by inclusion-exclusion.
    """
    n = len(z)
    cover: dict[tuple[int, int], int] = {}

    def c(p: int, q: int) -> int:
        if p < 0 or q >= n:
            return 0
        key = (p, q)
        if key not in cover:
            cover[key] = _lim_to_colim_rank(z, p, q)
        return cover[key]

    out: Counter = Counter()
    for p in range(n):
        for q in range(p, n):
            mult = c(p, q) - c(p - 1, q) - c(p, q + 1) + c(p - 1, q + 1)
            if mult:
                out[(p, q)] = mult
    return out


# --- exhaustive isomorphism check -------------------------------------------


def _general_linear(n: int) -> list[np.ndarray]:
    out = []
    for bits in product((0, 1), repeat=n * n):
        m = np.array(bits, dtype=np.uint8).reshape(n, n)
        if gf2_rank(m) == n:
            out.append(m)
    return out


_GL_CACHE: dict[int, list[np.ndarray]] = {}


def _gl(n: int) -> list[np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = _general_linear(n)
    return _GL_CACHE[n]


def zigzag_iso_oracle(z: ZigzagModule, intervals: Iterable[NodeInterval] | Counter) -> bool:
    """Decide by enumeration of node-wise isomorphisms whether ``z`` equals the sum of intervals."""
    if isinstance(intervals, Counter):
        intervals = list(intervals.elements())
    intervals = list(intervals)
    n = len(z)
    if n > ISO_MAX_NODES or any(d > ISO_MAX_DIM for d in z.dims):
        raise OracleBudgetExceeded(
            f"zigzag_iso_oracle handles at most {ISO_MAX_NODES} nodes of dimension <= {ISO_MAX_DIM}"
        )
    if n == 0:
        return not intervals
    if any(not (0 <= p <= q < n) for p, q in intervals):
        return False
    model = interval_module(n, z.directions, intervals)
    if model.dims != z.dims:
        return False
    # a chain of pairwise constraints: sweep left to right keeping every
    # isomorphism at the current node that extends some choice to its left
    frontier = _gl(z.dims[0])
    for i in range(n - 1):
        src, tgt, a = z.arrow(i)
        _, _, b = model.arrow(i)
        nxt = []
        for psi in _gl(z.dims[i + 1]):
            for phi in frontier:
                phi_src, phi_tgt = (phi, psi) if src == i else (psi, phi)
                if np.array_equal((phi_tgt.astype(int) @ a) % 2, (b.astype(int) @ phi_src) % 2):
                    nxt.append(psi)
                    break
        if not nxt:
            return False
        frontier = nxt
    return True
