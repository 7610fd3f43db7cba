"""Exhaustive matching enumeration, an independent check on the matching code.

No splitting into compact, left and right families happens here: every bar
of one side is either paired with an unused bar of the other side that it
is eps-interleaved with, or left over, in which case it has to die.  The
per-family rules of ``eps_matching_exists`` must agree with this.
"""

from __future__ import annotations

from fractions import Fraction

from .barcodes import GradedBarcode, candidate_epsilons
from .errors import OracleBudgetExceeded
from .exact import INF
from .intervals import bar_dies, bars_eps_interleaved

MAX_BARS = 8


def eps_matching_bruteforce(a: GradedBarcode, b: GradedBarcode, eps: object) -> bool:
    left, right = list(a), list(b)
    if len(left) > MAX_BARS or len(right) > MAX_BARS:
        raise OracleBudgetExceeded(f"brute-force matching handles at most {MAX_BARS} bars per side")
    link = [[bars_eps_interleaved(p, q, eps) for q in right] for p in left]
    left_dies = [bar_dies(p, eps) for p in left]
    right_dies = [bar_dies(q, eps) for q in right]

    def extend(i: int, used: int) -> bool:
        if i == len(left):
            return all(right_dies[j] for j in range(len(right)) if not used >> j & 1)
        if left_dies[i] and extend(i + 1, used):
            return True
        for j in range(len(right)):
            if not used >> j & 1 and link[i][j] and extend(i + 1, used | 1 << j):
                return True
        return False

    return extend(0, 0)


def bottleneck_bruteforce(a: GradedBarcode, b: GradedBarcode) -> Fraction | float:
    """Linear scan over the candidate values, smallest feasible one first."""
    for eps in candidate_epsilons(a, b):
        if eps_matching_bruteforce(a, b, eps):
            return eps
    return INF

