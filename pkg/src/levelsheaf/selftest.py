"""Randomized invariant suites, runnable from the command line."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .barcodes import barcode_convolve, bottleneck_distance, candidate_epsilons, eps_matching_exists
from .bruteforce import bottleneck_bruteforce
from .functors import psi_barcode, xi_system
from .generators import random_barcode, random_mv_system, random_zigzag
from .mvsystems import mv_interleaving_distance, mv_shift
from .oracle import mv_eps_interleaved_oracle
from .zigzag import zigzag_decompose, zigzag_iso_oracle


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} cases={self.cases} failures={len(self.failures)}"


def _eps(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(0, 8), 2)


def section_law(rng: random.Random) -> tuple | None:
    b = random_barcode(rng)
    if xi_system(psi_barcode(b)) != b:
        return (str(b),)
    return None


def convolution_semigroup(rng: random.Random) -> tuple | None:
    b, e1, e2 = random_barcode(rng), _eps(rng), _eps(rng)
    if barcode_convolve(barcode_convolve(b, e1), e2) != barcode_convolve(b, e1 + e2):
        return (str(b), str(e1), str(e2))
    return None


def shift_intertwining(rng: random.Random) -> tuple | None:
    m, e = random_mv_system(rng, normal=rng.random() < 0.5), _eps(rng)
    if xi_system(mv_shift(m, e)) != barcode_convolve(xi_system(m), e):
        return (str(m), str(e))
    return None


def zero_distance(rng: random.Random) -> tuple | None:
    m = random_mv_system(rng, normal=False)
    back = psi_barcode(xi_system(m))
    if mv_interleaving_distance(m, back) != 0:
        return (str(m),)
    return None


def isometry(rng: random.Random) -> tuple | None:
    a, b = random_mv_system(rng), random_mv_system(rng)
    xa, xb = xi_system(a), xi_system(b)
    for e in candidate_epsilons(xa, xb):
        if mv_eps_interleaved_oracle(a, b, e) != eps_matching_exists(xa, xb, e):
            return (str(a), str(b), str(e))
    return None


def bottleneck_vs_bruteforce(rng: random.Random) -> tuple | None:
    a, b = random_barcode(rng), random_barcode(rng)
    if bottleneck_distance(a, b) != bottleneck_bruteforce(a, b):
        return (str(a), str(b))
    return None


def zigzag_decomposition(rng: random.Random) -> tuple | None:
    z = random_zigzag(rng, max_nodes=5, max_dim=2)
    d = zigzag_decompose(z)
    if not zigzag_iso_oracle(z, d):
        return (z.dims, z.directions, dict(d))
    return None


SUITES: dict[str, Callable[[random.Random], tuple | None]] = {
    "section-law": section_law,
    "convolution-semigroup": convolution_semigroup,
    "shift-intertwining": shift_intertwining,
    "zero-distance-round-trip": zero_distance,
    "isometry": isometry,
    "bottleneck-bruteforce": bottleneck_vs_bruteforce,
    "zigzag-decomposition": zigzag_decomposition,
}


def run_selftest(seed: int = 0, cases: int = 50, names: Iterable[str] | None = None) -> list[SuiteResult]:
    results = []
    for name in names or SUITES:
        # each suite gets its own stream so adding a suite does not move the others
        rng = random.Random(f"{seed}:{name}")
        failures = []
        for _ in range(cases):
            bad = SUITES[name](rng)
            if bad is not None:
                failures.append(bad)
        results.append(SuiteResult(name, cases, failures))
    return results
