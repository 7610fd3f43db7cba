"""The brute-force interleaving search against the matching-based distance."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from levelsheaf.barcodes import candidate_epsilons, eps_matching_exists
from levelsheaf.blocks import Block
from levelsheaf.errors import OracleBudgetExceeded, PreconditionError
from levelsheaf.functors import xi_system
from levelsheaf.mvsystems import GradedBlock, MVSystem, mv_interleaving_distance
from levelsheaf.oracle import MAX_BLOCKS, mv_eps_interleaved_oracle

from strategies import mv_systems

F = Fraction


@settings(max_examples=60)
@given(mv_systems(normal=True), mv_systems(normal=True))
def test_oracle_agrees_with_matching_on_normal_systems(a, b):
    xa, xb = xi_system(a), xi_system(b)
    d = mv_interleaving_distance(a, b)
    for eps in candidate_epsilons(xa, xb):
        found = mv_eps_interleaved_oracle(a, b, eps)
        assert found == eps_matching_exists(xa, xb, eps)
        assert found == (d <= eps)


@settings(max_examples=60)
@given(mv_systems(normal=False), mv_systems(normal=False))
def test_oracle_with_arbitrary_flags_differs_only_at_thresholds(a, b):
    xa, xb = xi_system(a), xi_system(b)
    for eps in candidate_epsilons(xa, xb):
        matched = eps_matching_exists(xa, xb, eps)
        if mv_eps_interleaved_oracle(a, b, eps):
            assert matched
        if matched:
            # candidates are multiples of 1/2 here, so eps + 1/4 is strictly above the threshold
            assert mv_eps_interleaved_oracle(a, b, eps + F(1, 4))


def test_closed_band_outlives_its_sheaf_bar():
    # hb[-2,-1] keeps both lines; its sheaf bar [-2,-1[ dies at 1/2 but the block
    # module does not: the shift by (1, 1) still meets the band on the line y = -2
    band = MVSystem([GradedBlock(Block("hb", -2, -1, True, True), 0)])
    assert eps_matching_exists(xi_system(band), xi_system(MVSystem()), F(1, 2))
    assert not mv_eps_interleaved_oracle(band, MVSystem(), F(1, 2))
    assert mv_eps_interleaved_oracle(band, MVSystem(), F(3, 4))


def test_oracle_rejects_negative_eps():
    with pytest.raises(PreconditionError):
        mv_eps_interleaved_oracle(MVSystem(), MVSystem(), -1)


def test_oracle_budget():
    many = MVSystem(GradedBlock(Block("bb", -k, k, False, False), 0) for k in range(MAX_BLOCKS + 1))
    with pytest.raises(OracleBudgetExceeded):
        mv_eps_interleaved_oracle(many, MVSystem(), 1)
    few = MVSystem(GradedBlock(Block("db", -k, k, True, True), 0) for k in range(1, 4))
    with pytest.raises(OracleBudgetExceeded):
        mv_eps_interleaved_oracle(few, few, 0, budget=1)


def test_empty_systems_are_interleaved():
    assert mv_eps_interleaved_oracle(MVSystem(), MVSystem(), 0)
