import random
from fractions import Fraction

from hypothesis import given

from levelsheaf.barcodes import (
    GradedBarcode,
    barcode_convolve,
    bottleneck_distance,
    candidate_epsilons,
    clr_split,
    eps_matching_exists,
)
from levelsheaf.bruteforce import bottleneck_bruteforce, eps_matching_bruteforce
from levelsheaf.exact import INF
from levelsheaf.generators import random_barcode
from levelsheaf.intervals import IntervalClass, classify

from strategies import barcodes, eps_values

F = Fraction
P = GradedBarcode.parse
CIRCLE_F = P(("[-1,1]", 0), ("]-1,1[", 0))
CIRCLE_P = P(("[0,0]", 0), ("[0,0]", 1))


def test_clr_split_examples():
    closed = P(("[0,1]", 0), ("[2,5]", 1))
    assert clr_split(closed).compact == closed
    s = clr_split(P(("[0,2[", 0), ("]1,3]", 0)))
    assert s.right == P(("[0,2[", 0)) and s.left == P(("]1,3]", 0))
    assert clr_split(P(("]-inf,inf[", 0))).full == P(("]-inf,inf[", 0))


@given(barcodes(max_bars=6))
def test_clr_split_partitions(b):
    s = clr_split(b)
    assert s.compact + s.left + s.right + s.full == b
    assert all(classify(x.interval).compact_family for x in s.compact)
    assert all(classify(x.interval) is IntervalClass.L for x in s.left)


def test_barcode_convolve_examples():
    assert barcode_convolve(CIRCLE_F, 0) == CIRCLE_F
    assert barcode_convolve(P(("]0,4[", 0)), 2) == P(("[2,2]", 1))


@given(barcodes(), eps_values, eps_values)
def test_barcode_convolve_semigroup(b, e1, e2):
    assert barcode_convolve(barcode_convolve(b, e1), e2) == barcode_convolve(b, e1 + e2)


def test_candidate_epsilons_examples():
    assert candidate_epsilons(GradedBarcode(), GradedBarcode()) == [0]
    assert 1 in candidate_epsilons(P(("[0,2]", 0)), P(("[1,3]", 0)))
    assert 2 in candidate_epsilons(P(("]0,4[", 0)), GradedBarcode())


def test_matching_examples():
    assert eps_matching_exists(CIRCLE_F, CIRCLE_F, 0)
    assert eps_matching_exists(CIRCLE_F, CIRCLE_P, 1)
    assert not eps_matching_exists(CIRCLE_F, CIRCLE_P, F(1, 2))
    for eps in (0, 1, 100):
        assert not eps_matching_exists(P(("[0,10]", 0)), GradedBarcode(), eps)


def test_bottleneck_examples():
    assert bottleneck_distance(CIRCLE_F, CIRCLE_F) == 0
    assert bottleneck_distance(CIRCLE_F, CIRCLE_P) == 1
    below = [e for e in candidate_epsilons(CIRCLE_F, CIRCLE_P) if e < 1]
    assert not eps_matching_exists(CIRCLE_F, CIRCLE_P, max(below))
    assert bottleneck_distance(P(("[0,2[", 0)), GradedBarcode()) == 1
    assert bottleneck_distance(P(("[0,10]", 0)), GradedBarcode()) == INF


def test_full_line_bars_need_partners_in_the_same_degree():
    full0, full1 = P(("]-inf,inf[", 0)), P(("]-inf,inf[", 1))
    assert bottleneck_distance(full0, full0) == 0
    assert bottleneck_distance(full0, full1) == INF


@given(barcodes(max_bars=6), barcodes(max_bars=6), barcodes(max_bars=6))
def test_metric_axioms(a, b, c):
    assert bottleneck_distance(a, a) == 0
    dab = bottleneck_distance(a, b)
    assert dab == bottleneck_distance(b, a)
    assert bottleneck_distance(a, c) <= dab + bottleneck_distance(b, c)


@given(barcodes(max_bars=6), barcodes(max_bars=6), eps_values)
def test_type_segregation(a, b, eps):
    # dropping every L bar from both sides cannot change whether C and R still match
    sa, sb = clr_split(a), clr_split(b)
    without_l = eps_matching_exists(sa.compact + sa.right + sa.full, sb.compact + sb.right + sb.full, eps)
    only_l = eps_matching_exists(sa.left, sb.left, eps)
    assert eps_matching_exists(a, b, eps) == (without_l and only_l)


@given(barcodes(), eps_values)
def test_convolution_contracts_distance(b, eps):
    assert bottleneck_distance(barcode_convolve(b, eps), b) <= eps


@given(barcodes(), barcodes(), eps_values)
def test_convolution_is_nonexpansive(a, b, eps):
    assert bottleneck_distance(barcode_convolve(a, eps), barcode_convolve(b, eps)) <= bottleneck_distance(a, b)


@given(barcodes(), barcodes(), eps_values)
def test_matching_agrees_with_enumeration(a, b, eps):
    assert eps_matching_exists(a, b, eps) == eps_matching_bruteforce(a, b, eps)


def test_bottleneck_agrees_with_enumeration_on_seeded_cases():
    rng = random.Random(99)
    for _ in range(200):
        a, b = random_barcode(rng), random_barcode(rng)
        assert bottleneck_distance(a, b) == bottleneck_bruteforce(a, b), (a, b)


@given(barcodes(), barcodes())
def test_distance_is_attained(a, b):
    d = bottleneck_distance(a, b)
    if d != INF:
        assert eps_matching_exists(a, b, d)
        smaller = [e for e in candidate_epsilons(a, b) if e < d]
        if smaller:
            assert not eps_matching_exists(a, b, max(smaller))
