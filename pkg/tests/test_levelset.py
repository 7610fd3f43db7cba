import random
from fractions import Fraction

import pytest

from levelsheaf.barcodes import GradedBarcode, bottleneck_distance
from levelsheaf.blocks import Block
from levelsheaf.errors import PreconditionError
from levelsheaf.exact import is_finite
from levelsheaf.functors import xi_system
from levelsheaf.generators import perturbed_values, random_values
from levelsheaf.homology import SimplicialComplex, betti
from levelsheaf.levelset import (
    PLFunction,
    critical_values,
    default_grid,
    levelset_mv,
    node_interval_to_interval,
    preimage_complex,
    pushforward_barcode,
    verify_pointwise_dims,
)
from levelsheaf.meshes import bundled_mesh_names, load_bundled_mesh, torus_triangles
from levelsheaf.mvsystems import GradedBlock, MVSystem, mv_interleaving_distance

F = Fraction
P = GradedBarcode.parse
half = F(1, 2)
SQUARE = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
CIRCLE_F = PLFunction.from_simplices(SQUARE, {"a": -1, "b": 0, "c": 1, "d": 0})
CIRCLE_P = PLFunction.from_simplices(SQUARE, {"a": 0, "b": 0, "c": 0, "d": 0})


def test_critical_values():
    assert critical_values(CIRCLE_F) == [-1, 0, 1]
    assert critical_values(CIRCLE_P) == [0]
    assert critical_values(PLFunction.from_simplices([], {"x": F(5, 3)})) == [F(5, 3)]
    with pytest.raises(PreconditionError):
        critical_values(PLFunction(SimplicialComplex(), {}))


def test_missing_value_rejected():
    with pytest.raises(PreconditionError):
        PLFunction(SimplicialComplex([("a", "b")]), {"a": 0})


def test_preimage_examples():
    assert betti(preimage_complex(CIRCLE_F, -half, half))[:2] == [2, 0]
    assert betti(preimage_complex(CIRCLE_F, F(-3, 2), F(3, 2)))[:2] == [1, 1]
    assert len(preimage_complex(CIRCLE_P, 1, 2)) == 0
    assert betti(preimage_complex(CIRCLE_F, half, half))[0] == 2


def test_preimage_errors():
    with pytest.raises(PreconditionError):
        preimage_complex(CIRCLE_F, 0, half)
    with pytest.raises(PreconditionError):
        preimage_complex(CIRCLE_F, half, -half)


def test_slabs_nest():
    assert preimage_complex(CIRCLE_F, -half, half).is_subcomplex_of(preimage_complex(CIRCLE_F, F(-3, 4), F(3, 2)))


def test_node_interval_conversion():
    crit = [F(-1), F(0), F(1)]
    assert node_interval_to_interval(1, 5, crit) == P(("[-1,1]", 0)).bars[0].interval
    assert node_interval_to_interval(2, 4, crit) == P(("]-1,1[", 0)).bars[0].interval
    assert node_interval_to_interval(0, 6, crit) == P(("]-inf,inf[", 0)).bars[0].interval


def test_pushforward_examples():
    assert pushforward_barcode(CIRCLE_F) == P(("[-1,1]", 0), ("]-1,1[", 0))
    assert pushforward_barcode(CIRCLE_P) == P(("[0,0]", 0), ("[0,0]", 1))
    assert pushforward_barcode(load_bundled_mesh("segment_identity")) == P(("[0,1]", 0))
    assert pushforward_barcode(PLFunction(SimplicialComplex(), {})) == GradedBarcode()


def test_sphere_height():
    assert pushforward_barcode(load_bundled_mesh("sphere_height")) == P(("[-1,2]", 0), ("]-1,2[", 1))


def test_levelset_mv_examples():
    assert levelset_mv(CIRCLE_F) == MVSystem(
        [GradedBlock(Block("bb", -1, 1, False, False), 0), GradedBlock(Block("db", -1, 1, True, True), 0)]
    )
    assert levelset_mv(CIRCLE_P) == MVSystem(
        [GradedBlock(Block("bb", 0, 0, False, False), 0), GradedBlock(Block("bb", 0, 0, False, False), 1)]
    )
    assert levelset_mv(PLFunction(SimplicialComplex(), {})) == MVSystem()


def test_verify_examples():
    circle = levelset_mv(CIRCLE_F)
    assert verify_pointwise_dims(CIRCLE_F, circle, [(half, half), (2, 2)]) == []
    assert verify_pointwise_dims(CIRCLE_P, levelset_mv(CIRCLE_P), [(1, 1)]) == []


def test_verify_reports_a_wrong_system():
    report = verify_pointwise_dims(CIRCLE_F, levelset_mv(CIRCLE_P), [(half, half)])
    assert {(m.degree, m.homology_dim, m.system_dim) for m in report} == {(0, 2, 1), (1, 0, 1)}


def test_verify_rejects_bad_points():
    with pytest.raises(PreconditionError):
        verify_pointwise_dims(CIRCLE_F, MVSystem(), [(1, half)])
    with pytest.raises(PreconditionError):
        verify_pointwise_dims(CIRCLE_F, MVSystem(), [(-half, F(1, 4))])


def test_default_grid():
    grid = default_grid(CIRCLE_F, 6)
    assert len(grid) == 15
    crit = set(critical_values(CIRCLE_F))
    assert all(-x not in crit and y not in crit and x + y > 0 for x, y in grid)
    with pytest.raises(PreconditionError):
        default_grid(CIRCLE_F, 1)


@pytest.mark.parametrize("name", bundled_mesh_names())
def test_bundled_meshes(name):
    f = load_bundled_mesh(name)
    barcode = pushforward_barcode(f)
    system = levelset_mv(f)
    assert xi_system(system) == barcode
    assert verify_pointwise_dims(f, system, default_grid(f, 6)) == []
    # global sections: a closed bounded bar in degree j gives H^j, an open one H^(j+1)
    total = [0, 0, 0, 0]
    for bar in barcode:
        iv = bar.interval
        if is_finite(iv.lo) and is_finite(iv.hi):
            if not iv.lo_open and not iv.hi_open:
                total[bar.degree] += 1
            elif iv.lo_open and iv.hi_open:
                total[bar.degree + 1] += 1
    assert total[:3] == betti(f.complex) and total[3] == 0


def test_torus_betti_and_barcode():
    f = load_bundled_mesh("torus_height")
    assert betti(f.complex) == [1, 2, 1]
    assert xi_system(levelset_mv(f)) == pushforward_barcode(f)


def test_stability_on_torus():
    rng = random.Random(11)
    tris = torus_triangles()
    verts = sorted({v for t in tris for v in t})
    for _ in range(8):
        fv = random_values(rng, verts)
        gv = perturbed_values(rng, fv)
        f, g = PLFunction.from_simplices(tris, fv), PLFunction.from_simplices(tris, gv)
        bound = max(abs(fv[v] - gv[v]) for v in verts)
        assert bottleneck_distance(pushforward_barcode(f), pushforward_barcode(g)) <= bound
        assert mv_interleaving_distance(levelset_mv(f), levelset_mv(g)) <= bound


def test_random_functions_commute_with_sheafification():
    rng = random.Random(12)
    tris = [("a", "b", "c"), ("b", "c", "d"), ("c", "d", "e"), ("e", "a", "c")]
    for _ in range(20):
        f = PLFunction.from_simplices(tris, random_values(rng, "abcde"))
        system = levelset_mv(f)
        assert xi_system(system) == pushforward_barcode(f)
        assert verify_pointwise_dims(f, system, default_grid(f, 6)) == []
